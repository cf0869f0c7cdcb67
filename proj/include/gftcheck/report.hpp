#pragma once

// Text, JSON and CSV renderings of reports.
//
// JSON is written by hand rather than through a DOM so that field order is
// fixed and every double is printed with %.17g; identical inputs therefore
// give byte-identical output. Wall time is left out of JSON for the same
// reason.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gftcheck/admissibility.hpp"
#include "gftcheck/classes.hpp"
#include "gftcheck/errors.hpp"
#include "gftcheck/harness.hpp"

namespace gftcheck {

enum class Format { Text, Json, Csv };

inline Format format_from_string(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw UsageError("--format must be one of text, json, csv");
}

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_short(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(std::string_view k) {
    separator();
    string_literal(k);
    out_ += ": ";
    after_key_ = true;
    return *this;
  }

  JsonWriter& value(double v) { return raw(format_double(v)); }
  JsonWriter& value(int v) { return raw(std::to_string(v)); }
  JsonWriter& value(std::size_t v) { return raw(std::to_string(v)); }
  JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
  JsonWriter& value(std::string_view v) {
    separator();
    string_literal(v);
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value(cplx z) {
    begin_object();
    key("re").value(z.real());
    key("im").value(z.imag());
    return end_object();
  }
  JsonWriter& null() { return raw("null"); }

  template <class T>
  JsonWriter& field(std::string_view k, const T& v) {
    key(k);
    return value(v);
  }

  const std::string& str() const noexcept { return out_; }

 private:
  JsonWriter& raw(const std::string& s) {
    separator();
    out_ += s;
    return *this;
  }

  JsonWriter& open(char c) {
    separator();
    out_ += c;
    first_.push_back(true);
    return *this;
  }

  JsonWriter& close(char c) {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    out_ += c;
    return *this;
  }

  void separator() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (first_.empty()) return;
    if (!first_.back()) out_ += ',';
    first_.back() = false;
    newline();
  }

  void newline() {
    out_ += '\n';
    out_.append(2 * first_.size(), ' ');
  }

  void string_literal(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

namespace detail {

inline void write_plan(JsonWriter& w, const SamplingPlan& plan, std::size_t total) {
  w.key("grid").begin_object();
  w.key("radii").begin_array();
  for (double r : plan.radii) w.value(r);
  w.end_array();
  w.field("angles_per_ring", plan.angles_per_ring);
  w.field("origin_epsilon", plan.origin_epsilon);
  w.field("denominator_epsilon", plan.denominator_epsilon);
  w.field("points_total", total);
  w.end_object();
}

inline void write_worst(JsonWriter& w, const std::vector<WorstPoint>& pts) {
  w.key("worst_points").begin_array();
  for (const auto& p : pts) {
    w.begin_object();
    w.field("z", p.z);
    w.field("value", p.value);
    w.end_object();
  }
  w.end_array();
}

inline void write_report(JsonWriter& w, const VerificationReport& r) {
  w.begin_object();
  w.field("fixture_id", r.fixture_id);
  w.key("params").begin_object();
  for (const auto& p : r.params) w.field(p.name, p.value);
  if (r.a) w.field("a", *r.a);
  w.end_object();
  write_plan(w, r.plan, r.points_total);
  w.key("hypothesis").begin_object();
  w.field("min_margin", r.hypothesis.min_margin);
  w.field("holds", r.hypothesis.holds);
  w.field("argmin", r.hypothesis.argmin);
  w.end_object();
  w.key("conclusion").begin_object();
  w.field("min_margin", r.conclusion.min_margin);
  w.field("holds", r.conclusion.holds);
  w.field("argmin", r.conclusion.argmin);
  w.end_object();
  w.field("implication_ok", r.implication_ok);
  w.field("excluded_points", r.points_excluded);
  write_worst(w, r.worst_points);
  w.field("theorem", to_string(r.theorem));
  w.field("function", r.function);
  w.field("vacuous", r.vacuous());
  w.field("capacity", r.capacity);
  w.key("threshold").begin_object();
  w.field("name", r.threshold_name);
  w.field("value", r.threshold_value);
  w.end_object();
  w.field("min_side_modulus", r.min_side_modulus);
  w.field("branch_discrepancies", r.branch_discrepancies);
  w.field("identity_max_residual", r.identity_max_residual);
  w.key("preconditions").begin_array();
  for (const auto& c : r.preconditions) {
    w.begin_object();
    w.field("name", c.name);
    w.field("lhs", c.lhs);
    w.field("rhs", c.rhs);
    w.field("holds", c.holds);
    w.field("enforced", c.enforced);
    w.end_object();
  }
  w.end_array();
  w.key("checks").begin_object();
  for (const auto& c : r.checks) w.field(c.name, c.value);
  w.end_object();
  w.key("notes").begin_array();
  for (const auto& n : r.notes) w.value(n);
  w.end_array();
  w.end_object();
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string status(const VerificationReport& r) {
  if (!r.implication_ok) return "FAIL";
  return r.vacuous() ? "VACUOUS" : "ok";
}

}  // namespace detail

inline std::string to_json(const VerificationReport& r) {
  JsonWriter w;
  detail::write_report(w, r);
  return w.str() + "\n";
}

inline std::string to_json(const std::vector<VerificationReport>& rs) {
  JsonWriter w;
  w.begin_array();
  for (const auto& r : rs) detail::write_report(w, r);
  w.end_array();
  return w.str() + "\n";
}

inline std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "fixture     " << r.fixture_id << " (" << to_string(r.theorem) << ")\n";
  os << "function    " << r.function << "\n";
  os << "params     ";
  for (const auto& p : r.params) os << " " << p.name << "=" << format_short(p.value);
  if (r.a) os << " a=" << detail::format_complex(*r.a);
  os << "\n";
  os << "grid        " << r.plan.radii.size() << " rings x " << r.plan.angles_per_ring << " angles = " << r.points_total
     << " points, " << r.points_excluded << " excluded\n";
  os << "threshold   " << r.threshold_name << " = " << format_short(r.threshold_value) << ", C = "
     << format_short(r.capacity) << "\n\n";
  os << "              min margin     holds\n";
  char line[128];
  std::snprintf(line, sizeof line, "hypothesis    %-14s %s\n", format_short(r.hypothesis.min_margin).c_str(),
                detail::yes_no(r.hypothesis.holds).c_str());
  os << line;
  std::snprintf(line, sizeof line, "conclusion    %-14s %s\n", format_short(r.conclusion.min_margin).c_str(),
                detail::yes_no(r.conclusion.holds).c_str());
  os << line;
  os << "implication   " << (r.implication_ok ? "ok" : "FAILED") << (r.vacuous() ? "  VACUOUS" : "") << "\n\n";
  for (const auto& c : r.preconditions)
    os << "precondition  " << c.name << ": " << format_short(c.lhs) << " vs " << format_short(c.rhs) << " ("
       << (c.holds ? "holds" : "fails") << (c.enforced ? "" : ", sufficient only") << ")\n";
  os << "side modulus  " << format_short(r.min_side_modulus) << "\n";
  os << "identity      max residual " << format_short(r.identity_max_residual) << "\n";
  for (const auto& c : r.checks) os << "check         " << c.name << " " << format_short(c.value) << "\n";
  if (r.branch_discrepancies) os << "branch        " << r.branch_discrepancies << " points off the principal branch\n";
  os << "worst conclusion points:\n";
  for (const auto& p : r.worst_points)
    os << "  z = " << detail::format_complex(p.z) << "  margin " << format_short(p.value) << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

inline std::string to_text(const std::vector<VerificationReport>& rs) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %-5s %-14s %-14s %-9s %s\n", "fixture", "thm", "hyp margin", "concl margin",
                "excluded", "status");
  os << line;
  for (const auto& r : rs) {
    std::snprintf(line, sizeof line, "%-8s %-5s %-14s %-14s %-9zu %s\n", r.fixture_id.c_str(),
                  std::string(to_string(r.theorem)).c_str(), format_short(r.hypothesis.min_margin).c_str(),
                  format_short(r.conclusion.min_margin).c_str(), r.points_excluded, detail::status(r).c_str());
    os << line;
  }
  return os.str();
}

inline std::string to_csv(const std::vector<VerificationReport>& rs) {
  std::ostringstream os;
  os << "fixture_id,rank,re,im,conclusion_margin\n";
  for (const auto& r : rs) {
    for (std::size_t i = 0; i < r.worst_points.size(); ++i) {
      const auto& p = r.worst_points[i];
      os << r.fixture_id << "," << i + 1 << "," << format_double(p.z.real()) << "," << format_double(p.z.imag()) << ","
         << format_double(p.value) << "\n";
    }
  }
  return os.str();
}

inline std::string to_csv(const VerificationReport& r) { return to_csv(std::vector<VerificationReport>{r}); }

inline std::string to_json(const ScanResult& s) {
  JsonWriter w;
  const bool bound = s.kind == PsiKind::Bound;
  w.begin_object();
  w.field("scan", bound ? "bound" : "real");
  w.field(bound ? "min_value" : "max_value", s.extreme);
  w.key(bound ? "argmin" : "argmax").begin_object();
  w.field(bound ? "theta" : "x", s.arg_u);
  w.field(bound ? "K" : "y", s.arg_v);
  w.end_object();
  w.field("threshold", s.threshold);
  w.field("margin", s.margin);
  w.field("certified", s.certified);
  w.field("excluded_points", s.excluded);
  w.field("samples", s.rows.size());
  w.end_object();
  return w.str() + "\n";
}

inline std::string to_text(const ScanResult& s) {
  std::ostringstream os;
  const bool bound = s.kind == PsiKind::Bound;
  os << (bound ? "bound-form scan: min Re psi(M e^it, K e^it)" : "real-form scan: max Re psi(ix, y)") << "\n";
  os << (bound ? "  min        " : "  max        ") << format_short(s.extreme) << " at "
     << (bound ? "theta=" : "x=") << format_short(s.arg_u) << (bound ? " K=" : " y=") << format_short(s.arg_v) << "\n";
  os << "  threshold  " << format_short(s.threshold) << "\n";
  os << "  margin     " << format_short(s.margin) << "\n";
  os << "  excluded   " << s.excluded << " of " << s.rows.size() << "\n";
  os << "  certified  " << (s.certified ? "yes" : "no") << "\n";
  return os.str();
}

inline std::string to_csv(const ScanResult& s) {
  std::ostringstream os;
  const bool bound = s.kind == PsiKind::Bound;
  os << (bound ? "theta,K,value,margin,excluded\n" : "x,y,value,margin,excluded\n");
  for (const auto& r : s.rows)
    os << format_double(r.u) << "," << format_double(r.v) << "," << format_double(r.value) << ","
       << format_double(r.margin) << "," << (r.excluded ? 1 : 0) << "\n";
  return os.str();
}

inline std::string to_json(const MembershipReport& m, std::string_view function) {
  JsonWriter w;
  w.begin_object();
  w.field("class", m.class_label);
  w.field("function", function);
  w.field("points_total", m.points_total);
  w.field("excluded_points", m.points_excluded);
  w.field("min_value", m.min_value);
  w.field("order", m.order);
  w.field("margin", m.margin);
  w.field("holds", m.holds);
  w.field("min_side_modulus", m.min_side_modulus);
  w.field("argmin", m.argmin);
  w.field("branch_discrepancies", m.branch_discrepancies);
  detail::write_worst(w, m.worst_points);
  w.end_object();
  return w.str() + "\n";
}

inline std::string to_text(const MembershipReport& m, std::string_view function) {
  std::ostringstream os;
  os << "class       " << m.class_label << "\n";
  os << "function    " << function << "\n";
  os << "points      " << m.points_total << " (" << m.points_excluded << " excluded)\n";
  os << "min value   " << format_short(m.min_value) << " at z = " << detail::format_complex(m.argmin) << "\n";
  os << "order       " << format_short(m.order) << "\n";
  os << "margin      " << format_short(m.margin) << "\n";
  os << "side mod    " << format_short(m.min_side_modulus) << "\n";
  os << "holds       " << (m.holds ? "yes" : "no") << "\n";
  return os.str();
}

inline std::string to_csv(const MembershipReport& m) {
  std::ostringstream os;
  os << "rank,re,im,margin\n";
  for (std::size_t i = 0; i < m.worst_points.size(); ++i) {
    const auto& p = m.worst_points[i];
    os << i + 1 << "," << format_double(p.z.real()) << "," << format_double(p.z.imag()) << "," << format_double(p.value)
       << "\n";
  }
  return os.str();
}

/// Writes `content` to `path`, or to `out` when no path is given.
inline void write_output(const std::string& content, const std::optional<std::string>& path,
                         std::ostream& out = std::cout) {
  if (!path) {
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw IoError("cannot open " + *path + " for writing");
  file << content;
  file.flush();
  if (!file) throw IoError("failed writing " + *path);
}

inline std::string render(const VerificationReport& r, Format f) {
  switch (f) {
    case Format::Json: return to_json(r);
    case Format::Csv: return to_csv(r);
    case Format::Text: return to_text(r);
  }
  return {};
}

inline std::string render(const std::vector<VerificationReport>& rs, Format f) {
  switch (f) {
    case Format::Json: return to_json(rs);
    case Format::Csv: return to_csv(rs);
    case Format::Text: return to_text(rs);
  }
  return {};
}

inline std::string render(const ScanResult& s, Format f) {
  switch (f) {
    case Format::Json: return to_json(s);
    case Format::Csv: return to_csv(s);
    case Format::Text: return to_text(s);
  }
  return {};
}

/// Emits a verification report; exit code 0 iff the implication holds.
inline int emit_report(const VerificationReport& r, Format f, const std::optional<std::string>& path = std::nullopt,
                       std::ostream& out = std::cout) {
  write_output(render(r, f), path, out);
  return r.implication_ok ? 0 : 1;
}

inline int emit_report(const std::vector<VerificationReport>& rs, Format f,
                       const std::optional<std::string>& path = std::nullopt, std::ostream& out = std::cout) {
  write_output(render(rs, f), path, out);
  for (const auto& r : rs)
    if (!r.implication_ok) return 1;
  return 0;
}

/// Emits a scan result; exit code 0 iff certified.
inline int emit_report(const ScanResult& s, Format f, const std::optional<std::string>& path = std::nullopt,
                       std::ostream& out = std::cout) {
  write_output(render(s, f), path, out);
  return s.certified ? 0 : 1;
}

}  // namespace gftcheck
