#pragma once

// Command-line front end. parse_args turns argv into a validated RunConfig;
// run executes it; main_entry maps exceptions to exit codes:
//   0 success, 1 verification failed / scan not certified / class fails,
//   2 usage or parameter error, 3 runtime error.

#include <CLI11.hpp>

#include <cerrno>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gftcheck/admissibility.hpp"
#include "gftcheck/catalog.hpp"
#include "gftcheck/classes.hpp"
#include "gftcheck/errors.hpp"
#include "gftcheck/function.hpp"
#include "gftcheck/harness.hpp"
#include "gftcheck/report.hpp"
#include "gftcheck/thresholds.hpp"

namespace gftcheck {

namespace detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& s, const std::string& what) {
  if (s.empty()) throw UsageError("empty number in " + what);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    throw UsageError("cannot parse '" + s + "' as a real number in " + what);
  return v;
}

inline int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_real(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e6) throw UsageError(what + " must be an integer, got '" + s + "'");
  return static_cast<int>(v);
}

}  // namespace detail

/// Parses "re", "im i", or "re+im i" (e.g. "0.1+0.05i", "-0.3", "2i", "-i").
inline cplx parse_complex(const std::string& text) {
  const std::string s = detail::trim(text);
  if (s.empty()) throw UsageError("empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return {detail::parse_real(s, "complex literal '" + s + "'"), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return detail::parse_real(t, "complex literal '" + s + "'");
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {detail::parse_real(body.substr(0, split), "complex literal '" + s + "'"), imag_part(body.substr(split))};
}

/// Parses the function mini-grammar:
///   monomial_plus:p=..,n=..,a=..
///   exp_monomial:p=..,a=..
///   series:p=..,n=..,coeffs=[c_p, c_(p+1), ...]
inline FunctionSpec parse_function(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("function spec needs 'kind:key=value,...': " + text);
  const std::string kind = detail::trim(text.substr(0, colon));
  std::vector<std::pair<std::string, std::string>> kv;
  std::string rest = text.substr(colon + 1);
  std::size_t i = 0;
  while (i < rest.size()) {
    std::size_t j = i;
    int depth = 0;
    while (j < rest.size() && !(rest[j] == ',' && depth == 0)) {
      if (rest[j] == '[') ++depth;
      if (rest[j] == ']') --depth;
      ++j;
    }
    const std::string item = rest.substr(i, j - i);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value in function spec, got '" + item + "'");
    kv.emplace_back(detail::trim(item.substr(0, eq)), detail::trim(item.substr(eq + 1)));
    i = j + 1;
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    for (const auto& [k, v] : kv)
      if (k == key) return v;
    return std::nullopt;
  };
  auto require = [&](const std::string& key) {
    auto v = get(key);
    if (!v) throw UsageError("function spec '" + kind + "' needs " + key);
    return *v;
  };
  auto allow_only = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (const char* a : keys) ok = ok || k == a;
      if (!ok) throw UsageError("unknown key '" + k + "' in function spec '" + kind + "'");
    }
  };
  if (kind == "monomial_plus") {
    allow_only({"p", "n", "a"});
    return make_function(MonomialPlusTerm{detail::parse_int(require("p"), "p"), detail::parse_int(require("n"), "n"),
                                          parse_complex(require("a"))});
  }
  if (kind == "exp_monomial") {
    allow_only({"p", "a"});
    return make_function(ExponentialMonomial{detail::parse_int(require("p"), "p"), parse_complex(require("a"))});
  }
  if (kind == "series") {
    allow_only({"p", "n", "coeffs"});
    const int p = detail::parse_int(require("p"), "p");
    const int n = detail::parse_int(get("n").value_or("1"), "n");
    std::string list = require("coeffs");
    if (list.size() < 2 || list.front() != '[' || list.back() != ']')
      throw UsageError("coeffs must be a bracketed list like [1,0,0.5]");
    list = list.substr(1, list.size() - 2);
    std::vector<cplx> coeffs;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) coeffs.push_back(parse_complex(item));
    if (coeffs.empty()) throw UsageError("coeffs must not be empty");
    return make_function(GeneralSeries{p, n, TruncatedSeries(p, std::move(coeffs))});
  }
  throw UsageError("unknown function kind '" + kind + "' (monomial_plus, exp_monomial, series)");
}

enum class Command { Verify, Scan, Membership, Threshold, Bound, Catalog };

struct RunConfig {
  Command command = Command::Catalog;
  std::optional<std::string> fixture_id;
  bool all = false;
  std::optional<std::string> function_spec;
  std::optional<std::string> theorem;  // thm1 | thm2
  FixtureOverrides ov;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<std::string> class_name;
  std::optional<std::string> threshold_name;
  std::optional<std::string> example;
  std::optional<double> rho;
  bool search_a = false;
  SamplingPlan plan = SamplingPlan::default_plan();
  int theta_count = 512;
  Format format = Format::Text;
  std::optional<std::string> output_path;
};

/// Thrown for --help; carries the text to print.
struct HelpRequested {
  std::string text;
};

namespace detail {

struct RawOptions {
  int p = 0, n = 0, angles = 0, theta_count = 0;
  double lambda = 0, mu = 0, eta = 0, gamma = 0, M = 0, delta = 0, fraction = 0, phase = 0;
  double alpha = 0, beta = 0, rho = 0, origin_eps = 0, denom_eps = 0;
  std::string a, radii, format = "text", out;
  std::vector<CLI::Option*> opts;
};

inline void add_param_flags(CLI::App* app, RawOptions& r, std::initializer_list<const char*> names) {
  for (std::string name : names) {
    CLI::Option* o = nullptr;
    if (name == "p") o = app->add_option("--p", r.p, "valence p (positive integer)");
    else if (name == "n") o = app->add_option("--n", r.n, "gap n (positive integer)");
    else if (name == "lambda") o = app->add_option("--lambda", r.lambda, "lambda in [0,1]");
    else if (name == "mu") o = app->add_option("--mu", r.mu, "mu");
    else if (name == "eta") o = app->add_option("--eta", r.eta, "eta");
    else if (name == "gamma") o = app->add_option("--gamma", r.gamma, "gamma (mu = 1-gamma, eta = gamma)");
    else if (name == "M") o = app->add_option("--M", r.M, "bound M (>= C)");
    else if (name == "delta") o = app->add_option("--delta", r.delta, "delta in [0,C)");
    else if (name == "a") o = app->add_option("--a", r.a, "coefficient a, e.g. 0.1+0.05i");
    else if (name == "fraction") o = app->add_option("--fraction", r.fraction, "a as a fraction of its |a| bound");
    else if (name == "phase") o = app->add_option("--phase", r.phase, "arg(a) in radians");
    else if (name == "alpha") o = app->add_option("--alpha", r.alpha, "class order alpha");
    else if (name == "beta") o = app->add_option("--beta", r.beta, "class order beta");
    else if (name == "rho") o = app->add_option("--rho", r.rho, "radius rho in [0,1) for the H bounds");
    if (o) r.opts.push_back(o);
  }
}

inline void add_output_flags(CLI::App* app, RawOptions& r) {
  app->add_option("--format", r.format, "text | json | csv");
  app->add_option("--out", r.out, "write the report to this path instead of stdout");
}

inline void add_plan_flags(CLI::App* app, RawOptions& r) {
  r.opts.push_back(app->add_option("--radii", r.radii, "comma-separated radii in (0,1), increasing"));
  r.opts.push_back(app->add_option("--angles", r.angles, "angles per ring (>= 16)"));
  r.opts.push_back(app->add_option("--origin-eps", r.origin_eps, "origin epsilon"));
  r.opts.push_back(app->add_option("--denominator-eps", r.denom_eps, "denominator epsilon"));
}

inline bool given(const CLI::App* app, const char* flag) {
  try {
    return app->get_option(flag)->count() > 0;
  } catch (const CLI::OptionNotFound&) {
    return false;
  }
}

}  // namespace detail

inline RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"gftcheck: numerical checks for multivalent function inequalities"};
  app.require_subcommand(1);
  detail::RawOptions r;
  RunConfig cfg;
  std::string fixture, function, theorem, cls, name, example;

  auto* verify = app.add_subcommand("verify", "verify a fixture, the whole catalog, or a function");
  verify->add_option("--fixture", fixture, "fixture id (see `catalog`)");
  verify->add_flag("--all", cfg.all, "verify every catalog fixture");
  verify->add_option("--function", function, "function spec for a direct theorem check");
  verify->add_option("--theorem", theorem, "thm1 | thm2 (with --function)");
  detail::add_param_flags(verify, r,
                          {"p", "n", "lambda", "mu", "eta", "gamma", "M", "delta", "a", "fraction", "phase"});
  detail::add_plan_flags(verify, r);
  detail::add_output_flags(verify, r);

  auto* scan = app.add_subcommand("scan", "scan the psi admissibility condition");
  scan->add_option("--theorem", theorem, "thm1 (bound form, needs --M) | thm2 (real form, needs --delta)")->required();
  scan->add_option("--theta-count", r.theta_count, "theta samples for thm1 (>= 64)");
  detail::add_param_flags(scan, r, {"p", "n", "lambda", "mu", "eta", "M", "delta"});
  detail::add_output_flags(scan, r);

  auto* member = app.add_subcommand("membership", "grid check of class membership");
  member->add_option("--function", function, "function spec")->required();
  member->add_option("--class", cls, "starlike | convex | T | M | N | bazilevic")->required();
  detail::add_param_flags(member, r, {"lambda", "mu", "eta", "gamma", "delta", "alpha", "beta"});
  detail::add_plan_flags(member, r);
  detail::add_output_flags(member, r);

  auto* thr = app.add_subcommand("threshold", "evaluate k or a named specialization");
  thr->add_option("--name", name, "k | nu | xi | sigma | varrho | rho | rho1 | varsigma | varsigma1")->required();
  detail::add_param_flags(thr, r, {"p", "n", "lambda", "mu", "eta", "gamma", "delta"});
  detail::add_output_flags(thr, r);

  auto* bnd = app.add_subcommand("bound", "closed-form |a| bounds, H bounds, or the |a| search");
  bnd->add_option("--example", example, "ex311 | ex312 | ex313 | ex314");
  bnd->add_flag("--search-a", cfg.search_a, "bisect |a| for z^p + a z^(p+n) in M(gamma; rho) at lambda 1/2");
  detail::add_param_flags(bnd, r, {"p", "n", "gamma", "M", "delta", "rho", "phase"});
  detail::add_plan_flags(bnd, r);
  detail::add_output_flags(bnd, r);

  auto* cat = app.add_subcommand("catalog", "list the fixture catalog");
  detail::add_output_flags(cat, r);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const CLI::App* sub = nullptr;
  if (verify->parsed()) cfg.command = Command::Verify, sub = verify;
  else if (scan->parsed()) cfg.command = Command::Scan, sub = scan;
  else if (member->parsed()) cfg.command = Command::Membership, sub = member;
  else if (thr->parsed()) cfg.command = Command::Threshold, sub = thr;
  else if (bnd->parsed()) cfg.command = Command::Bound, sub = bnd;
  else cfg.command = Command::Catalog, sub = cat;

  auto has = [&](const char* flag) { return detail::given(sub, flag); };
  if (has("--p")) {
    if (r.p < 1) throw UsageError("--p: p must be a positive integer");
    cfg.ov.p = r.p;
  }
  if (has("--n")) {
    if (r.n < 1) throw UsageError("--n: n must be a positive integer");
    cfg.ov.n = r.n;
  }
  if (has("--lambda")) {
    if (!(r.lambda >= 0.0 && r.lambda <= 1.0)) throw UsageError("--lambda: lambda must lie in [0,1]");
    cfg.ov.lambda = r.lambda;
  }
  if (has("--mu")) cfg.ov.mu = r.mu;
  if (has("--eta")) cfg.ov.eta = r.eta;
  if (has("--gamma")) cfg.ov.gamma = r.gamma;
  if (has("--M")) {
    if (!(r.M > 0.0)) throw UsageError("--M: M must be positive");
    cfg.ov.M = r.M;
  }
  if (has("--delta")) {
    if (!(r.delta >= 0.0)) throw UsageError("--delta: delta must be nonnegative");
    cfg.ov.delta = r.delta;
  }
  if (has("--a")) cfg.ov.a = parse_complex(r.a);
  if (has("--fraction")) {
    if (!(r.fraction > 0.0 && r.fraction <= 1.0)) throw UsageError("--fraction: fraction must lie in (0,1]");
    cfg.ov.fraction = r.fraction;
  }
  if (has("--phase")) cfg.ov.phase = r.phase;
  if (has("--alpha")) cfg.alpha = r.alpha;
  if (has("--beta")) cfg.beta = r.beta;
  if (has("--rho")) {
    if (!(r.rho >= 0.0 && r.rho < 1.0)) throw UsageError("--rho: rho must lie in [0,1)");
    cfg.rho = r.rho;
  }
  if (has("--radii")) {
    cfg.plan.radii.clear();
    std::stringstream ss(r.radii);
    std::string item;
    while (std::getline(ss, item, ',')) cfg.plan.radii.push_back(detail::parse_real(detail::trim(item), "--radii"));
  }
  if (has("--angles")) cfg.plan.angles_per_ring = r.angles;
  if (has("--origin-eps")) cfg.plan.origin_epsilon = r.origin_eps;
  if (has("--denominator-eps")) cfg.plan.denominator_epsilon = r.denom_eps;
  try {
    cfg.plan.validate();
  } catch (const InvalidParameter& e) {
    throw UsageError(std::string("sampling plan: ") + e.what());
  }
  if (has("--theta-count")) cfg.theta_count = r.theta_count;
  cfg.format = format_from_string(r.format);
  if (!r.out.empty()) cfg.output_path = r.out;
  if (!fixture.empty()) cfg.fixture_id = fixture;
  if (!function.empty()) cfg.function_spec = function;
  if (!theorem.empty()) {
    if (theorem != "thm1" && theorem != "thm2") throw UsageError("--theorem must be thm1 or thm2");
    cfg.theorem = theorem;
  }
  if (!cls.empty()) cfg.class_name = cls;
  if (!name.empty()) cfg.threshold_name = name;
  if (!example.empty()) cfg.example = example;

  if (cfg.command == Command::Verify) {
    const int modes = int(cfg.fixture_id.has_value()) + int(cfg.all) + int(cfg.function_spec.has_value());
    if (modes != 1) throw UsageError("verify needs exactly one of --fixture, --all, --function");
    if (cfg.all) {
      const auto& o = cfg.ov;
      if (o.p || o.n || o.lambda || o.mu || o.eta || o.gamma || o.M || o.delta || o.a || o.fraction || o.phase)
        throw UsageError("verify --all runs catalog defaults and takes no parameter flags");
    }
    if (cfg.function_spec) {
      if (!cfg.theorem) throw UsageError("verify --function needs --theorem thm1|thm2");
      if (!cfg.ov.mu || !cfg.ov.eta) throw UsageError("verify --function needs --mu and --eta");
      if (*cfg.theorem == "thm1" && !cfg.ov.M) throw UsageError("--theorem thm1 needs --M");
      if (*cfg.theorem == "thm2" && !cfg.ov.delta) throw UsageError("--theorem thm2 needs --delta");
    }
  }
  if (cfg.command == Command::Scan) {
    if (*cfg.theorem == "thm1" && !cfg.ov.M) throw UsageError("scan --theorem thm1 needs --M");
    if (*cfg.theorem == "thm2" && !cfg.ov.delta) throw UsageError("scan --theorem thm2 needs --delta");
  }
  if (cfg.command == Command::Bound) {
    const int modes = int(cfg.example.has_value()) + int(cfg.rho.has_value()) + int(cfg.search_a);
    if (modes != 1) throw UsageError("bound needs exactly one of --example, --rho, --search-a");
  }
  return cfg;
}

namespace detail {

inline OperatorParams params_from(const RunConfig& c, int p, int n) {
  OperatorParams q{p, n, c.ov.lambda.value_or(0.0), c.ov.mu.value_or(0.0), c.ov.eta.value_or(0.0)};
  if (c.ov.gamma) {
    q.mu = 1.0 - *c.ov.gamma;
    q.eta = *c.ov.gamma;
  }
  return q;
}

inline ClassId class_from(const RunConfig& c) {
  const std::string& k = *c.class_name;
  auto need = [&](const std::optional<double>& v, const char* flag) {
    if (!v) throw UsageError("--class " + k + " needs " + flag);
    return *v;
  };
  const double lambda = c.ov.lambda.value_or(0.0);
  if (k == "starlike") return Starlike{need(c.alpha, "--alpha")};
  if (k == "convex") return Convex{need(c.alpha, "--alpha")};
  if (k == "T") return TLambda{lambda, need(c.alpha, "--alpha")};
  if (k == "M") return MClass{lambda, c.ov.gamma.value_or(0.0), need(c.beta, "--beta")};
  if (k == "N") return NClass{lambda, need(c.ov.mu, "--mu"), need(c.ov.eta, "--eta"), need(c.ov.delta, "--delta")};
  if (k == "bazilevic") return Bazilevic{need(c.ov.eta, "--eta"), need(c.beta, "--beta")};
  throw UsageError("unknown class '" + k + "' (starlike, convex, T, M, N, bazilevic)");
}

inline std::string scalar_report(Format f, const std::vector<std::pair<std::string, double>>& fields,
                                 const std::string& label) {
  if (f == Format::Json) {
    JsonWriter w;
    w.begin_object();
    w.field("kind", label);
    for (const auto& [k, v] : fields) w.field(k, v);
    w.end_object();
    return w.str() + "\n";
  }
  std::ostringstream os;
  if (f == Format::Csv) {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i].first;
    os << "\n";
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << format_double(fields[i].second);
    os << "\n";
    return os.str();
  }
  os << label << "\n";
  for (const auto& [k, v] : fields) os << "  " << k << " = " << format_real(v) << "\n";
  return os.str();
}

inline std::string catalog_listing(Format f) {
  const auto cat = fixture_catalog();
  if (f == Format::Json) {
    JsonWriter w;
    w.begin_array();
    for (const auto& fx : cat) {
      w.begin_object();
      w.field("id", fx.id);
      w.field("theorem", to_string(fx.theorem));
      w.field("summary", fx.summary);
      w.end_object();
    }
    w.end_array();
    return w.str() + "\n";
  }
  std::ostringstream os;
  if (f == Format::Csv) {
    os << "id,theorem,summary\n";
    for (const auto& fx : cat) os << fx.id << "," << to_string(fx.theorem) << ",\"" << fx.summary << "\"\n";
    return os.str();
  }
  char line[200];
  for (const auto& fx : cat) {
    std::snprintf(line, sizeof line, "%-7s %-5s %s\n", fx.id.c_str(), std::string(to_string(fx.theorem)).c_str(),
                  fx.summary.c_str());
    os << line;
  }
  return os.str();
}

}  // namespace detail

/// Executes a parsed configuration and returns the process exit code.
inline int run(const RunConfig& c, std::ostream& out = std::cout) {
  switch (c.command) {
    case Command::Catalog:
      write_output(detail::catalog_listing(c.format), c.output_path, out);
      return 0;

    case Command::Verify: {
      if (c.all) return emit_report(verify_catalog(c.plan), c.format, c.output_path, out);
      if (c.fixture_id) return emit_report(verify_fixture(*c.fixture_id, c.plan, c.ov), c.format, c.output_path, out);
      const auto f = parse_function(*c.function_spec);
      const auto q = detail::params_from(c, f.p(), c.ov.n.value_or(f.n()));
      const auto rep = *c.theorem == "thm1" ? verify_theorem1(f, q, *c.ov.M, c.plan)
                                            : verify_theorem2(f, q, *c.ov.delta, c.plan);
      return emit_report(rep, c.format, c.output_path, out);
    }

    case Command::Scan: {
      const auto q = detail::params_from(c, c.ov.p.value_or(1), c.ov.n.value_or(1));
      auto grid = ScanGrid::default_grid();
      grid.theta_count = c.theta_count;
      const auto res = *c.theorem == "thm1" ? scan_lemma1(PsiSpec::bound(q, *c.ov.M), grid)
                                            : scan_lemma2(PsiSpec::real(q, *c.ov.delta), grid);
      return emit_report(res, c.format, c.output_path, out);
    }

    case Command::Membership: {
      const auto f = parse_function(*c.function_spec);
      const auto cls = detail::class_from(c);
      const auto rep = membership(f, cls, c.plan);
      const std::string fn = f.describe();
      const std::string text = c.format == Format::Json  ? to_json(rep, fn)
                               : c.format == Format::Csv ? to_csv(rep)
                                                         : to_text(rep, fn);
      write_output(text, c.output_path, out);
      return rep.holds ? 0 : 1;
    }

    case Command::Threshold: {
      const auto name = threshold_name_from_string(*c.threshold_name);
      const ThresholdArgs args{c.ov.p.value_or(1), c.ov.n.value_or(1), c.ov.lambda.value_or(0.0),
                               c.ov.mu.value_or(0.0), c.ov.eta.value_or(0.0), c.ov.gamma.value_or(0.0)};
      if (!c.ov.delta) throw UsageError("threshold needs --delta");
      const double v = named_threshold(name, args, *c.ov.delta);
      const auto q = threshold_substitution(name, args);
      write_output(detail::scalar_report(c.format,
                                         {{"p", double(q.p)},
                                          {"n", double(q.n)},
                                          {"lambda", q.lambda},
                                          {"mu", q.mu},
                                          {"eta", q.eta},
                                          {"capacity", capacity_C(q)},
                                          {"delta", *c.ov.delta},
                                          {"value", v}},
                                         "threshold " + std::string(to_string(name))),
                   c.output_path, out);
      return 0;
    }

    case Command::Bound: {
      if (c.rho) {
        const auto [lo, hi] = re_H_bounds(*c.rho);
        write_output(detail::scalar_report(c.format, {{"rho", *c.rho}, {"lower", lo}, {"upper", hi}}, "re_H_bounds"),
                     c.output_path, out);
        return 0;
      }
      if (c.search_a) {
        if (!c.ov.delta) throw UsageError("--search-a needs --delta");
        const Ex39Template t{c.ov.p.value_or(1), c.ov.n.value_or(1), c.ov.gamma.value_or(0.0), *c.ov.delta};
        const double phase = c.ov.phase.value_or(0.0);
        const double a = search_max_a(t, phase, c.plan);
        write_output(detail::scalar_report(c.format,
                                           {{"p", double(t.p)},
                                            {"n", double(t.n)},
                                            {"gamma", t.gamma},
                                            {"delta", t.delta},
                                            {"phase", phase},
                                            {"max_abs_a", a}},
                                           "search_max_a"),
                     c.output_path, out);
        return 0;
      }
      const auto which = example_bound_from_string(*c.example);
      const bool uses_M = which == ExampleBound::Ex311 || which == ExampleBound::Ex313;
      const auto& v = uses_M ? c.ov.M : c.ov.delta;
      if (!v) throw UsageError(std::string("--example ") + *c.example + " needs " + (uses_M ? "--M" : "--delta"));
      const int p = c.ov.p.value_or(1);
      const double a = example_bound_a(which, p, *v);
      write_output(detail::scalar_report(c.format, {{"p", double(p)}, {uses_M ? "M" : "delta", *v}, {"max_abs_a", a}},
                                         "example_bound " + std::string(to_string(which))),
                   c.output_path, out);
      return 0;
    }
  }
  return 3;
}

/// Full CLI entry point with exit-code mapping.
inline int main_entry(int argc, const char* const* argv, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  try {
    return run(parse_args(argc, argv), out);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << "\n";
    return 2;
  } catch (const InvalidDelta& e) {
    err << "invalid delta: " << e.what() << "\n";
    return 2;
  } catch (const InvalidNormalization& e) {
    err << "invalid function: " << e.what() << "\n";
    return 2;
  } catch (const UnknownFixture& e) {
    err << e.what() << " (see `gftcheck catalog`)\n";
    return 2;
  } catch (const PreconditionViolated& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gftcheck
