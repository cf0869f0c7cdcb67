#pragma once

#include <complex>
#include <cstdint>

namespace gftcheck {

using cplx = std::complex<double>;

/// Integer power by repeated squaring. std::pow(complex, int) goes through
/// exp/log in libstdc++, which loses accuracy and is undefined at z = 0.
inline cplx ipow(cplx z, int k) {
  if (k < 0) return cplx(1.0) / ipow(z, -k);
  cplx result(1.0);
  cplx base = z;
  auto e = static_cast<std::uint32_t>(k);
  while (e != 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

/// Falling factorial m (m-1) ... (m-k+1); zero when the integer exponent m
/// is non-negative and smaller than k.
inline double falling_factorial(int m, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(m - i);
  return r;
}

inline double binomial(int k, int j) {
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r = r * static_cast<double>(k - j + i) / static_cast<double>(i);
  return r;
}

}  // namespace gftcheck
