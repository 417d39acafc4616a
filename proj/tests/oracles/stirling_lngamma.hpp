#pragma once

// Reference log-gamma in extended precision: shift Re z above 25 with the
// recurrence, then the Stirling series. Principal branch (continuous off the
// negative real axis), the same branch a summed principal log produces.

#include <array>
#include <cmath>
#include <complex>

namespace oracle {

inline std::complex<long double> stirling_lngamma(std::complex<long double> z) {
  using C = std::complex<long double>;
  C shift = 0.0L;
  while (z.real() < 25.0L) {
    shift += std::log(z);
    z += 1.0L;
  }
  // B_{2k} / (2k (2k - 1))
  static constexpr std::array<long double, 10> kCoef = {
      1.0L / 12.0L,          -1.0L / 360.0L,       1.0L / 1260.0L,        -1.0L / 1680.0L,
      1.0L / 1188.0L,        -691.0L / 360360.0L,  1.0L / 156.0L,         -3617.0L / 122400.0L,
      43867.0L / 244188.0L,  -174611.0L / 125400.0L};
  const C inv = 1.0L / z;
  const C inv2 = inv * inv;
  C series = 0.0L;
  C power = inv;
  for (long double c : kCoef) {
    series += c * power;
    power *= inv2;
  }
  const long double half_log_2pi = 0.918938533204672741780329736405617639861L;
  return (z - 0.5L) * std::log(z) - z + half_log_2pi + series - shift;
}

}  // namespace oracle
