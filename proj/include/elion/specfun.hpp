#pragma once

// Complex log-Gamma and Kummer's confluent hypergeometric function 1F1(a; b; z)
// for complex a, integer b in {1, 2} and real z <= 0.

#include <complex>

namespace elion::specfun {

using Complex = std::complex<double>;

// log Gamma(z) on the branch continuous in the right half-plane; exp() of the
// result is Gamma(z). Throws PoleError at non-positive integers.
Complex ln_gamma(Complex z);

struct Hyp1F1Params {
  Complex a;
  int b = 1;
  double z = 0.0;

  // Throws DomainError unless b is 1 or 2, z <= 0 and everything is finite.
  void validate() const;
};

// |z| at which evaluation switches from the Kummer-transformed series to the
// large-argument asymptotic expansion.
inline constexpr double kAsymptoticCrossover = 40.0;

// Relative accuracy targeted by hyp1f1.
inline constexpr double kHyp1F1Tolerance = 1e-13;

Complex hyp1f1(const Hyp1F1Params& p);

namespace detail {

// e^z * sum_k (b-a)_k / (b)_k (-z)^k / k!, summed with compensation. Valid
// while e^{-z} stays representable (|z| < ~700).
Complex hyp1f1_kummer_series(Complex a, int b, double z);

// Large-|z| expansion for z < 0, truncated at its smallest term. Throws
// PrecisionError when the smallest term exceeds the tolerance.
Complex hyp1f1_asymptotic(Complex a, int b, double z);

}  // namespace detail
}  // namespace elion::specfun
