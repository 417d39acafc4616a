#pragma once

// Reference 1F1(a; b; z) for complex a, positive integer b and real z by the
// plain Taylor series in MPFR arithmetic. The working precision grows with
// |z| so the e^{|z|} cancellation of the alternating series is absorbed.
// Summation stops once the remaining tail is provably below 1e-30 relative.

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace oracle {

inline std::complex<double> mpfr_hyp1f1(std::complex<double> a, int b, double z) {
  using boost::multiprecision::mpfr_float;
  const unsigned digits = static_cast<unsigned>(std::abs(z) / std::log(10.0)) + 50;
  const unsigned saved = mpfr_float::default_precision();
  mpfr_float::default_precision(digits);

  const mpfr_float ar(a.real());
  const mpfr_float ai(a.imag());
  const mpfr_float zz(z);
  mpfr_float tr(1), ti(0);  // current term
  mpfr_float sr(1), si(0);  // partial sum
  const mpfr_float eps("1e-30");
  for (long k = 0;; ++k) {
    // term *= (a + k) z / ((b + k)(k + 1))
    const mpfr_float pr = ar + k;
    const mpfr_float nr = tr * pr - ti * ai;
    const mpfr_float ni = tr * ai + ti * pr;
    const mpfr_float scale = zz / (mpfr_float(b + k) * mpfr_float(k + 1));
    tr = nr * scale;
    ti = ni * scale;
    sr += tr;
    si += ti;
    // Once the ratio |a+j||z|/((b+j)(j+1)) stays below 1/2 for all j > k the
    // tail is bounded by twice the current term.
    const double ratio = std::abs(std::complex<double>(a.real() + k + 1, a.imag())) *
                         std::abs(z) / ((b + k + 1.0) * (k + 2.0));
    const double ratio_limit = std::abs(z) / (k + 2.0) *
                               (1.0 + std::abs(a) / (b + k + 1.0));
    if (ratio < 0.5 && ratio_limit < 0.5) {
      const mpfr_float mag = sqrt(tr * tr + ti * ti);
      const mpfr_float sum_mag = sqrt(sr * sr + si * si);
      if (2 * mag <= eps * sum_mag) break;
    }
    if (k > 100000) throw std::runtime_error("mpfr_hyp1f1: no convergence");
  }
  const std::complex<double> out(sr.convert_to<double>(), si.convert_to<double>());
  mpfr_float::default_precision(saved);
  return out;
}

}  // namespace oracle
