#pragma once

// Brute-force two-dimensional convolutions against the Gaussian
// G_a(x) = exp(-x^2 / a^2) / (pi a^2), evaluated by nested adaptive
// Gauss-Kronrod quadrature in polar coordinates centred on the origin.
//
//   sigma_quadrature(a, b, v) = (G_a * |x|^{-2i/v})(b)
//   eta_exact(chi, s, v)      = 1 - |Sigma_R0 * G_w|^2 / (|Sigma_R0|^2 * G_w)
//
// with w^2 = chi R0^2 (R0 = 1).

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "mpfr_hyp1f1.hpp"

namespace oracle {

namespace detail {

using boost::math::quadrature::gauss_kronrod;

// Angular average of G_a(x - b) over the circle |x| = r.
inline double ring_kernel(double a, double b, double r) {
  const double radial = (r - b) * (r - b) / (a * a);
  const double k = 2.0 * r * b / (a * a);
  const auto inner = [&](double theta) { return std::exp(-radial - k * (1.0 - std::cos(theta))); };
  const double angular = gauss_kronrod<double, 31>::integrate(inner, 0.0, std::numbers::pi, 15, 1e-13);
  return 2.0 * angular / (std::numbers::pi * a * a);
}

// int_0^inf r dr ring_kernel(r) f(r), split around the Gaussian bulk and
// integrated in u = ln r so the logarithmic phase is smooth.
template <typename T>
T radial_integral(double a, double b, const std::function<T(double)>& f) {
  const double r_lo = 1e-10 * a;
  // Below b - 12a and above b + 12a the Gaussian weight is under e^{-144}.
  const double cuts[3] = {std::max(r_lo, b - 12.0 * a), std::max(r_lo, b), b + 12.0 * a};
  const auto integrand = [&](double u) {
    const double r = std::exp(u);
    return r * r * ring_kernel(a, b, r) * f(r);
  };
  T total{};
  for (int i = 0; i < 2; ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    total += gauss_kronrod<double, 61>::integrate(integrand, std::log(cuts[i]), std::log(cuts[i + 1]),
                                                  15, 1e-12);
  }
  return total;
}

}  // namespace detail

inline std::complex<double> sigma_quadrature(double a, double b, double v) {
  const std::function<std::complex<double>(double)> s = [v](double r) {
    return std::polar(1.0, -2.0 / v * std::log(r));
  };
  return detail::radial_integral(a, b, s);
}

// |Gamma(1 - i/v)|^2 = (pi/v) / sinh(pi/v)
inline double eta_exact(double chi, double s, double v) {
  const double w = std::sqrt(chi);
  const double b = std::sqrt(s);
  const double gamma_sq = (std::numbers::pi / v) / std::sinh(std::numbers::pi / v);
  const std::complex<double> smeared = sigma_quadrature(std::sqrt(1.0 + chi), b, v);
  const std::function<double(double)> density = [&](double r) {
    return gamma_sq * std::norm(mpfr_hyp1f1({0.0, 1.0 / v}, 1, -r * r));
  };
  const double averaged = detail::radial_integral(w, b, density);
  return 1.0 - std::norm(smeared) / averaged;
}

}  // namespace oracle
