#include "elion/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "elion/errors.hpp"

namespace elion::specfun {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr Complex kI{0.0, 1.0};

// Lanczos approximation, g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

Complex ln_gamma_right(Complex z) {
  // Re(z) >= 0.5
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z) for Im z >= 0 without overflow.
Complex log_sin_pi(Complex z) {
  const Complex e = std::exp(2.0 * kI * kPi * z);
  return -kI * kPi * z + std::log(e - 1.0) - std::log(2.0 * kI);
}

// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(Complex v) {
    add_component(sum_re_, c_re_, v.real());
    add_component(sum_im_, c_im_, v.imag());
  }
  Complex value() const { return {sum_re_ + c_re_, sum_im_ + c_im_}; }

 private:
  static void add_component(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double sum_re_ = 0.0, c_re_ = 0.0;
  double sum_im_ = 0.0, c_im_ = 0.0;
};

}  // namespace

Complex ln_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("ln_gamma: argument must be finite");
  }
  if (is_nonpositive_integer(z)) {
    throw PoleError("ln_gamma: pole at non-positive integer " + std::to_string(z.real()));
  }
  if (z.real() >= 0.5) return ln_gamma_right(z);
  if (z.imag() < 0.0) return std::conj(ln_gamma(std::conj(z)));
  // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
  return std::log(kPi) - log_sin_pi(z) - ln_gamma_right(1.0 - z);
}

void Hyp1F1Params::validate() const {
  if (b != 1 && b != 2) throw DomainError("hyp1f1: b must be 1 or 2");
  if (!std::isfinite(z) || z > 0.0) throw DomainError("hyp1f1: z must be finite and <= 0");
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
    throw DomainError("hyp1f1: a must be finite");
  }
}

namespace detail {

Complex hyp1f1_kummer_series(Complex a, int b, double z) {
  const double x = -z;
  if (x > 700.0) {
    throw PrecisionError("hyp1f1: series branch overflows for |z| > 700",
                         std::numeric_limits<double>::infinity());
  }
  const Complex c = static_cast<double>(b) - a;
  const auto max_terms = static_cast<int>(x + 60.0 * std::sqrt(x) + 200.0);

  CompensatedSum sum;
  Complex term = 1.0;
  sum.add(term);
  int quiet = 0;
  for (int k = 0; k < max_terms; ++k) {
    const double kd = k;
    term *= (c + kd) / ((b + kd) * (kd + 1.0)) * x;
    sum.add(term);
    if (kd > x && std::abs(term) <= 1e-17 * std::abs(sum.value())) {
      if (++quiet == 2) return std::exp(-x) * sum.value();
    } else {
      quiet = 0;
    }
  }
  throw PrecisionError("hyp1f1: series did not converge",
                       std::abs(term) / std::abs(sum.value()));
}

Complex hyp1f1_asymptotic(Complex a, int b, double z) {
  const double x = -z;
  if (!(x > 0.0)) throw DomainError("hyp1f1_asymptotic: requires z < 0");
  const double bd = b;
  const double log_x = std::log(x);

  // Algebraic part: Gamma(b)/Gamma(b-a) x^{-a} sum_s (a)_s (a-b+1)_s / s! x^{-s}
  Complex s1 = 1.0;
  Complex term = 1.0;
  double smallest = 1.0;
  bool converged = false;
  for (int s = 0; s < 400; ++s) {
    const double sd = s;
    const Complex next = term * (a + sd) * (a - bd + 1.0 + sd) / ((sd + 1.0) * x);
    const double mag = std::abs(next);
    if (mag > std::abs(term) && s > 0) break;  // series started to diverge
    term = next;
    s1 += term;
    smallest = mag;
    if (mag <= 0.1 * kHyp1F1Tolerance * std::abs(s1)) {
      converged = true;
      break;
    }
  }
  if (!converged && smallest > kHyp1F1Tolerance * std::abs(s1)) {
    throw PrecisionError("hyp1f1: asymptotic expansion too coarse at this |z|",
                         smallest / std::abs(s1));
  }
  const Complex algebraic =
      std::exp(ln_gamma(bd) - ln_gamma(bd - a) - a * log_x) * s1;

  // Exponentially small part: Gamma(b)/Gamma(a) e^{-x} x^{a-b} e^{i pi (a-b)}
  //   * sum_s (1-a)_s (b-a)_s / s! (-x)^{-s}
  if (is_nonpositive_integer(a)) return algebraic;
  Complex s2 = 1.0;
  term = 1.0;
  for (int s = 0; s < 400; ++s) {
    const double sd = s;
    const Complex next = term * (1.0 - a + sd) * (bd - a + sd) / ((sd + 1.0) * (-x));
    if (std::abs(next) > std::abs(term) && s > 0) break;
    term = next;
    s2 += term;
    if (std::abs(term) <= 1e-17 * std::abs(s2)) break;
  }
  const Complex exponential =
      std::exp(ln_gamma(bd) - ln_gamma(a) - x + (a - bd) * log_x + kI * kPi * (a - bd)) * s2;
  return algebraic + exponential;
}

}  // namespace detail

Complex hyp1f1(const Hyp1F1Params& p) {
  p.validate();
  if (p.z == 0.0 || p.a == Complex{0.0, 0.0}) return 1.0;
  if (-p.z <= kAsymptoticCrossover) return detail::hyp1f1_kummer_series(p.a, p.b, p.z);
  try {
    return detail::hyp1f1_asymptotic(p.a, p.b, p.z);
  } catch (const PrecisionError&) {
    if (-p.z <= 700.0) return detail::hyp1f1_kummer_series(p.a, p.b, p.z);
    throw;
  }
}

}  // namespace elion::specfun
