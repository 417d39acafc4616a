#include "elion/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "elion/errors.hpp"
#include "elion/parallel.hpp"
#include "elion/specfun.hpp"

namespace elion {
namespace {

constexpr double kTwoPi = 2.0 * units::kPi;

void check_width_velocity(double width, double v_el) {
  if (!std::isfinite(width) || width <= 0.0) throw DomainError("sigma: width must be positive");
  if (!std::isfinite(v_el) || v_el <= 0.0) throw DomainError("sigma: velocity must be positive");
}

Complex kummer_factor(double s, double v_el) {
  return specfun::hyp1f1({Complex{0.0, 1.0 / v_el}, 1, -s});
}

}  // namespace

Complex sigma(double width, Vec2 offset, double v_el) {
  check_width_velocity(width, v_el);
  const double s = offset.dot(offset) / (width * width);
  const Complex prefactor = std::exp(specfun::ln_gamma({1.0, -1.0 / v_el}) -
                                     Complex{0.0, 2.0 / v_el} * std::log(width));
  return prefactor * kummer_factor(s, v_el);
}

double sigma_phase(double width, double b, double v_el) {
  check_width_velocity(width, v_el);
  if (!(b >= 0.0)) throw DomainError("sigma_phase: impact parameter must be non-negative");
  const double s = (b / width) * (b / width);
  const double gamma_arg = specfun::ln_gamma({1.0, -1.0 / v_el}).imag();
  const double base = gamma_arg - 2.0 / v_el * std::log(width);
  if (s == 0.0) return base;

  // arg 1F1(i/v; 1; -s) runs from 0 at s = 0 to -arg Gamma(1 - i/v) - ln(s)/v
  // for large s; the interpolating reference stays well inside +-pi of it.
  const double reference = -std::log1p(s) / v_el - s / (1.0 + s) * gamma_arg;
  const double principal = std::arg(kummer_factor(s, v_el));
  return base + reference + std::remainder(principal - reference, kTwoPi);
}

double ScatterInput::effective_width() const {
  const double r0 = trap.r0();
  const double d = beam.spot_width();
  return std::sqrt(r0 * r0 + 2.0 * d * d);
}

Vec2 ScatterInput::impact_vector() const {
  const Complex rotation = std::polar(1.0, beam.arrival_phase());
  const Vec2 ion{(alpha[0] * rotation).real(), (alpha[1] * rotation).real()};
  return beam.focus() - std::sqrt(2.0) * trap.r0() * ion;
}

ScatterResult scatter(const ScatterInput& input) {
  const double width = input.effective_width();
  const Vec2 b = input.impact_vector();
  ScatterResult out;
  out.element = sigma(width, b, input.beam.velocity());
  out.delta_phi = std::arg(out.element);
  out.delta_phi_unwrapped = sigma_phase(width, b.norm(), input.beam.velocity());
  out.p_scat = std::clamp(1.0 - std::norm(out.element), 0.0, 1.0);
  return out;
}

std::vector<PhaseSample> phase_profile(const ScatterInput& input, std::span<const double> b_grid,
                                       unsigned threads) {
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    if (!(b_grid[i] >= 0.0) || !std::isfinite(b_grid[i])) {
      throw DomainError("phase_profile: impact parameters must be finite and non-negative");
    }
    if (i > 0 && b_grid[i] < b_grid[i - 1]) {
      throw DomainError("phase_profile: grid must be sorted ascending");
    }
  }
  const double width = input.effective_width();
  const double v = input.beam.velocity();

  std::vector<Complex> elements(b_grid.size());
  parallel_for(b_grid.size(), threads,
               [&](std::size_t i) { elements[i] = sigma(width, {b_grid[i], 0.0}, v); });

  const double phase0 = std::arg(sigma(width, {}, v));
  double previous = phase0;
  double unwrapped = phase0;
  std::vector<PhaseSample> out;
  out.reserve(b_grid.size());
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    const double principal = std::arg(elements[i]);
    const double step = std::remainder(principal - previous, kTwoPi);
    if (std::abs(step) > units::kPi / 2.0) {
      throw UnwrapError("phase_profile: grid too coarse to unwrap the phase near b = " +
                        std::to_string(b_grid[i]));
    }
    unwrapped += step;
    previous = principal;
    out.push_back({b_grid[i], unwrapped - phase0,
                   std::clamp(1.0 - std::norm(elements[i]), 0.0, 1.0)});
  }
  return out;
}

}  // namespace elion
