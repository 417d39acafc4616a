#include "elion/backaction.hpp"

#include <cmath>
#include <complex>

#include "elion/errors.hpp"
#include "elion/parallel.hpp"
#include "elion/specfun.hpp"

namespace elion {

void BackactionInput::validate() const {
  if (!std::isfinite(chi) || chi < 0.0 || chi >= 1.0) {
    throw DomainError("eta: chi must lie in [0, 1)");
  }
  if (!std::isfinite(s) || s < 0.0) throw DomainError("eta: s must be non-negative");
  if (!std::isfinite(v_el) || v_el <= 0.0) throw DomainError("eta: velocity must be positive");
}

double eta(const BackactionInput& input) {
  input.validate();
  if (input.chi == 0.0) return 0.0;
  const std::complex<double> a{0.0, 1.0 / input.v_el};
  const auto u = specfun::hyp1f1({a, 1, -input.s});
  const auto du = -a * specfun::hyp1f1({1.0 + a, 2, -input.s});
  return input.chi * (2.0 * input.s + input.chi) * std::norm(du) / std::norm(u);
}

EtaMap eta_map(std::span<const double> chi_grid, std::span<const double> b_over_r0_grid,
               double v_el, unsigned threads) {
  for (std::size_t i = 1; i < chi_grid.size(); ++i) {
    if (chi_grid[i] < chi_grid[i - 1]) throw DomainError("eta_map: chi grid must be sorted");
  }
  for (std::size_t j = 1; j < b_over_r0_grid.size(); ++j) {
    if (b_over_r0_grid[j] < b_over_r0_grid[j - 1]) {
      throw DomainError("eta_map: b grid must be sorted");
    }
  }
  EtaMap map;
  map.chi.assign(chi_grid.begin(), chi_grid.end());
  map.b_over_r0.assign(b_over_r0_grid.begin(), b_over_r0_grid.end());
  map.values.resize(chi_grid.size() * b_over_r0_grid.size());
  const std::size_t nb = b_over_r0_grid.size();
  parallel_for(map.values.size(), threads, [&](std::size_t k) {
    const double b = map.b_over_r0[k % nb];
    map.values[k] = eta({map.chi[k / nb], b * b, v_el});
  });
  return map;
}

CrossSectionBound internal_excitation_bound(double sigma_tot_pi_a0sq, double r0_bohr) {
  if (!std::isfinite(sigma_tot_pi_a0sq) || sigma_tot_pi_a0sq <= 0.0) {
    throw DomainError("internal_excitation_bound: cross section must be positive");
  }
  if (!std::isfinite(r0_bohr) || r0_bohr <= 0.0) {
    throw DomainError("internal_excitation_bound: R0 must be positive");
  }
  // (sigma * pi a0^2) / (pi R0^2), a0 = 1
  return {sigma_tot_pi_a0sq, units::bohr_to_nm(r0_bohr),
          sigma_tot_pi_a0sq / (r0_bohr * r0_bohr)};
}

CrossSectionBound internal_excitation_bound(double sigma_tot_pi_a0sq, const TrapConfig& trap) {
  return internal_excitation_bound(sigma_tot_pi_a0sq, trap.r0());
}

}  // namespace elion
