#pragma once

// Decoherence channels beyond the coherent phase: the leading-order
// probability eta that a finite-width probe is scattered out of its
// transverse state, and a cross-section bound for internal excitations.

#include <span>
#include <vector>

#include "elion/units.hpp"

namespace elion {

struct BackactionInput {
  double chi = 0.0;  // 2 delta_r^2 / R0^2, in [0, 1)
  double s = 0.0;    // b^2 / R0^2
  double v_el = 0.0;

  void validate() const;
};

// eta = chi (2s + chi) |u'(s)|^2 / |u(s)|^2 with u(s) = 1F1(i/v; 1; -s).
// Only first order in chi away from s = 0.
double eta(const BackactionInput& input);

struct EtaMap {
  std::vector<double> chi;
  std::vector<double> b_over_r0;
  std::vector<double> values;  // row-major: values[i * b_over_r0.size() + j]

  double at(std::size_t chi_index, std::size_t b_index) const {
    return values[chi_index * b_over_r0.size() + b_index];
  }
};

// eta on the Cartesian product of chi and b / R0 grids (both ascending).
EtaMap eta_map(std::span<const double> chi_grid, std::span<const double> b_over_r0_grid,
               double v_el, unsigned threads = 1);

struct CrossSectionBound {
  double sigma_tot = 0.0;  // units of pi a0^2
  double r0_nm = 0.0;
  double p_scatt_bound = 0.0;
};

// sigma_tot / (pi R0^2) with sigma_tot given in units of pi a0^2.
CrossSectionBound internal_excitation_bound(double sigma_tot_pi_a0sq, double r0_bohr);
CrossSectionBound internal_excitation_bound(double sigma_tot_pi_a0sq, const TrapConfig& trap);

}  // namespace elion
