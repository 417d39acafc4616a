#pragma once

// Electron-ion scattering matrix element S(b, alpha) = Sigma_{R_eff}(b), the
// Coulomb phase shift and the probability that the ion leaves its coherent
// state. Sigma_a = G_a * |x|^{-2i/v} is evaluated in closed form:
//
//   Sigma_a(b) = Gamma(1 - i/v) a^{-2i/v} 1F1(i/v; 1; -b^2/a^2)
//
// The divergent global phase of the scattering operator is dropped, so only
// differences of phases between impact parameters are physical.

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "elion/units.hpp"
#include "elion/vec2.hpp"

namespace elion {

using Complex = std::complex<double>;

// Coherent-state displacement (alpha_x, alpha_y), dimensionless.
using Displacement = std::array<Complex, 2>;

Complex sigma(double width, Vec2 offset, double v_el);

// Continuous phase of Sigma_a(b) as a function of b >= 0, anchored so that
// the b = 0 value is arg Gamma(1 - i/v) - (2/v) ln a with no 2 pi wrapping.
double sigma_phase(double width, double b, double v_el);

struct ScatterInput {
  BeamConfig beam;
  TrapConfig trap;
  Displacement alpha{};

  // sqrt(R0^2 + 2 delta_r^2)
  double effective_width() const;
  // r_perp - sqrt(2) R0 Re(alpha e^{i Omega t_el})
  Vec2 impact_vector() const;
};

struct ScatterResult {
  Complex element;
  double delta_phi = 0.0;            // principal value of arg(element)
  double delta_phi_unwrapped = 0.0;  // continuous in the impact parameter
  double p_scat = 0.0;               // 1 - |element|^2
};

ScatterResult scatter(const ScatterInput& input);

struct PhaseSample {
  double b = 0.0;
  double delta_phi_rel = 0.0;  // unwrapped phase minus the b = 0 phase
  double p_scat = 0.0;
};

// Sweeps the impact parameter (a.u., sorted ascending) at the beam/trap of
// `input`, unwrapping principal phases along the grid starting from b = 0.
// Throws UnwrapError when two neighbouring samples differ by more than pi/2
// after wrapping (grid too coarse to decide the branch).
std::vector<PhaseSample> phase_profile(const ScatterInput& input, std::span<const double> b_grid,
                                       unsigned threads = 1);

}  // namespace elion
