#include "elion/units.hpp"

#include <cmath>

#include "elion/errors.hpp"

namespace elion {

double electron_velocity(double kinetic_energy_ev) {
  if (!std::isfinite(kinetic_energy_ev) || kinetic_energy_ev <= 0.0) {
    throw DomainError("electron_velocity: kinetic energy must be positive and finite");
  }
  constexpr double c = units::kSpeedOfLight;
  const double t = units::ev_to_hartree(kinetic_energy_ev);
  // p = sqrt(T (T + 2c^2)) / c, gamma = (T + c^2) / c^2
  const double p = std::sqrt(t * (t + 2.0 * c * c)) / c;
  return p * c * c / (t + c * c);
}

BeamConfig BeamConfig::from_energy(double kinetic_energy_ev, Vec2 focus, double spot_width,
                                   double arrival_phase) {
  if (!(spot_width >= 0.0) || !std::isfinite(spot_width)) {
    throw DomainError("BeamConfig: spot width must be finite and non-negative");
  }
  if (!std::isfinite(focus.x) || !std::isfinite(focus.y) || !std::isfinite(arrival_phase)) {
    throw DomainError("BeamConfig: focus and arrival phase must be finite");
  }
  BeamConfig beam;
  beam.kinetic_energy_ev_ = kinetic_energy_ev;
  beam.velocity_ = electron_velocity(kinetic_energy_ev);
  beam.focus_ = focus;
  beam.spot_width_ = spot_width;
  beam.arrival_phase_ = arrival_phase;
  return beam;
}

BeamConfig BeamConfig::with_focus(Vec2 focus) const {
  return from_energy(kinetic_energy_ev_, focus, spot_width_, arrival_phase_);
}

BeamConfig BeamConfig::with_spot_width(double spot_width) const {
  return from_energy(kinetic_energy_ev_, focus_, spot_width, arrival_phase_);
}

TrapConfig TrapConfig::from_mhz(double frequency_mhz, FrequencyConvention convention,
                                double ion_mass_au) {
  double omega = frequency_mhz * 1e6;
  if (convention == FrequencyConvention::kCyclic) omega *= 2.0 * units::kPi;
  return from_angular(omega, ion_mass_au);
}

TrapConfig TrapConfig::from_angular(double omega_rad_per_s, double ion_mass_au) {
  if (!std::isfinite(omega_rad_per_s) || omega_rad_per_s <= 0.0) {
    throw DomainError("TrapConfig: trap frequency must be positive and finite");
  }
  if (!std::isfinite(ion_mass_au) || ion_mass_au <= 0.0) {
    throw DomainError("TrapConfig: ion mass must be positive and finite");
  }
  TrapConfig trap;
  trap.omega_rad_per_s_ = omega_rad_per_s;
  trap.ion_mass_ = ion_mass_au;
  trap.r0_ = 1.0 / std::sqrt(ion_mass_au * units::per_second_to_au(omega_rad_per_s));
  return trap;
}

double trap_ground_width_nm(const TrapConfig& trap) {
  return units::bohr_to_nm(trap.r0() / std::sqrt(2.0));
}

}  // namespace elion
