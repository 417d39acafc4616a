#pragma once

// Laboratory <-> atomic unit conversions and the beam / trap configurations.
//
// Atomic units: hbar = m_e = |e| = 4 pi eps0 = 1. Constants are CODATA 2018.

#include <cmath>
#include <string_view>

#include "elion/vec2.hpp"

namespace elion::units {

inline constexpr std::string_view kConstantSetVersion = "CODATA-2018";

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 137.035999084;       // a.u.
inline constexpr double kHartreeInEv = 27.211386245988;
inline constexpr double kBohrInNm = 0.0529177210903;
inline constexpr double kAtomicTimeInS = 2.4188843265857e-17;
inline constexpr double kDaltonInElectronMasses = 1822.888486209;
inline constexpr double kCa40MassDalton = 39.9626;

inline constexpr double ev_to_hartree(double ev) { return ev / kHartreeInEv; }
inline constexpr double hartree_to_ev(double ha) { return ha * kHartreeInEv; }
inline constexpr double nm_to_bohr(double nm) { return nm / kBohrInNm; }
inline constexpr double bohr_to_nm(double bohr) { return bohr * kBohrInNm; }
inline constexpr double per_second_to_au(double rate) { return rate * kAtomicTimeInS; }
inline constexpr double au_to_per_second(double rate) { return rate / kAtomicTimeInS; }
inline constexpr double dalton_to_au(double mass) { return mass * kDaltonInElectronMasses; }

}  // namespace elion::units

namespace elion {

// Speed (a.u.) of a free electron with the given kinetic energy, from the
// relativistic dispersion E = c sqrt(c^2 + p^2) - c^2 and v = p / gamma.
double electron_velocity(double kinetic_energy_ev);

class BeamConfig {
 public:
  // spot_width is delta_r_perp in a.u.; arrival_phase is Omega * t_el.
  static BeamConfig from_energy(double kinetic_energy_ev, Vec2 focus = {}, double spot_width = 0.0,
                                double arrival_phase = 0.0);

  double kinetic_energy_ev() const { return kinetic_energy_ev_; }
  double velocity() const { return velocity_; }
  Vec2 focus() const { return focus_; }
  double spot_width() const { return spot_width_; }
  double arrival_phase() const { return arrival_phase_; }

  BeamConfig with_focus(Vec2 focus) const;
  BeamConfig with_spot_width(double spot_width) const;

 private:
  BeamConfig() = default;

  double kinetic_energy_ev_ = 0.0;
  double velocity_ = 0.0;
  Vec2 focus_{};
  double spot_width_ = 0.0;
  double arrival_phase_ = 0.0;
};

// How a configured "MHz" trap frequency maps to Omega.
enum class FrequencyConvention {
  kAngular,  // Omega = f * 1e6 rad/s
  kCyclic,   // Omega = 2 pi f * 1e6 rad/s
};

// Transverse harmonic trap. The longitudinal frequency and Z0 never enter a
// transverse result and are not stored.
class TrapConfig {
 public:
  static TrapConfig from_mhz(double frequency_mhz,
                             FrequencyConvention convention = FrequencyConvention::kAngular,
                             double ion_mass_au = units::dalton_to_au(units::kCa40MassDalton));
  static TrapConfig from_angular(double omega_rad_per_s,
                                 double ion_mass_au = units::dalton_to_au(units::kCa40MassDalton));

  double omega_rad_per_s() const { return omega_rad_per_s_; }
  double omega_au() const { return units::per_second_to_au(omega_rad_per_s_); }
  double ion_mass() const { return ion_mass_; }
  // R0 = (m_ion * Omega)^(-1/2) in a.u.
  double r0() const { return r0_; }

 private:
  TrapConfig() = default;

  double omega_rad_per_s_ = 0.0;
  double ion_mass_ = 0.0;
  double r0_ = 0.0;
};

// Ground-state width R0 / sqrt(2) in nanometres.
double trap_ground_width_nm(const TrapConfig& trap);

}  // namespace elion
