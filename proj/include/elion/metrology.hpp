#pragma once

// Phase-kickback and coherent phase-estimation protocols built on the
// electron-qubit coupling, plus the closed-form Fisher-information results
// they are checked against.
//
// Two-path protocol per electron: the electron is split into a specimen path
// s and an ion path i; on path i it applies e^{i kappa} exp(i g/2 sigma_x) to
// the ion qubit; a beam splitter maps (|s> + i e^{i kappa}|i>)/sqrt2 -> |s>
// and (|s> - i e^{i kappa}|i>)/sqrt2 -> |i>; the specimen imprints e^{i phi}
// on |s>; a transverse-momentum measurement leaves the relative phase
// xi = p.(r_s - r_i) between the paths; exp(i h sigma_x) undoes it.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "elion/vec2.hpp"

namespace elion::metrology {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Many-path phase kickback

struct KickbackBranch {
  int path = 0;            // 0-based; path k is focused onto qubit k
  Complex weight;          // electron amplitude w_k
  Eigen::VectorXcd reg;    // 2^N register amplitudes (bit k = qubit k)
};

class KickbackState {
 public:
  // Electron in sum_k w_k |psi_k>, every qubit in |0>. Weights are used as
  // given and must already be normalised.
  static KickbackState uniform_register(std::span<const Complex> weights);

  KickbackState(int n_paths, std::vector<KickbackBranch> branches);

  int n_paths() const { return n_paths_; }
  const std::vector<KickbackBranch>& branches() const { return branches_; }
  double norm_squared() const;

 private:
  int n_paths_;
  std::vector<KickbackBranch> branches_;
};

// Couples (branch k rotates qubit k by g), imprints specimen phases, projects
// the electron onto transverse momentum p_perp, applies the conditional
// correction prod_k exp(i p.r_k |1><1|_k) and renormalises. Returns the
// register state. Throws MeasurementError if the projection has zero norm.
Eigen::VectorXcd kickback_evolve(const KickbackState& initial, double g,
                                 std::span<const double> specimen_phases, Vec2 p_perp,
                                 std::span<const Vec2> focus_points, double kappa = 0.0);

// ---------------------------------------------------------------------------
// Ion-qubit state

class IonQubitDensity {
 public:
  // (|+><+| + |-><-| + s e^{i beta}|+><-| + s e^{-i beta}|-><+|) / 2
  static IonQubitDensity from_coherence(double s, double beta);
  static IonQubitDensity from_pure(const Eigen::Vector2cd& psi);
  // Throws DomainError unless Hermitian, unit trace and PSD to 1e-12.
  explicit IonQubitDensity(const Eigen::Matrix2cd& rho);

  const Eigen::Matrix2cd& matrix() const { return rho_; }
  // Probability of |0> in the computational basis.
  double p0() const { return rho_(0, 0).real(); }
  // s e^{i beta} = 2 <+|rho|->
  Complex coherence() const;

 private:
  Eigen::Matrix2cd rho_;
};

struct ProtocolConfig {
  int n_electrons = 1;
  double loss_prob = 0.0;        // epsilon
  double coupling_g = 3.14159265358979323846;
  double true_phase = 0.0;       // phi
  double initial_beta = 0.0;     // beta_0
  double initial_coherence = 1.0;
  std::uint64_t seed = 0;
  // Phase used inside the correction angle; defaults to true_phase.
  std::optional<double> phase_estimate;
  double kappa = 0.0;

  void validate() const;
  double estimate() const { return phase_estimate.value_or(true_phase); }
};

// Correction exp(i h sigma_x) that rotates the post-measurement ion state for
// outcome xi onto the xi = 0 state. Quadrant-aware arctangent of
// sin(g/2) sin(xi/2) over
// cos(xi/2) (cos(g/2) sin(phi) + 1) - cos(g/2) sin(xi/2) cos(phi);
// h(0, xi, phi) = 0 and h(pi, xi, phi) = xi/2.
double correction_angle(double g, double xi, double phi_estimate);

// One detected electron of the two-path protocol.
class ElectronPass {
 public:
  ElectronPass(double g, double kappa, double phi);

  // Qubit operator left after detecting relative phase xi. Outcome density
  // Tr(K rho K^dag) is normalised against the uniform measure dxi / 2pi.
  Eigen::Matrix2cd kraus(double xi) const;
  double outcome_density(const Eigen::Matrix2cd& rho, double xi) const;

 private:
  // Joint (path x qubit) operator, index 2 * path + qubit, path 0 = s, 1 = i.
  Eigen::Matrix4cd joint_;
};

// exp(i h sigma_x)
Eigen::Matrix2cd x_rotation(double h);

// Electron interacts and is then lost: trace out the path and apply the
// exp(-i g/4 sigma_x) correction. Multiplies the +/- coherence by cos(g/2).
IonQubitDensity lose_electron(const IonQubitDensity& rho, double g);

// Sequential pure-state simulation with the given measurement outcomes and
// correction angles computed from phi_estimate. Returns the normalised state.
Eigen::Vector2cd simulate_pure_protocol(double g, double phi, double phi_estimate, double beta0,
                                        std::span<const double> outcomes, double kappa = 0.0);

// Ideal protocol (g = pi, no loss): returns the final ion density matrix.
IonQubitDensity run_ideal_protocol(const ProtocolConfig& cfg);

// cos^2[n acot(csc(g/2) cot(phi/2) + cot(g/2))]
double p0_nonideal(int n, double g, double phi);

double fisher_ideal(int n);
double expected_fisher_lossy(int n, double eps);
// round(-1/log(1 - eps)), ties upward; nullopt when eps = 0 (no optimum).
std::optional<long> optimal_n(double eps);
double optimal_n_continuous(double eps);
// -1 / (e log(1 - eps))
double relative_gain(double eps);
// eps at which relative_gain = 1, by bisection.
double gain_threshold();
// Largest n with n (1 - eps)^n >= 1 (expected F above the SQL), by bisection.
double sql_crossing(double eps);

// n^2 sin^2(g/2) / (1 + cos(g/2) sin(phi))^2
double fisher_nonideal(int n, double g, double phi);
// F * 4 c^2 p0 (1 - p0) / (1 - c^2 (1 - 2 p0)^2), c = cos^m(g/2)
double fisher_lossy_mixed(int n_detected, int m_lost, double g, double phi);

// Classical Fisher information (dp/dphi)^2 / (p (1 - p)) of a binary outcome
// with probability p(phi), by central differences.
template <typename Fn>
double finite_difference_fisher(Fn&& p_of_phi, double phi, double step) {
  const double p = p_of_phi(phi);
  const double dp = (p_of_phi(phi + step) - p_of_phi(phi - step)) / (2.0 * step);
  return dp * dp / (p * (1.0 - p));
}

// Expected final P(0) averaged over the number of lost electrons.
double analytic_expected_p0(const ProtocolConfig& cfg);

struct MonteCarloResult {
  double empirical_p0 = 0.0;
  double standard_error = 0.0;
  long restart_count = 0;  // trials that lost at least one electron
  long trials = 0;
  long all_detected_trials = 0;
  double all_detected_p0 = 0.0;
  double all_detected_standard_error = 0.0;
};

// Seeded density-matrix Monte Carlo of the protocol with Bernoulli(eps)
// electron loss. Deterministic for a given seed, independent of `threads`.
MonteCarloResult monte_carlo_protocol(const ProtocolConfig& cfg, long trials,
                                      unsigned threads = 1);

}  // namespace elion::metrology
