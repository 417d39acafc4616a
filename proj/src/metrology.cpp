#include "elion/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "elion/coupling.hpp"
#include "elion/errors.hpp"
#include "elion/parallel.hpp"

namespace elion::metrology {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void check_coupling(double g, const char* who) {
  if (!std::isfinite(g) || g < 0.0 || g > kPi) {
    throw DomainError(std::string(who) + ": coupling g must lie in [0, pi]");
  }
}

// Half-angle of the coherence rotation per detected electron.
double phase_step(double g, double phi) {
  return std::atan2(std::sin(g / 2.0) * std::sin(phi / 2.0),
                    std::cos(phi / 2.0) + std::cos(g / 2.0) * std::sin(phi / 2.0));
}

Eigen::Vector2cd plus_state() { return Eigen::Vector2cd(kInvSqrt2, kInvSqrt2); }
Eigen::Vector2cd minus_state() { return Eigen::Vector2cd(kInvSqrt2, -kInvSqrt2); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL)));
}

// Rejection-samples xi from the Born density (bounded by 2 against dxi/2pi),
// then applies the Kraus update and the correction rotation.
Eigen::Matrix2cd detected_electron(const ElectronPass& pass, const Eigen::Matrix2cd& rho,
                                   double g, double phi_estimate, std::mt19937_64& rng) {
  for (;;) {
    const double xi = kTwoPi * uniform01(rng);
    const double density = pass.outcome_density(rho, xi);
    if (2.0 * uniform01(rng) >= density) continue;
    const Eigen::Matrix2cd k = pass.kraus(xi);
    const Eigen::Matrix2cd r = x_rotation(correction_angle(g, xi, phi_estimate));
    const Eigen::Matrix2cd out = r * k * rho * k.adjoint() * r.adjoint() / density;
    return 0.5 * (out + out.adjoint());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

KickbackState KickbackState::uniform_register(std::span<const Complex> weights) {
  const int n = static_cast<int>(weights.size());
  if (n < 1 || n > 20) throw DomainError("KickbackState: need between 1 and 20 paths");
  std::vector<KickbackBranch> branches;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd reg = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    reg[0] = 1.0;
    branches.push_back({k, weights[k], std::move(reg)});
  }
  return KickbackState(n, std::move(branches));
}

KickbackState::KickbackState(int n_paths, std::vector<KickbackBranch> branches)
    : n_paths_(n_paths), branches_(std::move(branches)) {
  if (n_paths < 1 || n_paths > 20) throw DomainError("KickbackState: need between 1 and 20 paths");
  std::vector<bool> seen(n_paths, false);
  for (const auto& b : branches_) {
    if (b.path < 0 || b.path >= n_paths || seen[b.path]) {
      throw DomainError("KickbackState: path indices must be unique and in range");
    }
    seen[b.path] = true;
    if (b.reg.size() != (Eigen::Index{1} << n_paths)) {
      throw DomainError("KickbackState: register must hold 2^n_paths amplitudes");
    }
  }
  if (std::abs(norm_squared() - 1.0) > 1e-12) {
    throw DomainError("KickbackState: state must be normalised");
  }
}

double KickbackState::norm_squared() const {
  double total = 0.0;
  for (const auto& b : branches_) total += std::norm(b.weight) * b.reg.squaredNorm();
  return total;
}

Eigen::VectorXcd kickback_evolve(const KickbackState& initial, double g,
                                 std::span<const double> specimen_phases, Vec2 p_perp,
                                 std::span<const Vec2> focus_points, double kappa) {
  const int n = initial.n_paths();
  if (static_cast<int>(specimen_phases.size()) != n || static_cast<int>(focus_points.size()) != n) {
    throw DomainError("kickback_evolve: need one specimen phase and focus point per path");
  }
  const ManyQubitOperator coupling(n, g, kappa);
  Eigen::VectorXcd projected = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  for (const auto& branch : initial.branches()) {
    const int k = branch.path;
    const double momentum_phase = p_perp.dot(focus_points[k]);
    const Complex amplitude =
        branch.weight * std::polar(1.0, specimen_phases[k]) * std::polar(1.0, -momentum_phase);
    projected += amplitude * coupling.apply(k, branch.reg);
  }
  // U_corr = prod_k exp(i p.r_k |1><1|_k)
  for (Eigen::Index j = 0; j < projected.size(); ++j) {
    double phase = 0.0;
    for (int k = 0; k < n; ++k) {
      if (j & (Eigen::Index{1} << k)) phase += p_perp.dot(focus_points[k]);
    }
    projected[j] *= std::polar(1.0, phase);
  }
  const double norm = projected.norm();
  if (!(norm > 1e-12)) {
    throw MeasurementError("kickback_evolve: momentum outcome has zero probability");
  }
  return projected / norm;
}

// ---------------------------------------------------------------------------

IonQubitDensity IonQubitDensity::from_coherence(double s, double beta) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("IonQubitDensity: coherence must be in [0, 1]");
  const Eigen::Vector2cd p = plus_state();
  const Eigen::Vector2cd m = minus_state();
  const Complex c = s * std::polar(1.0, beta);
  Eigen::Matrix2cd rho = 0.5 * (p * p.adjoint() + m * m.adjoint() + c * p * m.adjoint() +
                                std::conj(c) * m * p.adjoint());
  return IonQubitDensity(rho);
}

IonQubitDensity IonQubitDensity::from_pure(const Eigen::Vector2cd& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw DomainError("IonQubitDensity: zero state");
  const Eigen::Vector2cd u = psi / n;
  return IonQubitDensity(u * u.adjoint());
}

IonQubitDensity::IonQubitDensity(const Eigen::Matrix2cd& rho) : rho_(rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("IonQubitDensity: matrix must be Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-12) throw DomainError("IonQubitDensity: trace must be 1");
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(rho);
  if (eig.eigenvalues().minCoeff() < -1e-12) {
    throw DomainError("IonQubitDensity: matrix must be positive semidefinite");
  }
}

Complex IonQubitDensity::coherence() const {
  return 2.0 * plus_state().dot(rho_ * minus_state());
}

void ProtocolConfig::validate() const {
  if (n_electrons < 0) throw DomainError("ProtocolConfig: electron count must be >= 0");
  if (!(loss_prob >= 0.0 && loss_prob <= 1.0)) {
    throw DomainError("ProtocolConfig: loss probability must lie in [0, 1]");
  }
  check_coupling(coupling_g, "ProtocolConfig");
  if (!(initial_coherence >= 0.0 && initial_coherence <= 1.0)) {
    throw DomainError("ProtocolConfig: initial coherence must lie in [0, 1]");
  }
  if (!std::isfinite(true_phase) || !std::isfinite(initial_beta) || !std::isfinite(estimate()) ||
      !std::isfinite(kappa)) {
    throw DomainError("ProtocolConfig: phases must be finite");
  }
}

double correction_angle(double g, double xi, double phi_estimate) {
  check_coupling(g, "correction_angle");
  const double num = std::sin(g / 2.0) * std::sin(xi / 2.0);
  if (num == 0.0) return 0.0;
  const double den = std::cos(xi / 2.0) * (std::cos(g / 2.0) * std::sin(phi_estimate) + 1.0) -
                     std::cos(g / 2.0) * std::sin(xi / 2.0) * std::cos(phi_estimate);
  return std::atan2(num, den);
}

Eigen::Matrix2cd x_rotation(double h) {
  Eigen::Matrix2cd r;
  const Complex c = std::cos(h);
  const Complex s = kI * std::sin(h);
  r << c, s, s, c;
  return r;
}

ElectronPass::ElectronPass(double g, double kappa, double phi) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Complex e_kappa = std::polar(1.0, kappa);

  Eigen::Matrix4cd interaction = Eigen::Matrix4cd::Zero();
  interaction.block<2, 2>(0, 0) = id;
  interaction.block<2, 2>(2, 2) = e_kappa * x_rotation(g / 2.0);

  // Beam splitter on the path: rows (s, i), columns (s, i).
  Eigen::Matrix2cd splitter;
  splitter << kInvSqrt2, -kI * std::conj(e_kappa) * kInvSqrt2, kInvSqrt2,
      kI * std::conj(e_kappa) * kInvSqrt2;
  Eigen::Matrix4cd split = Eigen::Matrix4cd::Zero();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) split.block<2, 2>(2 * r, 2 * c) = splitter(r, c) * id;
  }

  Eigen::Matrix4cd specimen = Eigen::Matrix4cd::Identity();
  specimen.block<2, 2>(0, 0) *= std::polar(1.0, phi);

  joint_ = specimen * split * interaction;
}

Eigen::Matrix2cd ElectronPass::kraus(double xi) const {
  // Electron enters in (|s> + |i>)/sqrt2 and is projected onto
  // e^{-i xi} <s| + <i| (momentum eigenstate, common phase dropped).
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  const Complex bra[2] = {std::polar(1.0, -xi), 1.0};
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) out += bra[p] * kInvSqrt2 * joint_.block<2, 2>(2 * p, 2 * q);
  }
  return out;
}

double ElectronPass::outcome_density(const Eigen::Matrix2cd& rho, double xi) const {
  const Eigen::Matrix2cd k = kraus(xi);
  return (k * rho * k.adjoint()).trace().real();
}

IonQubitDensity lose_electron(const IonQubitDensity& rho, double g) {
  check_coupling(g, "lose_electron");
  const Eigen::Matrix2cd u = x_rotation(g / 2.0);
  const Eigen::Matrix2cd mixed = 0.5 * (rho.matrix() + u * rho.matrix() * u.adjoint());
  const Eigen::Matrix2cd r = x_rotation(-g / 4.0);
  const Eigen::Matrix2cd out = r * mixed * r.adjoint();
  return IonQubitDensity(0.5 * (out + out.adjoint()));
}

Eigen::Vector2cd simulate_pure_protocol(double g, double phi, double phi_estimate, double beta0,
                                        std::span<const double> outcomes, double kappa) {
  check_coupling(g, "simulate_pure_protocol");
  const ElectronPass pass(g, kappa, phi);
  Eigen::Vector2cd psi = kInvSqrt2 * (std::polar(1.0, beta0) * plus_state() + minus_state());
  for (double xi : outcomes) {
    psi = pass.kraus(xi) * psi;
    const double n = psi.norm();
    if (!(n > 1e-12)) throw MeasurementError("simulate_pure_protocol: zero-probability outcome");
    psi = x_rotation(correction_angle(g, xi, phi_estimate)) * (psi / n);
  }
  return psi;
}

IonQubitDensity run_ideal_protocol(const ProtocolConfig& cfg) {
  cfg.validate();
  if (std::abs(cfg.coupling_g - kPi) > 1e-12 || cfg.loss_prob != 0.0) {
    throw DomainError("run_ideal_protocol: requires g = pi and no electron loss");
  }
  const ElectronPass pass(cfg.coupling_g, cfg.kappa, cfg.true_phase);
  auto rng = trial_rng(cfg.seed, 0);
  Eigen::Matrix2cd rho =
      IonQubitDensity::from_coherence(cfg.initial_coherence, cfg.initial_beta).matrix();
  for (int e = 0; e < cfg.n_electrons; ++e) {
    rho = detected_electron(pass, rho, cfg.coupling_g, cfg.estimate(), rng);
  }
  return IonQubitDensity(rho);
}

double p0_nonideal(int n, double g, double phi) {
  check_coupling(g, "p0_nonideal");
  if (n < 0) throw DomainError("p0_nonideal: electron count must be >= 0");
  if (!std::isfinite(phi)) throw DomainError("p0_nonideal: phase must be finite");
  const double c = std::cos(n * phase_step(g, phi));
  return c * c;
}

double fisher_ideal(int n) {
  if (n < 0) throw DomainError("fisher_ideal: electron count must be >= 0");
  return static_cast<double>(n) * n;
}

double expected_fisher_lossy(int n, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("expected_fisher_lossy: eps in [0, 1]");
  return fisher_ideal(n) * std::pow(1.0 - eps, n);
}

double optimal_n_continuous(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("optimal_n: eps must lie in [0, 1)");
  if (eps == 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / std::log1p(-eps);
}

std::optional<long> optimal_n(double eps) {
  const double n = optimal_n_continuous(eps);
  if (std::isinf(n)) return std::nullopt;
  return static_cast<long>(std::floor(n + 0.5));
}

double relative_gain(double eps) {
  const double n = optimal_n_continuous(eps);
  return n / std::exp(1.0);
}

double gain_threshold() {
  // relative_gain decreases monotonically from +inf to 0 on (0, 1).
  double lo = 1e-6;
  double hi = 1.0 - 1e-12;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (relative_gain(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double sql_crossing(double eps) {
  const double peak = optimal_n_continuous(eps);
  if (std::isinf(peak)) return std::numeric_limits<double>::infinity();
  const auto excess = [eps](double n) { return std::log(n) + n * std::log1p(-eps); };
  double lo = peak;
  double hi = 2.0 * peak;
  while (excess(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double fisher_nonideal(int n, double g, double phi) {
  check_coupling(g, "fisher_nonideal");
  if (n < 0) throw DomainError("fisher_nonideal: electron count must be >= 0");
  const double s = std::sin(g / 2.0);
  const double d = 1.0 + std::cos(g / 2.0) * std::sin(phi);
  return static_cast<double>(n) * n * s * s / (d * d);
}

double fisher_lossy_mixed(int n_detected, int m_lost, double g, double phi) {
  if (m_lost < 0) throw DomainError("fisher_lossy_mixed: lost count must be >= 0");
  const double f = fisher_nonideal(n_detected, g, phi);
  const double c = std::pow(std::cos(g / 2.0), m_lost);
  if (c == 1.0) return f;
  const double p0 = p0_nonideal(n_detected, g, phi);
  const double q = 1.0 - 2.0 * p0;
  return f * 4.0 * c * c * p0 * (1.0 - p0) / (1.0 - c * c * q * q);
}

double analytic_expected_p0(const ProtocolConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_electrons;
  const double eps = cfg.loss_prob;
  const double step = phase_step(cfg.coupling_g, cfg.true_phase);
  const double damping = std::cos(cfg.coupling_g / 2.0);
  double total = 0.0;
  for (int m = 0; m <= n; ++m) {
    const double log_choose =
        std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
    const double weight = std::exp(log_choose) * std::pow(eps, m) * std::pow(1.0 - eps, n - m);
    if (weight == 0.0) continue;
    const double coherence = cfg.initial_coherence * std::pow(damping, m);
    total += weight *
             (0.5 + 0.5 * coherence * std::cos(cfg.initial_beta + 2.0 * (n - m) * step));
  }
  return total;
}

MonteCarloResult monte_carlo_protocol(const ProtocolConfig& cfg, long trials, unsigned threads) {
  cfg.validate();
  if (trials < 1) throw DomainError("monte_carlo_protocol: need at least one trial");

  struct Tally {
    long zeros = 0;
    long restarts = 0;
    long detected = 0;
    long detected_zeros = 0;
  };
  constexpr long kChunk = 1024;
  const long chunks = (trials + kChunk - 1) / kChunk;
  std::vector<Tally> tallies(static_cast<std::size_t>(chunks));

  const ElectronPass pass(cfg.coupling_g, cfg.kappa, cfg.true_phase);
  const Eigen::Matrix2cd rho0 =
      IonQubitDensity::from_coherence(cfg.initial_coherence, cfg.initial_beta).matrix();

  parallel_for(tallies.size(), threads, [&](std::size_t c) {
    Tally& tally = tallies[c];
    const long begin = static_cast<long>(c) * kChunk;
    const long end = std::min(trials, begin + kChunk);
    for (long t = begin; t < end; ++t) {
      auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
      Eigen::Matrix2cd rho = rho0;
      bool lost = false;
      for (int e = 0; e < cfg.n_electrons; ++e) {
        if (uniform01(rng) < cfg.loss_prob) {
          rho = lose_electron(IonQubitDensity(rho), cfg.coupling_g).matrix();
          lost = true;
        } else {
          rho = detected_electron(pass, rho, cfg.coupling_g, cfg.estimate(), rng);
        }
      }
      const bool zero = uniform01(rng) < std::clamp(rho(0, 0).real(), 0.0, 1.0);
      tally.zeros += zero;
      tally.restarts += lost;
      if (!lost) {
        ++tally.detected;
        tally.detected_zeros += zero;
      }
    }
  });

  Tally sum;
  for (const auto& t : tallies) {
    sum.zeros += t.zeros;
    sum.restarts += t.restarts;
    sum.detected += t.detected;
    sum.detected_zeros += t.detected_zeros;
  }
  const auto standard_error = [](double p, long n) {
    if (n <= 0) return std::numeric_limits<double>::quiet_NaN();
    // One trial: report the Bernoulli worst case sqrt(1/4).
    if (n == 1) return 0.5;
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  };
  MonteCarloResult out;
  out.trials = trials;
  out.empirical_p0 = static_cast<double>(sum.zeros) / static_cast<double>(trials);
  out.standard_error = standard_error(out.empirical_p0, trials);
  out.restart_count = sum.restarts;
  out.all_detected_trials = sum.detected;
  if (sum.detected > 0) {
    out.all_detected_p0 = static_cast<double>(sum.detected_zeros) / static_cast<double>(sum.detected);
    out.all_detected_standard_error = standard_error(out.all_detected_p0, sum.detected);
  } else {
    out.all_detected_p0 = std::numeric_limits<double>::quiet_NaN();
    out.all_detected_standard_error = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace elion::metrology
