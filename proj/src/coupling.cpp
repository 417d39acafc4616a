#include "elion/coupling.hpp"

#include <cmath>
#include <complex>

#include "elion/errors.hpp"
#include "elion/scattering.hpp"

namespace elion {
namespace {

struct PhasePair {
  double minus;  // Delta phi(|r - sqrt2 R0 alpha|)
  double plus;   // Delta phi(|r + sqrt2 R0 alpha|)
};

PhasePair cat_phases(Vec2 r_perp, const CatState& cat, const BeamConfig& beam,
                     const TrapConfig& trap) {
  if (!std::isfinite(cat.alpha.x) || !std::isfinite(cat.alpha.y)) {
    throw DomainError("CatState: displacement must be finite");
  }
  const double r0 = trap.r0();
  const double width = std::sqrt(r0 * r0 + 2.0 * beam.spot_width() * beam.spot_width());
  const Vec2 shift = std::sqrt(2.0) * r0 * cat.alpha;
  const double v = beam.velocity();
  return {sigma_phase(width, (r_perp - shift).norm(), v),
          sigma_phase(width, (r_perp + shift).norm(), v)};
}

}  // namespace

double coupling_phase(Vec2 r_perp, const CatState& cat, const BeamConfig& beam,
                      const TrapConfig& trap) {
  const auto p = cat_phases(r_perp, cat, beam, trap);
  return p.minus - p.plus;
}

double global_phase(Vec2 r_perp, const CatState& cat, const BeamConfig& beam,
                    const TrapConfig& trap) {
  const auto p = cat_phases(r_perp, cat, beam, trap);
  return 0.5 * (p.minus + p.plus);
}

QubitUnitary electron_qubit_unitary(double g, double kappa) {
  if (!std::isfinite(g) || !std::isfinite(kappa)) {
    throw DomainError("electron_qubit_unitary: g and kappa must be finite");
  }
  const std::complex<double> phase = std::polar(1.0, kappa);
  const std::complex<double> c = phase * std::cos(g / 2.0);
  const std::complex<double> s = phase * std::complex<double>{0.0, std::sin(g / 2.0)};
  QubitUnitary u;
  u.matrix << c, s, s, c;
  u.g = g;
  u.kappa = kappa;
  return u;
}

double flip_probability(const QubitUnitary& u) { return std::norm(u.matrix(1, 0)); }

PhaseTotals multi_electron_phase(std::span<const Vec2> positions, const CatState& cat,
                                 const BeamConfig& beam, const TrapConfig& trap) {
  if (positions.empty()) throw DomainError("multi_electron_phase: need at least one electron");
  PhaseTotals totals;
  for (const Vec2& r : positions) {
    const auto p = cat_phases(r, cat, beam, trap);
    totals.g += p.minus - p.plus;
    totals.kappa += 0.5 * (p.minus + p.plus);
  }
  return totals;
}

ManyQubitOperator::ManyQubitOperator(int n_paths, double g, double kappa)
    : n_paths_(n_paths), kappa_(kappa), rotation_(electron_qubit_unitary(g, 0.0).matrix) {
  if (n_paths < 1) throw DomainError("many_qubit_operator: need at least one path");
}

const Eigen::Matrix2cd& ManyQubitOperator::branch_unitary(int path) const {
  if (path < 0 || path >= n_paths_) throw DomainError("many_qubit_operator: path out of range");
  return rotation_;
}

Eigen::VectorXcd ManyQubitOperator::apply(int path, const Eigen::VectorXcd& reg) const {
  if (reg.size() != (Eigen::Index{1} << n_paths_)) {
    throw DomainError("many_qubit_operator: register size must be 2^n_paths");
  }
  Eigen::VectorXcd out = reg;
  apply_single_qubit(out, path, branch_unitary(path));
  return out * std::polar(1.0, kappa_);
}

ManyQubitOperator many_qubit_operator(int n_paths, double g, double kappa) {
  return ManyQubitOperator(n_paths, g, kappa);
}

void apply_single_qubit(Eigen::VectorXcd& reg, int qubit, const Eigen::Matrix2cd& gate) {
  const Eigen::Index mask = Eigen::Index{1} << qubit;
  if (mask >= reg.size()) throw DomainError("apply_single_qubit: qubit out of range");
  for (Eigen::Index i = 0; i < reg.size(); ++i) {
    if (i & mask) continue;
    const auto a0 = reg[i];
    const auto a1 = reg[i | mask];
    reg[i] = gate(0, 0) * a0 + gate(0, 1) * a1;
    reg[i | mask] = gate(1, 0) * a0 + gate(1, 1) * a1;
  }
}

double focused_flip_probability(double alpha_magnitude, const BeamConfig& beam,
                                const TrapConfig& trap) {
  if (!(alpha_magnitude >= 0.0)) throw DomainError("cat state size must be non-negative");
  const CatState cat{{alpha_magnitude, 0.0}};
  const Vec2 r = std::sqrt(2.0) * trap.r0() * cat.alpha;
  const double g = coupling_phase(r, cat, beam, trap);
  const double s = std::sin(g / 2.0);
  return s * s;
}

}  // namespace elion
