#pragma once

// Effective electron-qubit coupling mediated by a qubit-motion cat state
// (|-alpha>|-> + |alpha>|+>)/sqrt(2). An electron focused at r_perp rotates
// the qubit about x by g(r_perp, alpha) and adds the phase kappa(r_perp, alpha).

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "elion/units.hpp"
#include "elion/vec2.hpp"

namespace elion {

// Real displacement alpha e^{i Omega t_el} (synchronised arrival).
struct CatState {
  Vec2 alpha;
};

// delta_r_perp used when a caller does not configure one: 0.05 R0.
inline constexpr double kDefaultSpotFraction = 0.05;

// Delta phi(|r - sqrt2 R0 alpha|) - Delta phi(|r + sqrt2 R0 alpha|)
double coupling_phase(Vec2 r_perp, const CatState& cat, const BeamConfig& beam,
                      const TrapConfig& trap);

// Mean of the same two phases.
double global_phase(Vec2 r_perp, const CatState& cat, const BeamConfig& beam,
                    const TrapConfig& trap);

struct QubitUnitary {
  Eigen::Matrix2cd matrix;
  double g = 0.0;
  double kappa = 0.0;
};

// e^{i kappa} exp(i (g/2) sigma_x)
QubitUnitary electron_qubit_unitary(double g, double kappa);

// Probability of reading |1> after applying the unitary to |0>.
double flip_probability(const QubitUnitary& u);

struct PhaseTotals {
  double g = 0.0;
  double kappa = 0.0;
};

// Sum of g and kappa over a sequence of electrons (all unitaries commute).
PhaseTotals multi_electron_phase(std::span<const Vec2> positions, const CatState& cat,
                                 const BeamConfig& beam, const TrapConfig& trap);

// One electron over n paths, path k focused onto ion k: the k-th qubit
// receives exp(i (g/2) sigma_x), every other qubit the identity, and the
// whole operator carries e^{i kappa}.
class ManyQubitOperator {
 public:
  ManyQubitOperator(int n_paths, double g, double kappa);

  int n_paths() const { return n_paths_; }
  double kappa() const { return kappa_; }
  // Single-qubit unitary applied to qubit `path` (0-based) in branch `path`.
  const Eigen::Matrix2cd& branch_unitary(int path) const;

  // Applies the branch-`path` operation (including e^{i kappa}) to a 2^n
  // register. Qubit k is bit k of the basis index.
  Eigen::VectorXcd apply(int path, const Eigen::VectorXcd& reg) const;

 private:
  int n_paths_;
  double kappa_;
  Eigen::Matrix2cd rotation_;
};

ManyQubitOperator many_qubit_operator(int n_paths, double g, double kappa);

// Applies a single-qubit gate to qubit `qubit` of a register (bit `qubit`).
void apply_single_qubit(Eigen::VectorXcd& reg, int qubit, const Eigen::Matrix2cd& gate);

// Bit-flip probability for an electron focused onto one of the coherent
// states, r_perp = sqrt2 R0 alpha, with |alpha| = alpha_magnitude.
double focused_flip_probability(double alpha_magnitude, const BeamConfig& beam,
                                const TrapConfig& trap);

}  // namespace elion
