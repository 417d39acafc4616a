#pragma once

// Dense model of the many-path phase kickback on the full
// (electron path) x (qubit register) space, with every operator built as an
// explicit matrix from Kronecker products. Index = path * 2^N + register.

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Operator on the register with `gate` on qubit `target` (bit target).
inline Eigen::MatrixXcd on_qubit(int n, int target, const Eigen::Matrix2cd& gate) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = n - 1; q >= 0; --q) {
    out = kron(out, q == target ? Eigen::MatrixXcd(gate) : Eigen::MatrixXcd::Identity(2, 2));
  }
  return out;
}

struct KickbackProblem {
  std::vector<C> weights;
  double g = 0.0;
  double kappa = 0.0;
  std::vector<double> phases;
  double px = 0.0, py = 0.0;
  std::vector<std::pair<double, double>> focus;
};

inline Eigen::VectorXcd dense_kickback(const KickbackProblem& p) {
  const int n = static_cast<int>(p.weights.size());
  const Eigen::Index dim_reg = Eigen::Index{1} << n;
  const Eigen::Index dim = n * dim_reg;

  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
  for (int k = 0; k < n; ++k) state[k * dim_reg] = p.weights[k];

  Eigen::Matrix2cd rot;
  rot << std::cos(p.g / 2), C(0, std::sin(p.g / 2)), C(0, std::sin(p.g / 2)), std::cos(p.g / 2);

  Eigen::MatrixXcd coupling = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd specimen = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd projector = Eigen::MatrixXcd::Zero(dim_reg, dim);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXcd pk = Eigen::MatrixXcd::Zero(n, n);
    pk(k, k) = 1.0;
    coupling += kron(pk, std::polar(1.0, p.kappa) * on_qubit(n, k, rot));
    specimen += kron(pk, std::polar(1.0, p.phases[k]) * Eigen::MatrixXcd::Identity(dim_reg, dim_reg));
    Eigen::MatrixXcd bra = Eigen::MatrixXcd::Zero(1, n);
    bra(0, k) = std::polar(1.0, -(p.px * p.focus[k].first + p.py * p.focus[k].second));
    projector += kron(bra, Eigen::MatrixXcd::Identity(dim_reg, dim_reg));
  }

  Eigen::MatrixXcd correction = Eigen::MatrixXcd::Identity(dim_reg, dim_reg);
  for (int k = 0; k < n; ++k) {
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Identity();
    d(1, 1) = std::polar(1.0, p.px * p.focus[k].first + p.py * p.focus[k].second);
    correction = correction * on_qubit(n, k, d);
  }
  Eigen::VectorXcd reg = correction * projector * specimen * coupling * state;
  return reg / reg.norm();
}

}  // namespace oracle
