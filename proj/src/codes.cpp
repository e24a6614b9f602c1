// Copyright 2026 The aqec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aqec/codes.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "aqec/objective.hpp"

namespace aqec {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

struct Radicals {
  double a0, a3, a1, a4, a_top;
  int top;  // Fock level of the highest psi1 component (6 or 7)
};

Radicals radicals(int variant) {
  require(variant == 1 || variant == 2, "sqrt3: variant must be 1 or 2");
  Radicals r;
  r.a0 = std::sqrt(1.0 - 1.0 / kSqrt3);
  r.a3 = 1.0 / std::pow(3.0, 0.25);
  if (variant == 1) {
    r.top = 6;
    r.a1 = std::sqrt(2.0 * (6.0 - kSqrt3) / (kSqrt3 + 9.0));
    r.a4 = -std::sqrt((kSqrt3 - 1.0) * (6.0 - kSqrt3) / (2.0 * (kSqrt3 + 9.0)));
    r.a_top = std::sqrt((3.0 - kSqrt3) / (2.0 * (kSqrt3 + 9.0)));
  } else {
    r.top = 7;
    r.a1 = std::sqrt(4.0 * (7.0 - kSqrt3) / (3.0 * (7.0 + kSqrt3)));
    r.a4 = -std::sqrt((kSqrt3 - 1.0) * (7.0 - kSqrt3) / (3.0 * (7.0 + kSqrt3)));
    r.a_top = std::sqrt((3.0 - kSqrt3) / (3.0 * (7.0 + kSqrt3)));
  }
  return r;
}

Vector fock_vector(int dim, std::initializer_list<std::pair<int, double>> amps) {
  Vector v = Vector::Zero(dim);
  for (const auto& [n, a] : amps) v(n) = a;
  return v;
}

}  // namespace

LogicalPair sqrt3_code(int variant, int cutoff) {
  require(cutoff >= 7, "sqrt3_code: cutoff must be >= 7");
  const Radicals r = radicals(variant);
  LogicalPair pair;
  const int dim = cutoff + 1;
  pair.psi0 = fock_vector(dim, {{0, r.a0}, {3, r.a3}});
  pair.psi1 = fock_vector(dim, {{1, r.a1}, {4, r.a4}, {r.top, r.a_top}});
  return pair;
}

std::vector<double> sqrt3_constraint_residuals(int variant) {
  const Radicals r = radicals(variant);
  const double m = double(r.top);  // sqrt(m) ladder factor of the top level
  const double beta = -(r.a1 * r.a1 + 4.0 * r.a4 * r.a4) / (std::sqrt(m) * r.a_top);
  return {
      r.a0 * r.a0 + r.a3 * r.a3 - 1.0,
      r.a1 * r.a1 + r.a4 * r.a4 + r.a_top * r.a_top - 1.0,
      r.a0 * r.a1 + 2.0 * r.a3 * r.a4,
      3.0 * r.a3 * r.a3 -
          (r.a1 * r.a1 + 4.0 * r.a4 * r.a4 + m * r.a_top * r.a_top),
      r.a1 * r.a1 + 4.0 * r.a4 * r.a4 + std::sqrt(m) * beta * r.a_top,
      beta * (1.0 - r.a1 * r.a1) + std::sqrt(m) * r.a_top * r.a1 * r.a1,
  };
}

std::pair<Matrix, Sqrt3Construction> sqrt3_hamiltonian(
    int variant, double scale, bool include_stabilization, int cutoff) {
  require(cutoff >= 7, "sqrt3_hamiltonian: cutoff must be >= 7");
  require(scale > 0.0, "sqrt3_hamiltonian: scale must be positive");
  const Radicals r = radicals(variant);
  const int dim = cutoff + 1;
  const int top = r.top;          // 6 or 7
  const int below_top = top - 1;  // image of the top level under a

  Sqrt3Construction c;
  c.variant = variant;
  c.cutoff = cutoff;
  c.pair = sqrt3_code(variant, cutoff);
  c.a0 = r.a0;
  c.a3 = r.a3;
  c.a1 = r.a1;
  c.a4 = r.a4;
  c.a_top = r.a_top;

  // error states ~ a |psi_logical|
  c.psi2 = fock_vector(dim, {{2, 1.0}});
  Vector a_psi1 = fock_vector(
      dim, {{0, r.a1}, {3, 2.0 * r.a4}, {below_top, std::sqrt(double(top)) * r.a_top}});
  c.n1 = 1.0 / a_psi1.norm();
  c.psi3 = c.n1 * a_psi1;

  // complement basis: psi6 in span{0,3,top-1} orthogonal to psi0 and psi3;
  // psi4, psi5 in span{1,4,top} orthogonal to psi1
  c.beta = -(r.a1 * r.a1 + 4.0 * r.a4 * r.a4) /
           (std::sqrt(double(top)) * r.a_top);
  Vector psi6 =
      fock_vector(dim, {{0, r.a1}, {3, 2.0 * r.a4}, {below_top, c.beta}});
  c.n2 = 1.0 / psi6.norm();
  c.psi6 = c.n2 * psi6;

  Vector psi4 = fock_vector(dim, {{1, r.a4}, {4, -r.a1}});
  c.n3 = 1.0 / psi4.norm();
  c.psi4 = c.n3 * psi4;

  c.beta_prime = -(r.a1 * r.a1 + r.a4 * r.a4) / r.a_top;
  Vector psi5 =
      fock_vector(dim, {{1, r.a1}, {4, r.a4}, {top, c.beta_prime}});
  c.n4 = 1.0 / psi5.norm();
  c.psi5 = c.n4 * psi5;

  // the four out-of-band entries of |psi3><psi1| that the correction terms
  // must cancel
  c.constraint_entries = {std::pair<int, int>{0, 4},
                          {0, top},
                          {3, top},
                          {below_top, 1}};

  // H~0 = |psi2><psi0| + |psi3><psi1|; solve the locality equations for
  // beta1, beta2 (4 equations, rank 2, consistent by construction)
  const Matrix h0 = c.psi2 * c.pair.psi0.adjoint() +
                    c.psi3 * c.pair.psi1.adjoint();
  Eigen::MatrixXd lhs(4, 2);
  Eigen::VectorXd rhs(4);
  for (int e = 0; e < 4; ++e) {
    const auto [m, n] = c.constraint_entries[e];
    lhs(e, 0) = c.psi6(m).real() * c.psi4(n).real();
    lhs(e, 1) = c.psi6(m).real() * c.psi5(n).real();
    rhs(e) = -h0(m, n).real();
  }
  const Eigen::VectorXd sol = lhs.colPivHouseholderQr().solve(rhs);
  c.beta1 = sol(0);
  c.beta2 = sol(1);
  if ((lhs * sol - rhs).cwiseAbs().maxCoeff() > 1e-12)
    throw numerical_error(
        "sqrt3_hamiltonian: locality system inconsistent (internal error)");

  c.h_tilde = h0 + c.beta1 * c.psi6 * c.psi4.adjoint() +
              c.beta2 * c.psi6 * c.psi5.adjoint();

  if (include_stabilization) {
    // in-band terms generating a detuning inside the code + error subspace,
    // protecting the no-jump evolution; weights match the correction terms
    const Matrix s1 = c.psi4 * c.psi2.adjoint();
    const Vector mix =
        fock_vector(dim, {{4, r.a_top}, {top, -r.a4}});
    const Matrix s2 = mix * fock_vector(dim, {{5, 1.0}}).adjoint();
    c.stabilization_terms = {s1, s2};
    c.h_tilde += s1 + s2;
  }

  // distance-2 band check
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n)
      if (std::abs(m - n) > 2 && std::abs(c.h_tilde(m, n)) > 1e-10)
        throw numerical_error(
            "sqrt3_hamiltonian: constructed coupling violates the distance-2 "
            "band (internal error)");

  const double s = scale / c.h_tilde.cwiseAbs().maxCoeff();
  const Matrix h_scaled = s * c.h_tilde;
  Matrix bdag = Matrix::Zero(2, 2);
  bdag(1, 0) = 1.0;  // |e><g|
  const Matrix h_joint = tensor(Matrix(h_scaled.adjoint()), bdag) +
                         tensor(h_scaled, Matrix(bdag.adjoint()));
  return {h_joint, c};
}

std::string KLReport::text() const {
  std::ostringstream os;
  os.setf(std::ios::scientific);
  os.precision(3);
  for (const auto& b : blocks)
    os << b.label << ": lambda = (" << b.lambda.real() << ", "
       << b.lambda.imag() << "), residual = " << b.residual << "\n";
  os << "max residual = " << max_residual << (pass ? "  [pass]" : "  [FAIL]")
     << "\n";
  return os.str();
}

KLReport kl_check(const LogicalPair& pair, const std::vector<Matrix>& error_ops,
                  double tol) {
  pair.validate();
  std::vector<Matrix> ops;
  ops.push_back(Matrix::Identity(pair.dim(), pair.dim()));
  for (const auto& e : error_ops) ops.push_back(e);

  KLReport report;
  for (size_t p = 0; p < ops.size(); ++p) {
    for (size_t q = 0; q < ops.size(); ++q) {
      const Matrix m = ops[p].adjoint() * ops[q];
      Eigen::Matrix2cd gram;
      gram(0, 0) = pair.psi0.dot(m * pair.psi0);
      gram(0, 1) = pair.psi0.dot(m * pair.psi1);
      gram(1, 0) = pair.psi1.dot(m * pair.psi0);
      gram(1, 1) = pair.psi1.dot(m * pair.psi1);
      KLReport::Block block;
      block.label = "E" + std::to_string(p) + "+E" + std::to_string(q);
      block.lambda = 0.5 * (gram(0, 0) + gram(1, 1));
      gram(0, 0) -= block.lambda;
      gram(1, 1) -= block.lambda;
      block.residual = gram.cwiseAbs().maxCoeff();
      report.max_residual = std::max(report.max_residual, block.residual);
      report.blocks.push_back(block);
    }
  }
  report.pass = report.max_residual < tol;
  return report;
}

LindbladModel effective_dissipator_model(const Sqrt3Construction& construction,
                                         double correction_rate, double kappa) {
  require(correction_rate >= 0.0 && kappa >= 0.0,
          "effective_dissipator_model: negative rate");
  const int dim = construction.cutoff + 1;
  LindbladModel model;
  model.basis = {Matrix::Zero(dim, dim)};
  model.alpha = RealVector::Ones(1);
  model.basis_support.resize(1);
  const Matrix jump =
      construction.pair.psi0 * construction.psi2.adjoint() +
      construction.pair.psi1 * construction.psi3.adjoint();
  model.dissipators.push_back({correction_rate, jump});
  model.dissipators.push_back({kappa, fock_annihilation(construction.cutoff)});
  return model;
}

FockStabilizationResult fock_stabilization_example(
    const FockStabilizationParams& params) {
  require(params.cutoff >= 3, "fock_stabilization_example: cutoff must be >= 3");
  const int cutoff = params.cutoff;
  const int dim = 2 * (cutoff + 1);
  const double alpha = mhz_to_angular(params.drive_mhz);
  const double kappa = mhz_to_angular(params.kappa_mhz);
  const double kappa_q = mhz_to_angular(params.kappa_q_mhz);

  Matrix h = Matrix::Zero(dim, dim);
  const int e2 = joint_index(2, true), g1 = joint_index(1, false);
  h(e2, g1) = alpha;
  h(g1, e2) = alpha;
  if (params.code_detuning_mhz != 0.0) {
    const double det = mhz_to_angular(params.code_detuning_mhz);
    const int g0 = joint_index(0, false), g2 = joint_index(2, false);
    h(g0, g2) += det;
    h(g2, g0) += det;
    const int e0 = joint_index(0, true);
    h(e0, e2) += det;
    h(e2, e0) += det;
  }

  LindbladModel model;
  model.basis = {h};
  model.alpha = RealVector::Ones(1);
  model.basis_support.resize(1);
  model.dissipators = {{kappa, mode_loss_op(cutoff)},
                       {kappa_q, qubit_loss_op(cutoff)}};

  LogicalPair pair;
  pair.psi0 = Vector::Zero(dim);
  pair.psi1 = Vector::Zero(dim);
  pair.psi0(joint_index(0, false)) = 1.0;
  pair.psi1(joint_index(2, false)) = 1.0;

  const RealVector tgrid = linspace(0.0, params.t_max_us, params.points);
  const int steps = std::max(
      1, int(std::lround(params.steps_per_unit * params.t_max_us /
                         double(params.points - 1))));
  const Trajectory traj = propagate_code(model, pair, tgrid, steps);

  FockStabilizationResult out;
  out.curve.tgrid = tgrid;
  out.curve.values.resize(tgrid.size());
  out.curve.baseline.resize(tgrid.size());
  for (int g = 0; g < tgrid.size(); ++g) {
    out.curve.values(g) = average_fidelity(pair, traj.branch_set_at(g));
    out.curve.baseline(g) = break_even(tgrid(g), kappa);
  }
  const BranchSet last = traj.branch_set_at(int(tgrid.size()) - 1);
  out.pole0_final = single_state_fidelity(0.0, 0.0, pair, last);
  out.pole1_final = single_state_fidelity(two_pi / 2.0, 0.0, pair, last);
  out.equator_final = single_state_fidelity(two_pi / 4.0, 0.0, pair, last);
  return out;
}

Matrix code_state(const LogicalPair& pair) {
  return 0.5 * (pair.psi0 * pair.psi0.adjoint() +
                pair.psi1 * pair.psi1.adjoint());
}

RealMatrix wigner(const Matrix& rho, const RealVector& xgrid,
                  const RealVector& pgrid, double* leakage) {
  require(rho.rows() == rho.cols(), "wigner: rho must be square");
  require(xgrid.size() >= 1 && pgrid.size() >= 1, "wigner: empty grid");
  const int dim = int(rho.rows());
  const Matrix a = fock_annihilation(dim - 1);
  Matrix parity = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) parity(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  const double trace0 = rho.trace().real();

  // The truncated displacement is still unitary, so truncation shows up as
  // displaced population piling against the Fock ceiling, not as trace loss.
  const int tail_start = std::max(dim - std::max(2, dim / 8), 1);

  RealMatrix w(xgrid.size(), pgrid.size());
  RealMatrix loss(xgrid.size(), pgrid.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < xgrid.size(); ++i) {
    for (int j = 0; j < pgrid.size(); ++j) {
      const cxd alpha = cxd(xgrid(i), pgrid(j)) / std::sqrt(2.0);
      const Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
      const Matrix disp = gen.exp();
      const Matrix displaced = disp.adjoint() * rho * disp;
      w(i, j) = (displaced * parity).trace().real() / (two_pi / 2.0);
      double tail = 0.0;
      for (int n = tail_start; n < dim; ++n) tail += displaced(n, n).real();
      loss(i, j) = std::abs(tail) / std::max(1e-300, std::abs(trace0));
    }
  }
  if (leakage) *leakage = loss.maxCoeff();
  return w;
}

}  // namespace aqec
