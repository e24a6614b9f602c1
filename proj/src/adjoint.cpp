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

#include "aqec/adjoint.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include <omp.h>

namespace aqec {

namespace {

constexpr double kPhaseFloor = 1e-14;

cxd phase_factor(cxd z, bool modified) {
  if (!modified) return cxd(1.0, 0.0);
  const double mag = std::abs(z);
  // |z| = 0 is a kink of the modified objective; the documented subgradient
  // treats it as Re z (phase 1).
  if (mag < kPhaseFloor) return cxd(1.0, 0.0);
  return z / mag;
}

// Composite Simpson weights for int_0^{N h} f dt over N uniform intervals.
// Even N: plain composite Simpson.  Odd N >= 3: Simpson over the first
// N - 3 intervals plus a 3/8 tail.  N = 1 falls back to the trapezoid.
std::vector<double> quadrature_weights(int nsteps, double h) {
  std::vector<double> w(size_t(nsteps) + 1, 0.0);
  if (nsteps == 1) {
    w[0] = w[1] = 0.5 * h;
    return w;
  }
  int simpson_end = nsteps;
  if (nsteps % 2 != 0) simpson_end = nsteps - 3;
  for (int i = 0; i + 2 <= simpson_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (simpson_end != nsteps) {
    const int i = simpson_end;
    w[i] += 3.0 * h / 8.0;
    w[i + 1] += 9.0 * h / 8.0;
    w[i + 2] += 9.0 * h / 8.0;
    w[i + 3] += 3.0 * h / 8.0;
  }
  return w;
}

// tr(H_j K) with K = rho a^+ - a^+ rho needs K only at the support entries
// of H_j; the plan lists the unique K entries and, per parameter, which of
// them contribute with what coefficient.
struct SupportPlan {
  std::vector<std::pair<int, int>> k_entries;  // (row, col) of K
  std::vector<std::vector<std::pair<int, cxd>>> terms;
};

SupportPlan build_support_plan(const LindbladModel& model) {
  require(!model.basis_support.empty(),
          "backpropagate: model carries no basis supports; build the model "
          "through ansatz::to_model");
  SupportPlan plan;
  plan.terms.resize(model.basis_support.size());
  std::map<std::pair<int, int>, int> index;
  for (size_t j = 0; j < model.basis_support.size(); ++j) {
    for (const auto& entry : model.basis_support[j]) {
      // support entry H_j(r, c) = v contributes v * K(c, r)
      const std::pair<int, int> key{entry.col(), entry.row()};
      auto [it, inserted] = index.try_emplace(key, int(plan.k_entries.size()));
      if (inserted) plan.k_entries.push_back(key);
      plan.terms[j].emplace_back(it->second, entry.value());
    }
  }
  return plan;
}

// K(p, q) = (rho a^+)(p, q) - (a^+ rho)(p, q)
cxd k_entry(const Matrix& rho, const Matrix& adj, int p, int q) {
  const int d = int(rho.rows());
  cxd left = 0.0, right = 0.0;
  for (int m = 0; m < d; ++m) {
    left += rho(p, m) * std::conj(adj(q, m));
    right += std::conj(adj(m, p)) * rho(m, q);
  }
  return left - right;
}

// sum_ij X_ij conj(adj_ij)
cxd frobenius(const Matrix& x, const Matrix& adj) {
  return (x.cwiseProduct(adj.conjugate())).sum();
}

// Adds w * Re tr(Delta_theta a^+) for every parameter at one stored point.
void accumulate_gradients(const SupportPlan& plan, const GeneratorOps& ops,
                          const Matrix& rho, const Matrix& adj, double w,
                          std::vector<cxd>& k_scratch, RealVector& galpha,
                          RealVector& gbeta) {
  for (size_t e = 0; e < plan.k_entries.size(); ++e)
    k_scratch[e] = k_entry(rho, adj, plan.k_entries[e].first,
                           plan.k_entries[e].second);
  for (size_t j = 0; j < plan.terms.size(); ++j) {
    cxd tr = 0.0;
    for (const auto& [idx, coeff] : plan.terms[j]) tr += coeff * k_scratch[idx];
    // Delta_alpha = -i[H_j, rho]; Re tr(-i X a^+) = Im tr(X a^+)
    galpha(j) += w * tr.imag();
  }
  for (size_t k = 0; k < ops.jumps.size(); ++k) {
    const Matrix arho = ops.jumps[k] * rho;
    const Matrix arho_adag = arho * ops.jumps_dag[k];
    const Matrix nrho = ops.normal[k] * rho;
    const Matrix rhon = rho * ops.normal[k];
    const cxd tr = frobenius(arho_adag, adj) -
                   0.5 * (frobenius(nrho, adj) + frobenius(rhon, adj));
    gbeta(k) += w * tr.real();
  }
}

// One backward RK4 step (step size -h) of the adjoint equation.
void adjoint_step_back(const GeneratorOps& ops, Matrix& adj, double h,
                       Matrix& k1, Matrix& k2, Matrix& k3, Matrix& k4,
                       Matrix& tmp) {
  adjoint_rhs(ops, adj, k1);
  tmp = adj - (0.5 * h) * k1;
  adjoint_rhs(ops, tmp, k2);
  tmp = adj - (0.5 * h) * k2;
  adjoint_rhs(ops, tmp, k3);
  tmp = adj - h * k3;
  adjoint_rhs(ops, tmp, k4);
  adj -= (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::array<Matrix, 3> terminal_adjoints(const LogicalPair& pair,
                                        const BranchSet& final_states,
                                        bool modified) {
  pair.validate();
  const BranchSet init = initial_branches(pair);
  const cxd z = coherence_trace(pair, final_states);
  const cxd phase = phase_factor(z, modified);
  std::array<Matrix, 3> terminal;
  terminal[0] = init.r00 / 3.0 + init.r11 / 6.0;
  terminal[1] = init.r00 / 6.0 + init.r11 / 3.0;
  terminal[2] = phase * (init.r10 / 3.0);
  return terminal;
}

AdjointBundle backpropagate(const LindbladModel& model, const Trajectory& traj,
                            const std::array<Matrix, 3>& terminal) {
  model.validate();
  require(traj.stores_steps && !traj.step_states.empty(),
          "backpropagate: trajectory lacks per-step storage (propagate with "
          "store_steps = true)");
  require(traj.branches() == 3, "backpropagate: need a three-branch trajectory");
  const int nsteps = int(traj.step_states[0].size()) - 1;
  require(nsteps >= 1, "backpropagate: trajectory has no steps");
  const double h = traj.step;
  require(h > 0.0, "backpropagate: invalid step size");
  const int d = model.dim();
  for (const auto& t : terminal)
    require(t.rows() == d && t.cols() == d,
            "backpropagate: terminal adjoint dimension mismatch");

  const SupportPlan plan = build_support_plan(model);
  const GeneratorOps ops =
      make_generator_ops(model.hamiltonian(), model.dissipators);
  const std::vector<double> weights = quadrature_weights(nsteps, h);
  const int nalpha = int(model.basis.size());
  const int nbeta = int(model.dissipators.size());

  AdjointBundle bundle;
  RealMatrix galpha_branch = RealMatrix::Zero(nalpha, 3);
  RealMatrix gbeta_branch = RealMatrix::Zero(std::max(nbeta, 1), 3);

  const int branch_threads = std::min(3, omp_get_max_threads());
#pragma omp parallel for schedule(static) num_threads(branch_threads)
  for (int b = 0; b < 3; ++b) {
    Matrix adj = terminal[b];
    Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
    std::vector<cxd> k_scratch(plan.k_entries.size());
    RealVector ga = RealVector::Zero(nalpha);
    RealVector gb = RealVector::Zero(nbeta);
    accumulate_gradients(plan, ops, traj.step_states[b][nsteps], adj,
                         weights[nsteps], k_scratch, ga, gb);
    for (int n = nsteps; n >= 1; --n) {
      adjoint_step_back(ops, adj, h, k1, k2, k3, k4, tmp);
      accumulate_gradients(plan, ops, traj.step_states[b][n - 1], adj,
                           weights[n - 1], k_scratch, ga, gb);
    }
    bundle.a0[b] = std::move(adj);
    galpha_branch.col(b) = ga;
    if (nbeta > 0) gbeta_branch.col(b).head(nbeta) = gb;
  }

  bundle.grad_alpha = RealVector::Zero(nalpha);
  bundle.grad_beta = RealVector::Zero(nbeta);
  for (int b = 0; b < 3; ++b) {
    bundle.grad_alpha += galpha_branch.col(b);
    if (nbeta > 0) bundle.grad_beta += gbeta_branch.col(b).head(nbeta);
  }
  return bundle;
}

std::pair<Vector, Vector> grad_logical_states(const std::array<Matrix, 3>& a0,
                                              const LogicalPair& pair,
                                              const BranchSet& final_states,
                                              bool modified) {
  const cxd z = coherence_trace(pair, final_states);
  const cxd phase = phase_factor(z, modified);

  // Total derivative with respect to each initial matrix: the backpropagated
  // adjoint (initial-state path) plus the weight dependence of the terminal
  // functional.
  const Matrix g00 = a0[0] + final_states.r00.adjoint() / 3.0 +
                     final_states.r11.adjoint() / 6.0;
  const Matrix g11 = a0[1] + final_states.r00.adjoint() / 6.0 +
                     final_states.r11.adjoint() / 3.0;
  const Matrix& g10 = a0[2];
  const Matrix g01 = phase * final_states.r10.adjoint() / 3.0;

  Vector gpsi0 = (g00 + g00.adjoint()) * pair.psi0;
  Vector gpsi1 = (g11 + g11.adjoint()) * pair.psi1;
  // r10(0) = psi1 psi0^+  and  r01(0) = psi0 psi1^+
  gpsi0 += g10.adjoint() * pair.psi1;
  gpsi1 += g10 * pair.psi0;
  gpsi0 += g01 * pair.psi1;
  gpsi1 += g01.adjoint() * pair.psi0;
  return {gpsi0, gpsi1};
}

Matrix adjoint_backward(const LindbladModel& model, Matrix a_terminal,
                        double total_time, int nsteps) {
  model.validate();
  require(nsteps >= 1 && total_time > 0.0, "adjoint_backward: bad arguments");
  const GeneratorOps ops =
      make_generator_ops(model.hamiltonian(), model.dissipators);
  const double h = total_time / nsteps;
  const int d = model.dim();
  Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
  for (int n = 0; n < nsteps; ++n)
    adjoint_step_back(ops, a_terminal, h, k1, k2, k3, k4, tmp);
  return a_terminal;
}

FidelityGradients fidelity_and_gradients(const LindbladModel& model,
                                         const LogicalPair& pair,
                                         double total_time, int total_steps,
                                         bool modified) {
  require(total_time > 0.0 && total_steps >= 1,
          "fidelity_and_gradients: bad time grid");
  const RealVector tgrid = linspace(0.0, total_time, 2);
  const Trajectory traj =
      propagate_code(model, pair, tgrid, total_steps, /*store_steps=*/true);
  const BranchSet finals = traj.branch_set_at(1);

  FidelityGradients out;
  out.fidelity = modified ? modified_average_fidelity(pair, finals)
                          : average_fidelity(pair, finals);
  const auto terminal = terminal_adjoints(pair, finals, modified);
  AdjointBundle bundle = backpropagate(model, traj, terminal);
  auto [g0, g1] = grad_logical_states(bundle.a0, pair, finals, modified);
  out.grad_alpha = std::move(bundle.grad_alpha);
  out.grad_beta = std::move(bundle.grad_beta);
  out.grad_psi0 = std::move(g0);
  out.grad_psi1 = std::move(g1);
  return out;
}

namespace {

// Objective on raw (unvalidated) amplitudes: finite differences perturb a
// single Re/Im entry, so the evaluation path must accept non-orthonormal
// vectors and treat the weights consistently.
double raw_objective(const LindbladModel& model, const Vector& psi0,
                     const Vector& psi1, double total_time, int total_steps,
                     bool modified) {
  const RealVector tgrid = linspace(0.0, total_time, 2);
  const Matrix r00 = psi0 * psi0.adjoint();
  const Matrix r11 = psi1 * psi1.adjoint();
  const Matrix r10 = psi1 * psi0.adjoint();
  BranchSet finals;
  finals.r00 = propagate(model, r00, tgrid, total_steps).states[0].back();
  finals.r11 = propagate(model, r11, tgrid, total_steps).states[0].back();
  finals.r10 = propagate(model, r10, tgrid, total_steps).states[0].back();
  const LogicalPair raw{psi0, psi1};
  return modified ? modified_average_fidelity(raw, finals)
                  : average_fidelity(raw, finals);
}

}  // namespace

std::string GradcheckReport::table() const {
  std::ostringstream os;
  os << "parameter            adjoint          finite-diff      |diff|    ok\n";
  for (const auto& e : entries) {
    os.setf(std::ios::scientific);
    os.precision(6);
    os.width(0);
    std::string name = e.name;
    name.resize(20, ' ');
    os << name << " " << e.adjoint << "  " << e.finite_diff << "  ";
    os.precision(2);
    os << e.error << "  " << (e.pass ? "yes" : "NO") << "\n";
  }
  if (degenerate)
    os << "all gradients below 1e-12: degenerate; increase T\n";
  return os.str();
}

GradcheckReport gradcheck(const LindbladModel& model, const LogicalPair& pair,
                          double total_time, int total_steps, bool modified,
                          double fd_delta, double rel_tol, double abs_floor) {
  model.validate();
  const FidelityGradients grads =
      fidelity_and_gradients(model, pair, total_time, total_steps, modified);

  GradcheckReport report;
  auto record = [&](const std::string& name, double adjoint, double fd) {
    GradcheckEntry e;
    e.name = name;
    e.adjoint = adjoint;
    e.finite_diff = fd;
    e.error = std::abs(adjoint - fd);
    e.pass = e.error <= std::max(rel_tol * std::abs(fd), abs_floor);
    report.max_rel_error = std::max(
        report.max_rel_error, e.error / std::max(std::abs(fd), abs_floor / rel_tol));
    report.entries.push_back(std::move(e));
  };

  // alpha
  for (int j = 0; j < model.alpha.size(); ++j) {
    LindbladModel m = model;
    m.alpha(j) = model.alpha(j) + fd_delta;
    const double fp =
        raw_objective(m, pair.psi0, pair.psi1, total_time, total_steps, modified);
    m.alpha(j) = model.alpha(j) - fd_delta;
    const double fm =
        raw_objective(m, pair.psi0, pair.psi1, total_time, total_steps, modified);
    record("alpha[" + std::to_string(j) + "]", grads.grad_alpha(j),
           (fp - fm) / (2.0 * fd_delta));
  }

  // beta (one-sided when the rate would go negative)
  for (size_t k = 0; k < model.dissipators.size(); ++k) {
    LindbladModel m = model;
    const double beta = model.dissipators[k].rate;
    m.dissipators[k].rate = beta + fd_delta;
    const double fp =
        raw_objective(m, pair.psi0, pair.psi1, total_time, total_steps, modified);
    double fd;
    if (beta >= fd_delta) {
      m.dissipators[k].rate = beta - fd_delta;
      const double fm = raw_objective(m, pair.psi0, pair.psi1, total_time,
                                      total_steps, modified);
      fd = (fp - fm) / (2.0 * fd_delta);
    } else {
      const double f0 = raw_objective(model, pair.psi0, pair.psi1, total_time,
                                      total_steps, modified);
      fd = (fp - f0) / fd_delta;
    }
    record("beta[" + std::to_string(k) + "]", grads.grad_beta(int(k)), fd);
  }

  // logical-state amplitudes, Re and Im parts
  const int d = pair.dim();
  for (int which = 0; which < 2; ++which) {
    const Vector& base = which == 0 ? pair.psi0 : pair.psi1;
    const Vector& g = which == 0 ? grads.grad_psi0 : grads.grad_psi1;
    const std::string stem = which == 0 ? "psi0[" : "psi1[";
    for (int n = 0; n < d; ++n) {
      for (int part = 0; part < 2; ++part) {
        Vector pert = base;
        const cxd delta = part == 0 ? cxd(fd_delta, 0.0) : cxd(0.0, fd_delta);
        pert(n) = base(n) + delta;
        const double fp = which == 0
                              ? raw_objective(model, pert, pair.psi1,
                                              total_time, total_steps, modified)
                              : raw_objective(model, pair.psi0, pert,
                                              total_time, total_steps, modified);
        pert(n) = base(n) - delta;
        const double fm = which == 0
                              ? raw_objective(model, pert, pair.psi1,
                                              total_time, total_steps, modified)
                              : raw_objective(model, pair.psi0, pert,
                                              total_time, total_steps, modified);
        const double fd = (fp - fm) / (2.0 * fd_delta);
        const double adjoint = part == 0 ? g(n).real() : g(n).imag();
        record(stem + std::to_string(n) + (part == 0 ? "].re" : "].im"),
               adjoint, fd);
      }
    }
  }

  double biggest = 0.0;
  report.pass = true;
  for (const auto& e : report.entries) {
    biggest = std::max(biggest, std::abs(e.adjoint));
    report.pass = report.pass && e.pass;
  }
  report.degenerate = biggest < 1e-12;
  return report;
}

}  // namespace aqec
