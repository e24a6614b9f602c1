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

#include "aqec/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <omp.h>

namespace aqec {

Matrix LindbladModel::hamiltonian() const {
  require(!basis.empty(), "LindbladModel: empty basis");
  require(int(basis.size()) == alpha.size(),
          "LindbladModel: alpha length does not match basis");
  Matrix h = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (size_t j = 0; j < basis.size(); ++j) h += alpha(j) * basis[j];
  return h;
}

void LindbladModel::validate() const {
  require(!basis.empty(), "LindbladModel: empty basis");
  const int d = dim();
  for (const auto& b : basis) {
    require(b.rows() == d && b.cols() == d, "LindbladModel: basis dim mismatch");
  }
  require(int(basis.size()) == alpha.size(),
          "LindbladModel: alpha length does not match basis");
  require(is_hermitian(hamiltonian(), 1e-12),
          "LindbladModel: assembled Hamiltonian not Hermitian");
  for (const auto& dis : dissipators) {
    require(dis.rate >= 0.0, "LindbladModel: negative dissipator rate");
    require(dis.op.rows() == d && dis.op.cols() == d,
            "LindbladModel: dissipator dim mismatch");
  }
  if (!basis_support.empty())
    require(basis_support.size() == basis.size(),
            "LindbladModel: basis_support length mismatch");
}

BranchSet Trajectory::branch_set_at(int g) const {
  require(branches() == 3, "Trajectory: not a three-branch code trajectory");
  require(g >= 0 && g < tgrid.size(), "Trajectory: grid index out of range");
  return BranchSet{states[0][g], states[1][g], states[2][g]};
}

RealVector linspace(double a, double b, int n) {
  require(n >= 2, "linspace: need at least two points");
  RealVector v(n);
  for (int i = 0; i < n; ++i)
    v(i) = a + (b - a) * double(i) / double(n - 1);
  return v;
}

namespace {

void check_tgrid(const RealVector& tgrid) {
  require(tgrid.size() >= 1, "propagate: empty tgrid");
  require(std::abs(tgrid(0)) < 1e-15, "propagate: tgrid must start at 0");
  for (int g = 1; g < tgrid.size(); ++g)
    require(tgrid(g) > tgrid(g - 1), "propagate: tgrid must be ascending");
}

bool uniform_grid(const RealVector& tgrid) {
  if (tgrid.size() < 3) return true;
  const double h0 = tgrid(1) - tgrid(0);
  for (int g = 2; g < tgrid.size(); ++g)
    if (std::abs((tgrid(g) - tgrid(g - 1)) - h0) > 1e-12 * std::max(1.0, h0))
      return false;
  return true;
}

[[noreturn]] void diverged(double t) {
  throw numerical_error("integration diverged (non-finite values) near t = " +
                        std::to_string(t) + " us; reduce the step size");
}

struct Rk4Work {
  Matrix k1, k2, k3, k4, tmp;
  void init(int d) {
    k1.resize(d, d);
    k2.resize(d, d);
    k3.resize(d, d);
    k4.resize(d, d);
    tmp.resize(d, d);
  }
};

// One RK4 step of the time-independent generator.
inline void rk4_step(const GeneratorOps& ops, Matrix& rho, double h,
                     Rk4Work& w) {
  lindblad_rhs(ops, rho, w.k1);
  w.tmp = rho + (0.5 * h) * w.k1;
  lindblad_rhs(ops, w.tmp, w.k2);
  w.tmp = rho + (0.5 * h) * w.k2;
  lindblad_rhs(ops, w.tmp, w.k3);
  w.tmp = rho + h * w.k3;
  lindblad_rhs(ops, w.tmp, w.k4);
  rho += (h / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4);
}

// Propagates a single branch across the full grid, filling grid states and
// (optionally) every step endpoint.
void propagate_branch(const GeneratorOps& ops, Matrix rho,
                      const RealVector& tgrid, int steps_per_interval,
                      std::vector<Matrix>& grid_out,
                      std::vector<Matrix>* steps_out) {
  Rk4Work w;
  w.init(int(rho.rows()));
  grid_out.clear();
  grid_out.push_back(rho);
  if (steps_out) {
    steps_out->clear();
    steps_out->push_back(rho);
  }
  for (int g = 0; g + 1 < tgrid.size(); ++g) {
    const double h = (tgrid(g + 1) - tgrid(g)) / steps_per_interval;
    for (int s = 0; s < steps_per_interval; ++s) {
      rk4_step(ops, rho, h, w);
      if (steps_out) steps_out->push_back(rho);
    }
    if (!rho.allFinite()) diverged(tgrid(g + 1));
    grid_out.push_back(rho);
  }
}

}  // namespace

Trajectory propagate(const LindbladModel& model, const Matrix& rho0,
                     const RealVector& tgrid, int steps_per_interval,
                     bool store_steps) {
  model.validate();
  check_tgrid(tgrid);
  require(steps_per_interval >= 1, "propagate: steps_per_interval must be >= 1");
  require(rho0.rows() == model.dim() && rho0.cols() == model.dim(),
          "propagate: rho0 dimension mismatch");
  if (store_steps)
    require(uniform_grid(tgrid),
            "propagate: step storage requires a uniform tgrid");

  GeneratorOps ops = make_generator_ops(model.hamiltonian(), model.dissipators);
  Trajectory traj;
  traj.tgrid = tgrid;
  traj.states.resize(1);
  if (store_steps) {
    traj.stores_steps = true;
    traj.step = tgrid.size() > 1
                    ? (tgrid(1) - tgrid(0)) / steps_per_interval
                    : 0.0;
    traj.step_states.resize(1);
  }
  propagate_branch(ops, rho0, tgrid, steps_per_interval, traj.states[0],
                   store_steps ? &traj.step_states[0] : nullptr);
  return traj;
}

Trajectory propagate_time_dependent(
    const std::function<Matrix(double)>& h_of_t,
    const std::vector<Dissipator>& dissipators, const Matrix& rho0,
    const RealVector& tgrid, int steps_per_interval) {
  check_tgrid(tgrid);
  require(steps_per_interval >= 1,
          "propagate_time_dependent: steps_per_interval must be >= 1");
  const int d = int(rho0.rows());

  // Static dissipators; H refreshed at each stage time.
  GeneratorOps ops = make_generator_ops(Matrix::Zero(d, d), dissipators);
  auto rhs = [&](double t, const Matrix& rho, Matrix& out) {
    set_hamiltonian(ops, h_of_t(t));
    lindblad_rhs(ops, rho, out);
  };

  Trajectory traj;
  traj.tgrid = tgrid;
  traj.states.resize(1);
  traj.states[0].push_back(rho0);
  Matrix rho = rho0;
  for (int g = 0; g + 1 < tgrid.size(); ++g) {
    const Matrix h_probe = h_of_t(tgrid(g));
    if (hermiticity_defect(h_probe) > 1e-9)
      throw numerical_error("propagate_time_dependent: supplied H(t) drifts "
                            "from Hermitian beyond 1e-9 at t = " +
                            std::to_string(tgrid(g)));
    const double h = (tgrid(g + 1) - tgrid(g)) / steps_per_interval;
    rk4_integrate(rhs, rho, tgrid(g), h, steps_per_interval);
    if (!rho.allFinite()) diverged(tgrid(g + 1));
    traj.states[0].push_back(rho);
  }
  return traj;
}

Trajectory propagate_code(const LindbladModel& model, const LogicalPair& pair,
                          const RealVector& tgrid, int steps_per_interval,
                          bool store_steps) {
  model.validate();
  pair.validate();
  check_tgrid(tgrid);
  require(steps_per_interval >= 1,
          "propagate_code: steps_per_interval must be >= 1");
  if (store_steps)
    require(uniform_grid(tgrid),
            "propagate_code: step storage requires a uniform tgrid");

  const BranchSet init = initial_branches(pair);
  const Matrix initial[3] = {init.r00, init.r11, init.r10};

  GeneratorOps ops = make_generator_ops(model.hamiltonian(), model.dissipators);
  Trajectory traj;
  traj.tgrid = tgrid;
  traj.states.resize(3);
  if (store_steps) {
    traj.stores_steps = true;
    traj.step = tgrid.size() > 1
                    ? (tgrid(1) - tgrid(0)) / steps_per_interval
                    : 0.0;
    traj.step_states.resize(3);
  }

  const int branch_threads = std::min(3, omp_get_max_threads());
#pragma omp parallel for schedule(static) num_threads(branch_threads)
  for (int b = 0; b < 3; ++b) {
    propagate_branch(ops, initial[b], tgrid, steps_per_interval,
                     traj.states[b],
                     store_steps ? &traj.step_states[b] : nullptr);
  }
  return traj;
}

void rk4_integrate(const RhsFn& rhs, Matrix& state, double t0, double h,
                   int nsteps,
                   const std::function<void(int, double, const Matrix&)>&
                       on_step) {
  Rk4Work w;
  w.init(int(state.rows()));
  double t = t0;
  for (int s = 0; s < nsteps; ++s) {
    rhs(t, state, w.k1);
    w.tmp = state + (0.5 * h) * w.k1;
    rhs(t + 0.5 * h, w.tmp, w.k2);
    w.tmp = state + (0.5 * h) * w.k2;
    rhs(t + 0.5 * h, w.tmp, w.k3);
    w.tmp = state + h * w.k3;
    rhs(t + h, w.tmp, w.k4);
    state += (h / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4);
    t = t0 + (s + 1) * h;
    if (on_step) on_step(s, t, state);
  }
}

}  // namespace aqec
