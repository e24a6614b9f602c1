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

#pragma once

#include <functional>
#include <vector>

#include "aqec/hilbert.hpp"
#include "aqec/kernels.hpp"
#include "aqec/objective.hpp"

namespace aqec {

// Parametrized generator: H(alpha) = sum_j alpha_j H_j plus a fixed
// dissipator set.  `basis_support`, when populated, lists the nonzero
// entries of each H_j and is what makes per-parameter gradient traces O(1).
struct LindbladModel {
  std::vector<Matrix> basis;
  RealVector alpha;  // rad/us
  std::vector<Dissipator> dissipators;
  std::vector<std::vector<Eigen::Triplet<cxd>>> basis_support;

  int dim() const { return basis.empty() ? 0 : int(basis.front().rows()); }
  Matrix hamiltonian() const;
  void validate() const;
};

// Forward time evolution.  `states[branch][g]` holds the state at tgrid[g];
// when `stores_steps` is set the trajectory additionally keeps every RK4
// step endpoint (uniform step `step`), which is what the adjoint pass
// consumes.  Branch order for code trajectories: r00, r11, r10.
struct Trajectory {
  RealVector tgrid;
  std::vector<std::vector<Matrix>> states;

  bool stores_steps = false;
  double step = 0.0;
  std::vector<std::vector<Matrix>> step_states;

  int branches() const { return int(states.size()); }
  BranchSet branch_set_at(int grid_index) const;
};

// Fixed-step RK4 for d rho/dt = -i[H, rho] + sum_k beta_k D[A_k] rho applied
// to an arbitrary (possibly non-Hermitian) initial matrix.  tgrid must be
// ascending and start at 0; each interval is split into steps_per_interval
// uniform RK4 steps.  store_steps requires a uniform tgrid.
Trajectory propagate(const LindbladModel& model, const Matrix& rho0,
                     const RealVector& tgrid, int steps_per_interval,
                     bool store_steps = false);

// Same contract with H evaluated at every RK4 stage time.  The supplied
// H(t) is checked for Hermiticity at grid points (tolerance 1e-9).
Trajectory propagate_time_dependent(
    const std::function<Matrix(double)>& h_of_t,
    const std::vector<Dissipator>& dissipators, const Matrix& rho0,
    const RealVector& tgrid, int steps_per_interval);

// Propagates the three code branches r00(0) = |psi0><psi0|,
// r11(0) = |psi1><psi1|, r10(0) = |psi1><psi0| independently (in parallel).
Trajectory propagate_code(const LindbladModel& model, const LogicalPair& pair,
                          const RealVector& tgrid, int steps_per_interval,
                          bool store_steps = false);

// Generic RK4 driver used by the time-dependent paths (circuit module):
// rhs(t, state, out).  Integrates in place from t0 over nsteps steps of
// size h; on_step(i, t_Next, state) fires after each step.
using RhsFn = std::function<void(double, const Matrix&, Matrix&)>;
void rk4_integrate(const RhsFn& rhs, Matrix& state, double t0, double h,
                   int nsteps,
                   const std::function<void(int, double, const Matrix&)>&
                       on_step = nullptr);

RealVector linspace(double a, double b, int n);

}  // namespace aqec
