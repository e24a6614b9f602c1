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

#include <array>
#include <string>

#include "aqec/lindblad.hpp"

namespace aqec {

// Gradients of the average-fidelity objective, backpropagated through the
// master equation.
//
// Conventions: the pairing between an adjoint matrix a and a state
// perturbation is <a, d_rho> = sum_ij Re(conj(a_ij) d_rho_ij); gradients
// with respect to complex amplitudes are Wirtinger-packed,
// g = dL/dRe + i dL/dIm, so that dL = Re(g^+ d_psi).

struct AdjointBundle {
  std::array<Matrix, 3> a0;  // adjoint states at t = 0, branch order 00/11/10
  RealVector grad_alpha;
  RealVector grad_beta;
  Vector grad_psi0;
  Vector grad_psi1;
};

// dF/d rho_b(T) per branch.  For the coherence branch, modified=true applies
// the phase factor of |z| (z = tr(1/3 r01(0) r10(T))); at |z| ~ 0 the
// documented subgradient (phase 1) is used.
std::array<Matrix, 3> terminal_adjoints(const LogicalPair& pair,
                                        const BranchSet& final_states,
                                        bool modified);

// Integrates the adjoint equation
//   da/dt = -i[H,a] - sum_k beta_k (A^+ a A - 1/2 {A^+A, a})
// backward over the stored RK4 grid, accumulating parameter gradients
//   dF/d theta = int_0^T Re tr(Delta_theta(t) a^+(t)) dt
// by composite Simpson over the stored endpoints.  Requires a trajectory
// recorded with store_steps.
AdjointBundle backpropagate(const LindbladModel& model, const Trajectory& traj,
                            const std::array<Matrix, 3>& terminal);

// Chains dF/d rho_b(0) (plus the weight dependence of the terminal
// functional on the initial matrices) to Wirtinger gradients over the raw
// logical-state amplitudes.
std::pair<Vector, Vector> grad_logical_states(const std::array<Matrix, 3>& a0,
                                              const LogicalPair& pair,
                                              const BranchSet& final_states,
                                              bool modified);

// Backward integration of a single adjoint matrix from t = T to 0 over
// nsteps uniform RK4 steps (used directly by duality tests).
Matrix adjoint_backward(const LindbladModel& model, Matrix a_terminal,
                        double total_time, int nsteps);

// Forward + adjoint in one call: the objective (modified or plain average
// fidelity at time T) and every gradient.
struct FidelityGradients {
  double fidelity = 0.0;
  RealVector grad_alpha;
  RealVector grad_beta;
  Vector grad_psi0;
  Vector grad_psi1;
};
FidelityGradients fidelity_and_gradients(const LindbladModel& model,
                                         const LogicalPair& pair, double total_time,
                                         int total_steps, bool modified);

struct GradcheckEntry {
  std::string name;
  double adjoint = 0.0;
  double finite_diff = 0.0;
  double error = 0.0;  // |adjoint - fd|
  bool pass = false;
};

struct GradcheckReport {
  std::vector<GradcheckEntry> entries;
  double max_rel_error = 0.0;
  bool degenerate = false;  // all gradients ~ 0; lengthen T
  bool pass = false;
  std::string table() const;
};

// Compares every parameter gradient against central finite differences of
// the same discrete objective.  pass per component:
// |adj - fd| <= max(rel_tol * |fd|, abs_floor).
GradcheckReport gradcheck(const LindbladModel& model, const LogicalPair& pair,
                          double total_time, int total_steps, bool modified,
                          double fd_delta = 1e-6, double rel_tol = 1e-5,
                          double abs_floor = 1e-9);

}  // namespace aqec
