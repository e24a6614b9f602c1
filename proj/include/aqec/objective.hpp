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

#include "aqec/types.hpp"

namespace aqec {

// Orthonormal basis of a candidate two-dimensional code subspace.
struct LogicalPair {
  Vector psi0;
  Vector psi1;

  int dim() const { return int(psi0.size()); }
  void validate(double norm_tol = 1e-10, double ortho_tol = 1e-8) const;
};

// The three propagated matrices that determine every fidelity functional:
// r00 = evolved |psi0><psi0|, r11 = evolved |psi1><psi1|,
// r10 = evolved |psi1><psi0|.  (r01(t) is r10(t)^+ by Hermiticity transport
// and is never propagated separately.)
struct BranchSet {
  Matrix r00;
  Matrix r11;
  Matrix r10;
};

BranchSet initial_branches(const LogicalPair& pair);

// F_{theta,phi} = <psi_tp| rho_tp(t) |psi_tp> with
// |psi_tp> = cos(theta/2)|psi0> + e^{i phi} sin(theta/2)|psi1> and rho_tp(t)
// assembled from the branches by linearity.
double single_state_fidelity(double theta, double phi, const LogicalPair& pair,
                             const BranchSet& evolved);

// Bloch-sphere average in evaluated form:
//   tr[(1/3 r00 + 1/6 r11) r00(t)] + tr[(1/6 r00 + 1/3 r11) r11(t)]
//   + Re tr[1/3 r01 r10(t)]
double average_fidelity(const LogicalPair& pair, const BranchSet& evolved);

// Same with |tr[1/3 r01 r10(t)]| — best overlap modulo a logical Z rotation.
double modified_average_fidelity(const LogicalPair& pair,
                                 const BranchSet& evolved);

// 1/4 tr[r00 r00(t) + r11 r11(t) + r01 r10(t) + r10 r01(t)]
double entanglement_fidelity(const LogicalPair& pair, const BranchSet& evolved);

// Average fidelity of the trivial {|0>,|1>} encoding under bare photon loss
// at rate kappa (rad/us): (exp(-kt) + 2 exp(-kt/2) + 3)/6.
double break_even(double t, double kappa);

// Coherence trace z = tr(1/3 r01 r10(t)); exposed for gradient code.
cxd coherence_trace(const LogicalPair& pair, const BranchSet& evolved);

// F_{theta,phi} on a regular grid; rows index theta in [0,pi], columns phi
// in [0,2pi).  Rows are evaluated in parallel.
RealMatrix bloch_map(const LogicalPair& pair, const BranchSet& evolved,
                     int ntheta, int nphi);

// 2 tr(rho_A rho_B) with rho = (|psi0><psi0| + |psi1><psi1|)/2; equals 1 iff
// the subspaces coincide.
double subspace_overlap(const LogicalPair& a, const LogicalPair& b);

struct FidelityCurve {
  RealVector tgrid;     // us
  RealVector values;    // F-bar(t)
  RealVector baseline;  // break-even at the same grid
};

}  // namespace aqec
