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

#include <string>
#include <vector>

#include "aqec/lindblad.hpp"

namespace aqec {

// One Hermitian control term.  Complex couplings are parametrized by two
// real quadratures per basis-state pair:
//   x: |u><v| + |v><u|        y: i(|u><v| - |v><u|)
// so the optimizer and the adjoint stay in real arithmetic.  Every term has
// unit largest singular value.
struct BasisTerm {
  Matrix op;
  std::vector<Eigen::Triplet<cxd>> support;
  std::string label;
};

struct HamiltonianBasis {
  int dim = 0;       // joint-space dimension, 2*(cutoff+1)
  int cutoff = 0;
  std::vector<BasisTerm> terms;
  int size() const { return int(terms.size()); }
};

// Couplings between any two joint basis states within each ancilla sector
// ({|m,g><n,g|}, {|m,e><n,e|}), two quadratures per pair.  Diagonal detuning
// terms |u><u| per sector are included by default; include_diagonals=false
// restricts to the off-diagonal set.
HamiltonianBasis all_to_all_basis(int cutoff, bool include_diagonals = true);

// Terms |n+delta, g><n, e| (+ conjugates) for 0 < |delta| <= d.  No g-g,
// e-e, or delta = 0 terms.
HamiltonianBasis distance_d_basis(int cutoff, int d);

// H(alpha) = sum_j alpha_j H_j.
Matrix assemble(const HamiltonianBasis& basis, const RealVector& alpha);

// Componentwise clip to [-bound, +bound] (rad/us).
RealVector project_bounds(RealVector alpha, double bound);

// Smallest d such that |H~(m,n)| < tol whenever |m - n| > d.
int hamiltonian_distance(const Matrix& h_tilde, double tol = 1e-10);

// Extracts the single-mode coupling block H~(m,n) = <m,g| H |n,e> from a
// joint-space operator.
Matrix ge_block(const Matrix& h_joint);

// Joint-space index of |n, g(e)>; ancilla index is fastest-varying.
inline int joint_index(int n, bool excited) { return 2 * n + (excited ? 1 : 0); }

// sqrt(kappa)-ready jump operators on the joint space.
Matrix mode_loss_op(int cutoff);   // a (x) I2
Matrix qubit_loss_op(int cutoff);  // I (x) |g><e|

// Bundles a basis with coefficients and dissipators into a LindbladModel,
// carrying the sparse supports for gradient traces.
LindbladModel to_model(const HamiltonianBasis& basis, const RealVector& alpha,
                       std::vector<Dissipator> dissipators);

}  // namespace aqec
