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

#include "aqec/objective.hpp"

#include <cmath>

namespace aqec {

void LogicalPair::validate(double norm_tol, double ortho_tol) const {
  require(psi0.size() == psi1.size(), "LogicalPair: dimension mismatch");
  require(std::abs(psi0.norm() - 1.0) < norm_tol,
          "LogicalPair: psi0 not normalized");
  require(std::abs(psi1.norm() - 1.0) < norm_tol,
          "LogicalPair: psi1 not normalized");
  require(std::abs(psi0.dot(psi1)) < ortho_tol,
          "LogicalPair: basis states not orthogonal");
}

BranchSet initial_branches(const LogicalPair& pair) {
  BranchSet b;
  b.r00 = pair.psi0 * pair.psi0.adjoint();
  b.r11 = pair.psi1 * pair.psi1.adjoint();
  b.r10 = pair.psi1 * pair.psi0.adjoint();
  return b;
}

double single_state_fidelity(double theta, double phi, const LogicalPair& pair,
                             const BranchSet& evolved) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const cxd phase = std::exp(imag_unit * phi);
  const Vector psi = c * pair.psi0 + phase * s * pair.psi1;
  // rho_tp(t) = c^2 r00 + s^2 r11 + c s e^{i phi} r10 + c s e^{-i phi} r10^+
  const Vector r00psi = evolved.r00 * psi;
  const Vector r11psi = evolved.r11 * psi;
  const Vector r10psi = evolved.r10 * psi;
  const Vector r01psi = evolved.r10.adjoint() * psi;
  const cxd val = c * c * psi.dot(r00psi) + s * s * psi.dot(r11psi) +
                  c * s * phase * psi.dot(r10psi) +
                  c * s * std::conj(phase) * psi.dot(r01psi);
  return val.real();
}

namespace {
inline cxd trace_product(const Matrix& a, const Matrix& b) {
  // tr(a b) without forming the product
  return (a.transpose().cwiseProduct(b)).sum();
}
}  // namespace

double average_fidelity(const LogicalPair& pair, const BranchSet& evolved) {
  const BranchSet init = initial_branches(pair);
  const cxd t0 = trace_product(init.r00 / 3.0 + init.r11 / 6.0, evolved.r00);
  const cxd t1 = trace_product(init.r00 / 6.0 + init.r11 / 3.0, evolved.r11);
  const cxd z = trace_product(init.r10.adjoint() / 3.0, evolved.r10);
  return t0.real() + t1.real() + z.real();
}

double modified_average_fidelity(const LogicalPair& pair,
                                 const BranchSet& evolved) {
  const BranchSet init = initial_branches(pair);
  const cxd t0 = trace_product(init.r00 / 3.0 + init.r11 / 6.0, evolved.r00);
  const cxd t1 = trace_product(init.r00 / 6.0 + init.r11 / 3.0, evolved.r11);
  const cxd z = trace_product(init.r10.adjoint() / 3.0, evolved.r10);
  return t0.real() + t1.real() + std::abs(z);
}

double entanglement_fidelity(const LogicalPair& pair,
                             const BranchSet& evolved) {
  const BranchSet init = initial_branches(pair);
  const Matrix r01_t = evolved.r10.adjoint();
  const cxd total =
      trace_product(init.r00, evolved.r00) +
      trace_product(init.r11, evolved.r11) +
      trace_product(init.r10.adjoint(), evolved.r10) +
      trace_product(init.r10, r01_t);
  return total.real() / 4.0;
}

double break_even(double t, double kappa) {
  require(t >= 0.0 && kappa >= 0.0, "break_even: negative argument");
  const double kt = kappa * t;
  return (std::exp(-kt) + 2.0 * std::exp(-kt / 2.0) + 3.0) / 6.0;
}

cxd coherence_trace(const LogicalPair& pair, const BranchSet& evolved) {
  const Matrix r01 = pair.psi0 * pair.psi1.adjoint();
  return trace_product(r01 / 3.0, evolved.r10);
}

RealMatrix bloch_map(const LogicalPair& pair, const BranchSet& evolved,
                     int ntheta, int nphi) {
  require(ntheta >= 2 && nphi >= 2, "bloch_map: grid must be >= 2x2");
  RealMatrix grid(ntheta, nphi);
  const double pi = two_pi / 2.0;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < ntheta; ++i) {
    const double theta = pi * double(i) / double(ntheta - 1);
    for (int j = 0; j < nphi; ++j) {
      const double phi = two_pi * double(j) / double(nphi);
      grid(i, j) = single_state_fidelity(theta, phi, pair, evolved);
    }
  }
  return grid;
}

double subspace_overlap(const LogicalPair& a, const LogicalPair& b) {
  require(a.dim() == b.dim(), "subspace_overlap: dimension mismatch");
  const Matrix ra =
      0.5 * (a.psi0 * a.psi0.adjoint() + a.psi1 * a.psi1.adjoint());
  const Matrix rb =
      0.5 * (b.psi0 * b.psi0.adjoint() + b.psi1 * b.psi1.adjoint());
  return 2.0 * trace_product(ra, rb).real();
}

}  // namespace aqec
