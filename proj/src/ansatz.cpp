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

#include "aqec/ansatz.hpp"

#include <algorithm>
#include <cmath>

namespace aqec {

namespace {

BasisTerm pair_term(int dim, int u, int v, bool imag_quad,
                    const std::string& label) {
  BasisTerm t;
  t.op = Matrix::Zero(dim, dim);
  if (imag_quad) {
    t.op(u, v) = imag_unit;
    t.op(v, u) = -imag_unit;
    t.support = {{u, v, imag_unit}, {v, u, -imag_unit}};
  } else {
    t.op(u, v) = 1.0;
    t.op(v, u) = 1.0;
    t.support = {{u, v, cxd(1.0, 0.0)}, {v, u, cxd(1.0, 0.0)}};
  }
  t.label = label;
  return t;
}

BasisTerm diag_term(int dim, int u, const std::string& label) {
  BasisTerm t;
  t.op = Matrix::Zero(dim, dim);
  t.op(u, u) = 1.0;
  t.support = {{u, u, cxd(1.0, 0.0)}};
  t.label = label;
  return t;
}

}  // namespace

HamiltonianBasis all_to_all_basis(int cutoff, bool include_diagonals) {
  require(cutoff >= 1, "all_to_all_basis: cutoff must be >= 1");
  HamiltonianBasis basis;
  basis.cutoff = cutoff;
  basis.dim = 2 * (cutoff + 1);
  const char* sector_name[2] = {"g", "e"};
  for (int s = 0; s < 2; ++s) {
    for (int m = 0; m <= cutoff; ++m) {
      for (int n = m + 1; n <= cutoff; ++n) {
        const int u = joint_index(m, s == 1);
        const int v = joint_index(n, s == 1);
        const std::string tag = std::string("aa:") + sector_name[s] +
                                sector_name[s] + ":" + std::to_string(m) +
                                ":" + std::to_string(n);
        basis.terms.push_back(pair_term(basis.dim, u, v, false, tag + ":x"));
        basis.terms.push_back(pair_term(basis.dim, u, v, true, tag + ":y"));
      }
    }
    if (include_diagonals) {
      for (int n = 0; n <= cutoff; ++n) {
        const int u = joint_index(n, s == 1);
        basis.terms.push_back(
            diag_term(basis.dim, u,
                      std::string("aa:") + sector_name[s] + sector_name[s] +
                          ":" + std::to_string(n) + ":diag"));
      }
    }
  }
  return basis;
}

HamiltonianBasis distance_d_basis(int cutoff, int d) {
  require(cutoff >= 1, "distance_d_basis: cutoff must be >= 1");
  require(d >= 1 && d <= cutoff, "distance_d_basis: need 1 <= d <= cutoff");
  HamiltonianBasis basis;
  basis.cutoff = cutoff;
  basis.dim = 2 * (cutoff + 1);
  for (int delta = -d; delta <= d; ++delta) {
    if (delta == 0) continue;
    for (int n = 0; n <= cutoff; ++n) {
      const int m = n + delta;  // oscillator index of the g side
      if (m < 0 || m > cutoff) continue;
      const int u = joint_index(m, false);  // |m, g>
      const int v = joint_index(n, true);   // |n, e>
      const std::string tag = "ge:" + std::to_string(m) + ":" +
                              std::to_string(n);
      basis.terms.push_back(pair_term(basis.dim, u, v, false, tag + ":x"));
      basis.terms.push_back(pair_term(basis.dim, u, v, true, tag + ":y"));
    }
  }
  return basis;
}

Matrix assemble(const HamiltonianBasis& basis, const RealVector& alpha) {
  require(alpha.size() == basis.size(), "assemble: alpha length mismatch");
  Matrix h = Matrix::Zero(basis.dim, basis.dim);
  for (int j = 0; j < basis.size(); ++j) h += alpha(j) * basis.terms[j].op;
  return h;
}

RealVector project_bounds(RealVector alpha, double bound) {
  require(bound > 0.0, "project_bounds: bound must be positive");
  for (int j = 0; j < alpha.size(); ++j)
    alpha(j) = std::clamp(alpha(j), -bound, bound);
  return alpha;
}

int hamiltonian_distance(const Matrix& h_tilde, double tol) {
  require(h_tilde.rows() == h_tilde.cols(),
          "hamiltonian_distance: operator must be square");
  int d = 0;
  for (int i = 0; i < h_tilde.rows(); ++i)
    for (int j = 0; j < h_tilde.cols(); ++j)
      if (std::abs(h_tilde(i, j)) >= tol) d = std::max(d, std::abs(i - j));
  return d;
}

Matrix ge_block(const Matrix& h_joint) {
  const int dim = int(h_joint.rows());
  require(dim % 2 == 0 && h_joint.cols() == dim,
          "ge_block: not a joint-space operator");
  const int levels = dim / 2;
  Matrix block(levels, levels);
  for (int m = 0; m < levels; ++m)
    for (int n = 0; n < levels; ++n)
      block(m, n) = h_joint(joint_index(m, false), joint_index(n, true));
  return block;
}

Matrix mode_loss_op(int cutoff) {
  return tensor(fock_annihilation(cutoff), identity(2));
}

Matrix qubit_loss_op(int cutoff) {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 1) = 1.0;
  return tensor(identity(cutoff + 1), b);
}

LindbladModel to_model(const HamiltonianBasis& basis, const RealVector& alpha,
                       std::vector<Dissipator> dissipators) {
  require(alpha.size() == basis.size(), "to_model: alpha length mismatch");
  LindbladModel model;
  model.alpha = alpha;
  model.dissipators = std::move(dissipators);
  model.basis.reserve(basis.size());
  model.basis_support.reserve(basis.size());
  for (const auto& term : basis.terms) {
    model.basis.push_back(term.op);
    model.basis_support.push_back(term.support);
  }
  return model;
}

}  // namespace aqec
