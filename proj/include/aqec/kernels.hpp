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

#include <vector>

#include "aqec/hilbert.hpp"

namespace aqec {

// Hamiltonians and jump operators in this problem family are banded in the
// Fock basis, so the right-hand side of the master equation is applied
// through compressed-sparse operators: O(nnz * dim) per product instead of
// O(dim^3).  Columns of the output are independent and computed in parallel.
// A dense serial reference implementation of the same map is kept below for
// tests and the kernel benchmark.

// Generator in application form.  `normal[k]` caches A_k^+ A_k.
struct GeneratorOps {
  int dim = 0;
  SparseMatrix hamiltonian;
  std::vector<double> rates;
  std::vector<SparseMatrix> jumps;
  std::vector<SparseMatrix> jumps_dag;
  std::vector<SparseMatrix> normal;
};

GeneratorOps make_generator_ops(const Matrix& hamiltonian,
                                const std::vector<Dissipator>& dissipators,
                                double prune_tol = 1e-300);

// Refresh only the Hamiltonian (per-iteration update during training).
void set_hamiltonian(GeneratorOps& ops, const Matrix& hamiltonian);

// out = -i[H, rho] + sum_k beta_k (A rho A^+ - 1/2 {A^+ A, rho})
void lindblad_rhs(const GeneratorOps& ops, const Matrix& rho, Matrix& out);

// out = -i[H, a] - sum_k beta_k (A^+ a A - 1/2 {A^+ A, a})
// (generator of the adjoint state, integrated backward in time)
void adjoint_rhs(const GeneratorOps& ops, const Matrix& a, Matrix& out);

// Serial dense reference for lindblad_rhs; kept independent of the sparse
// path so the two can be compared bit-for-bit-meaningfully in tests.
void lindblad_rhs_reference(const Matrix& hamiltonian,
                            const std::vector<Dissipator>& dissipators,
                            const Matrix& rho, Matrix& out);

// Serial dense reference for adjoint_rhs.
void adjoint_rhs_reference(const Matrix& hamiltonian,
                           const std::vector<Dissipator>& dissipators,
                           const Matrix& a, Matrix& out);

}  // namespace aqec
