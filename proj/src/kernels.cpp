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

#include "aqec/kernels.hpp"

#include <vector>

namespace aqec {

namespace {

SparseMatrix to_sparse(const Matrix& m, double prune_tol) {
  SparseMatrix s = m.sparseView(1.0, prune_tol);
  s.makeCompressed();
  return s;
}

// y += scale * (S x), CCS gather over all columns of S.
inline void add_sparse_times_vec(const SparseMatrix& s, const cxd* x, cxd scale,
                                 cxd* y) {
  const int cols = int(s.cols());
  for (int j = 0; j < cols; ++j) {
    const cxd xj = scale * x[j];
    if (xj == cxd(0.0, 0.0)) continue;
    for (SparseMatrix::InnerIterator it(s, j); it; ++it)
      y[it.row()] += it.value() * xj;
  }
}

// y += scale * (M S_col_c) where M is dense (column-major) and S_col_c is
// column c of a sparse matrix: y += scale * sum_r S(r,c) M(:,r).
inline void add_dense_times_sparse_col(const Matrix& m, const SparseMatrix& s,
                                       int c, cxd scale, cxd* y) {
  const int d = int(m.rows());
  for (SparseMatrix::InnerIterator it(s, c); it; ++it) {
    const cxd v = scale * it.value();
    const cxd* col = m.data() + size_t(it.row()) * d;
    for (int i = 0; i < d; ++i) y[i] += v * col[i];
  }
}

struct Scratch {
  std::vector<cxd> w;
  void reset(int dim) {
    w.assign(size_t(dim), cxd(0.0, 0.0));
  }
};

}  // namespace

GeneratorOps make_generator_ops(const Matrix& hamiltonian,
                                const std::vector<Dissipator>& dissipators,
                                double prune_tol) {
  require(hamiltonian.rows() == hamiltonian.cols(),
          "make_generator_ops: H must be square");
  GeneratorOps ops;
  ops.dim = int(hamiltonian.rows());
  ops.hamiltonian = to_sparse(hamiltonian, prune_tol);
  for (const auto& dis : dissipators) {
    require(dis.rate >= 0.0, "make_generator_ops: negative dissipator rate");
    require(dis.op.rows() == ops.dim && dis.op.cols() == ops.dim,
            "make_generator_ops: dissipator dimension mismatch");
    ops.rates.push_back(dis.rate);
    ops.jumps.push_back(to_sparse(dis.op, prune_tol));
    ops.jumps_dag.push_back(to_sparse(dis.op.adjoint(), prune_tol));
    ops.normal.push_back(to_sparse(dis.op.adjoint() * dis.op, prune_tol));
  }
  return ops;
}

void set_hamiltonian(GeneratorOps& ops, const Matrix& hamiltonian) {
  require(hamiltonian.rows() == ops.dim && hamiltonian.cols() == ops.dim,
          "set_hamiltonian: dimension mismatch");
  ops.hamiltonian = to_sparse(hamiltonian, 1e-300);
}

void lindblad_rhs(const GeneratorOps& ops, const Matrix& rho, Matrix& out) {
  const int d = ops.dim;
  require(rho.rows() == d && rho.cols() == d, "lindblad_rhs: shape mismatch");
  out.resize(d, d);
  const int nk = int(ops.rates.size());

#pragma omp parallel for schedule(static) if (d >= 16)
  for (int c = 0; c < d; ++c) {
    static thread_local Scratch scratch;
    cxd* o = out.data() + size_t(c) * d;
    for (int i = 0; i < d; ++i) o[i] = cxd(0.0, 0.0);

    const cxd* rho_c = rho.data() + size_t(c) * d;
    // -i H rho + i rho H
    add_sparse_times_vec(ops.hamiltonian, rho_c, -imag_unit, o);
    add_dense_times_sparse_col(rho, ops.hamiltonian, c, imag_unit, o);

    for (int k = 0; k < nk; ++k) {
      const double beta = ops.rates[k];
      if (beta == 0.0) continue;
      // w = rho A^+ (:,c);  o += beta A w
      scratch.reset(d);
      add_dense_times_sparse_col(rho, ops.jumps_dag[k], c, cxd(1.0, 0.0),
                                 scratch.w.data());
      add_sparse_times_vec(ops.jumps[k], scratch.w.data(), cxd(beta, 0.0), o);
      // -beta/2 (N rho + rho N)
      add_sparse_times_vec(ops.normal[k], rho_c, cxd(-0.5 * beta, 0.0), o);
      add_dense_times_sparse_col(rho, ops.normal[k], c, cxd(-0.5 * beta, 0.0),
                                 o);
    }
  }
}

void adjoint_rhs(const GeneratorOps& ops, const Matrix& a, Matrix& out) {
  const int d = ops.dim;
  require(a.rows() == d && a.cols() == d, "adjoint_rhs: shape mismatch");
  out.resize(d, d);
  const int nk = int(ops.rates.size());

#pragma omp parallel for schedule(static) if (d >= 16)
  for (int c = 0; c < d; ++c) {
    static thread_local Scratch scratch;
    cxd* o = out.data() + size_t(c) * d;
    for (int i = 0; i < d; ++i) o[i] = cxd(0.0, 0.0);

    const cxd* a_c = a.data() + size_t(c) * d;
    add_sparse_times_vec(ops.hamiltonian, a_c, -imag_unit, o);
    add_dense_times_sparse_col(a, ops.hamiltonian, c, imag_unit, o);

    for (int k = 0; k < nk; ++k) {
      const double beta = ops.rates[k];
      if (beta == 0.0) continue;
      // v = a A (:,c);  o -= beta A^+ v
      scratch.reset(d);
      add_dense_times_sparse_col(a, ops.jumps[k], c, cxd(1.0, 0.0),
                                 scratch.w.data());
      add_sparse_times_vec(ops.jumps_dag[k], scratch.w.data(),
                           cxd(-beta, 0.0), o);
      // +beta/2 (N a + a N)
      add_sparse_times_vec(ops.normal[k], a_c, cxd(0.5 * beta, 0.0), o);
      add_dense_times_sparse_col(a, ops.normal[k], c, cxd(0.5 * beta, 0.0), o);
    }
  }
}

void lindblad_rhs_reference(const Matrix& hamiltonian,
                            const std::vector<Dissipator>& dissipators,
                            const Matrix& rho, Matrix& out) {
  out = -imag_unit * (hamiltonian * rho - rho * hamiltonian);
  for (const auto& dis : dissipators) {
    const Matrix& a = dis.op;
    const Matrix n = a.adjoint() * a;
    out += dis.rate * (a * rho * a.adjoint() - 0.5 * (n * rho + rho * n));
  }
}

void adjoint_rhs_reference(const Matrix& hamiltonian,
                           const std::vector<Dissipator>& dissipators,
                           const Matrix& a, Matrix& out) {
  out = -imag_unit * (hamiltonian * a - a * hamiltonian);
  for (const auto& dis : dissipators) {
    const Matrix& jump = dis.op;
    const Matrix n = jump.adjoint() * jump;
    out -= dis.rate *
           (jump.adjoint() * a * jump - 0.5 * (n * a + a * n));
  }
}

}  // namespace aqec
