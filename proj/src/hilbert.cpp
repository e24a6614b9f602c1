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

#include "aqec/hilbert.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace aqec {

Matrix fock_annihilation(int cutoff) {
  require(cutoff >= 1, "fock_annihilation: cutoff must be >= 1");
  Matrix a = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Matrix fock_number(int cutoff) {
  require(cutoff >= 1, "fock_number: cutoff must be >= 1");
  Matrix n = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int k = 0; k <= cutoff; ++k) n(k, k) = double(k);
  return n;
}

Matrix identity(int dim) {
  require(dim >= 1, "identity: dim must be >= 1");
  return Matrix::Identity(dim, dim);
}

Matrix ketbra(int dim, int u, int v) {
  require(u >= 0 && u < dim && v >= 0 && v < dim, "ketbra: index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(u, v) = 1.0;
  return m;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  require(a.rows() == a.cols() && b.rows() == b.cols(),
          "tensor: operands must be square");
  const int da = int(a.rows()), db = int(b.rows());
  Matrix out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a(i, j) * b;
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  const int da = int(a.size()), db = int(b.size());
  Vector out(da * db);
  for (int i = 0; i < da; ++i) out.segment(i * db, db) = a(i) * b;
  return out;
}

Vector vectorize(const Matrix& rho) {
  require(rho.rows() == rho.cols(), "vectorize: input must be square");
  const int d = int(rho.rows());
  Vector v(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
  return v;
}

Matrix unvectorize(const Vector& v) {
  const int d = int(std::llround(std::sqrt(double(v.size()))));
  require(d * d == v.size(), "unvectorize: length is not a perfect square");
  Matrix rho(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i, j) = v(i * d + j);
  return rho;
}

Matrix liouvillian(const Matrix& H, const std::vector<Dissipator>& dissipators) {
  require(H.rows() == H.cols(), "liouvillian: H must be square");
  const int d = int(H.rows());
  const Matrix id = Matrix::Identity(d, d);
  Matrix m = -imag_unit * (tensor(H, id) - tensor(id, H.transpose()));
  for (const auto& dis : dissipators) {
    require(dis.rate >= 0.0, "liouvillian: negative dissipator rate");
    require(dis.op.rows() == d && dis.op.cols() == d,
            "liouvillian: dissipator dimension mismatch");
    const Matrix& a = dis.op;
    const Matrix n = a.adjoint() * a;
    m += dis.rate * (tensor(a, a.conjugate()) - 0.5 * tensor(n, id) -
                     0.5 * tensor(id, n.transpose()));
  }
  return m;
}

double trace_preservation_defect(const Matrix& liou) {
  const int d2 = int(liou.rows());
  const int d = int(std::llround(std::sqrt(double(d2))));
  require(d * d == d2, "trace_preservation_defect: not a superoperator");
  double worst = 0.0;
  for (int c = 0; c < d2; ++c) {
    cxd tr = 0.0;
    for (int i = 0; i < d; ++i) tr += liou(i * d + i, c);
    worst = std::max(worst, std::abs(tr));
  }
  return worst;
}

Matrix matexp_propagate(const Matrix& liou, const Matrix& rho0, double t) {
  require(t >= 0.0, "matexp_propagate: negative time");
  require(liou.rows() == rho0.rows() * rho0.cols(),
          "matexp_propagate: dimension mismatch");
  const Matrix prop = (liou * t).exp();
  return unvectorize(prop * vectorize(rho0));
}

}  // namespace aqec
