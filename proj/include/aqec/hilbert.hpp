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

#include "aqec/types.hpp"

namespace aqec {

// Operators on the truncated oscillator (+) ancilla space.
//
// Conventions used throughout the library:
//  * Joint space ordering is oscillator (x) ancilla with the ancilla index
//    fastest-varying: |n, s> -> n * dim_ancilla + s.
//  * Vectorization is row-major, |i><j| -> |i>(x)|j| at index i * dim + j,
//    so that vec(A rho B) = (A (x) B^T) vec(rho).

// One decay channel: rate beta (rad/us) and jump operator A.
struct Dissipator {
  double rate = 0.0;
  Matrix op;
};

// Ladder operator on Fock levels 0..cutoff: <n-1| a |n> = sqrt(n).
// The returned matrix is (cutoff+1) x (cutoff+1); cutoff >= 1.
Matrix fock_annihilation(int cutoff);

// Number operator a^+ a on the same truncation.
Matrix fock_number(int cutoff);

Matrix identity(int dim);

// |u><v| on an n-dimensional space.
Matrix ketbra(int dim, int u, int v);

// Kronecker product, left factor slow / right factor fast.
Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);

Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v);

// Superoperator M with d/dt vec(rho) = M vec(rho) for the master equation
// with Hamiltonian H and the given dissipator set.  Dense; intended for
// small dimensions (oracles, spectra), not for time stepping.
Matrix liouvillian(const Matrix& H, const std::vector<Dissipator>& dissipators);

// Largest |tr(unvec(M e_c))| over all basis vectors e_c; zero for a
// trace-preserving generator.
double trace_preservation_defect(const Matrix& liou);

// unvec(exp(M t) vec(rho0)).  Dense-exponential oracle for integrator tests;
// use only at small dimension.
Matrix matexp_propagate(const Matrix& liou, const Matrix& rho0, double t);

}  // namespace aqec
