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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace aqec {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<cxd>;

inline constexpr double two_pi = 6.283185307179586476925286766559;
inline constexpr cxd imag_unit{0.0, 1.0};

// All rates and Hamiltonian coefficients are stored internally as angular
// frequencies in rad/us.  Configuration files and CLI flags quote ordinary
// frequencies in MHz; conversion happens exactly once, on ingestion.
inline double mhz_to_angular(double f_mhz) { return two_pi * f_mhz; }
inline double angular_to_mhz(double omega) { return omega / two_pi; }

// Raised on precondition violations (bad arguments, malformed configs).
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when an integration diverges or a solve fails to converge.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
  return m.rows() == m.cols() && hermiticity_defect(m) < tol;
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw validation_error(what);
}

}  // namespace aqec
