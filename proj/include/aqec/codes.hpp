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
#include <vector>

#include "aqec/ansatz.hpp"
#include "aqec/lindblad.hpp"

namespace aqec {

// Analytic single-photon-loss code with mean codeword photon number sqrt(3),
// protected by a distance-2 coupling operator.  Variant 1 places |psi1> on
// Fock levels {1,4,6}; variant 2 on {1,4,7}.
//
// The construction carries the full Fock-space scaffolding: the error
// states psi2 ~ a|psi0>, psi3 ~ a|psi1>, the orthogonal-complement basis
// psi4/psi5/psi6 chosen so the locality constraints become a solvable
// two-parameter linear system, and the resulting coupling operator
//   H~ = |psi2><psi0| + |psi3><psi1| + beta1 |psi6><psi4| + beta2 |psi6><psi5|.
struct Sqrt3Construction {
  int variant = 1;
  int cutoff = 0;
  LogicalPair pair;  // single-mode logical states
  Vector psi2, psi3, psi4, psi5, psi6;
  double a0 = 0, a3 = 0, a1 = 0, a4 = 0, a_top = 0;
  double beta = 0, beta_prime = 0;
  double beta1 = 0, beta2 = 0;
  double n1 = 0, n2 = 0, n3 = 0, n4 = 0;  // normalizations of psi3..psi6
  Matrix h_tilde;                          // unscaled, stabilization included
  std::vector<Matrix> stabilization_terms;
  // row/column indices of the four nontrivial locality constraints
  std::array<std::pair<int, int>, 4> constraint_entries;
};

// Logical states only (cutoff >= 7).
LogicalPair sqrt3_code(int variant, int cutoff);

// Scalar constraint residuals of the construction (normalizations,
// error-state orthogonality, Knill-Laflamme balance, and the two
// beta-defining equations); all vanish for a valid code.
std::vector<double> sqrt3_constraint_residuals(int variant);

// Full AQEC Hamiltonian on the joint space,
//   H = s H~^+ (x) |e><g| + s H~ (x) |g><e|,
// rescaled so the largest coupling magnitude equals `scale` (rad/us).
// include_stabilization adds the in-band detuning-generating terms that
// protect the code against the no-jump drift.
std::pair<Matrix, Sqrt3Construction> sqrt3_hamiltonian(
    int variant, double scale, bool include_stabilization, int cutoff);

// Knill-Laflamme structure report for error set {I, ops...}:
// <psi_i| E^+ E' |psi_j> = lambda_EE' delta_ij with lambda fitted.
struct KLReport {
  struct Block {
    std::string label;
    cxd lambda;
    double residual;  // max|<psi_i|E^+E'|psi_j> - lambda delta_ij|
  };
  std::vector<Block> blocks;
  double max_residual = 0.0;
  bool pass = false;
  std::string text() const;
};
KLReport kl_check(const LogicalPair& pair, const std::vector<Matrix>& error_ops,
                  double tol = 1e-8);

// Reduced single-mode model after adiabatic elimination of the ancilla:
// jump operator |psi0><psi2| + |psi1><psi3| at correction_rate plus photon
// loss at kappa (either may be zero).
LindbladModel effective_dissipator_model(const Sqrt3Construction& construction,
                                         double correction_rate, double kappa);

// The two-codeword {|0>, |2>} stabilization example: a single distance-1
// swap coupling |2,e><1,g| plus ancilla decay pins both poles of the Bloch
// sphere while superpositions dephase, so F-bar approaches 2/3 (break-even
// decays to 1/2).  code_detuning_mhz optionally adds the in-subspace
// detuning term (|0><2| + |2><0|) studied alongside it.
struct FockStabilizationParams {
  double drive_mhz = 10.0;    // swap coupling alpha / 2pi
  double kappa_mhz = 0.01;    // photon loss
  double kappa_q_mhz = 20.0;  // ancilla decay
  double code_detuning_mhz = 0.0;
  double t_max_us = 100.0;
  int points = 51;
  int cutoff = 4;
  int steps_per_unit = 1000;
};
struct FockStabilizationResult {
  FidelityCurve curve;
  double pole0_final = 0.0;    // F_{theta=0}(t_max)
  double pole1_final = 0.0;    // F_{theta=pi}(t_max)
  double equator_final = 0.0;  // F_{theta=pi/2, phi=0}(t_max)
};
FockStabilizationResult fock_stabilization_example(
    const FockStabilizationParams& params = {});

// Wigner function on the (x, p) grid with x = <a + a^+>/sqrt(2),
// p = i<a^+ - a>/sqrt(2), via the displaced-parity form
// W = (1/pi) tr[rho D Pi D^+]; normalized so that integral W dx dp = 1.
// leakage (optional out) reports the worst trace loss of the truncated
// displacement over the grid; above ~1% the cutoff is too small for the
// grid extent.
RealMatrix wigner(const Matrix& rho, const RealVector& xgrid,
                  const RealVector& pgrid, double* leakage = nullptr);

// rho_code = (|psi0><psi0| + |psi1><psi1|)/2.
Matrix code_state(const LogicalPair& pair);

}  // namespace aqec
