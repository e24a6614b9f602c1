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

// Oscillator coupled to a three-level qubit,
//   H = D1 |e><e| + D2 |f><f| + g1 (a^+ |g><e| + a |e><g|)
//     + g2 (a |f><e| + a^+ |e><f|),
// block-diagonal over the conserved excitation K = n + {g:0, e:1, f:2}.

struct CouplerParams {
  double delta1 = 0.0;  // rad/us
  double delta2 = 0.0;  // rad/us
  double g1 = 0.0;      // rad/us
  double g2 = 0.0;      // rad/us
  int n_max = 8;

  // dispersive regime: detunings at least 5x the strongest matrix element
  bool dispersive() const;
};

struct DressedSpectrum {
  CouplerParams params;
  RealVector e_g;  // E_{n,g}, n = 0..n_max
  RealVector e_e;  // E_{n,e}
  RealVector e_f;  // E_{n,f}
  // per excitation block K: eigenvectors (columns, in the bare block basis
  // {|K,g>, |K-1,e>, |K-2,f>} truncated to K+1 entries) and energies
  std::vector<Matrix> block_vectors;
  std::vector<RealVector> block_energies;
  // which eigenvector of block K belongs to each branch
  std::vector<std::array<int, 3>> branch_index;
  RealVector emission_g;  // delta_n^g = E_{n,g} - E_{n-1,g}, n = 1..n_max
  double bandwidth = 0.0;  // max - min of emission_g
  bool dispersive_ok = true;
};

// Exact per-block diagonalization with branch labeling by maximum bare-state
// overlap.  Throws when the labeling becomes ambiguous (overlap^2 < 0.5).
DressedSpectrum coupler_spectrum(const CouplerParams& params);

// Full bare-space vector (oscillator levels 0..n_max+2, qubit {g,e,f}
// fastest) of the dressed state |~n, branch| (branch 0=g, 1=e, 2=f).
Vector dressed_vector(const DressedSpectrum& spectrum, int n, int branch);
double dressed_energy(const DressedSpectrum& spectrum, int n, int branch);

// Second-order dressed-state energy of |~(n+2), g| in the SI block
// convention: lambda2 = ((n+2) g1^2/D1^2) [(n+2) g1^2/D1 - (n+1) g2^2/D2].
// Linear in n exactly at the matched point g1^2/D1 = g2^2/D2.
double lambda2(int n, const CouplerParams& params);

// Emission bandwidth B = max delta_n^g - min delta_n^g over n in [1, n_max].
double bandwidth(const CouplerParams& params);

// log10(B) over a (g2^2/g1^2) x (D2/D1) grid at fixed g1, D1; values floored
// at 1e-12 * D1 before the log.
struct BandwidthScan {
  RealVector g2sq_over_g1sq;
  RealVector d2_over_d1;
  RealMatrix log10_bandwidth;  // rows: g ratio, cols: detuning ratio
};
BandwidthScan bandwidth_scan(const CouplerParams& base,
                             const RealVector& g2sq_over_g1sq,
                             const RealVector& d2_over_d1);

// Dispersive coupling of the e branch: chi_e = 2 g1^2/D1 - g2^2/(D2 - D1).
double chi_e(const CouplerParams& params);
// At the matched point with r = g2^2/g1^2 = D2/D1:
// chi_e = (g1^2/D1) (r-2)/(r-1).
double chi_e_matched(double g1, double delta1, double r);

// Fluxonium H = 4 E_C n^2 - E_J cos(phi - phi_ext) + E_L phi^2 / 2,
// diagonalized in the harmonic basis of the quadratic part.  Energies are in
// the units of the inputs (ordinary frequencies, GHz).
struct FluxoniumSpectrum {
  RealVector levels;     // lowest eigenvalues, ground-state referenced
  double omega_ge = 0.0;
  double omega_ef = 0.0;
  double coupling_ratio = 0.0;  // r = |<f|n|e>|^2 / |<e|n|g>|^2
  cxd n_ge, n_ef, n_gf;         // charge matrix elements
};
FluxoniumSpectrum fluxonium_spectrum(double ec_ghz, double ej_ghz,
                                     double el_ghz, double phi_ext,
                                     int basis_size = 60);

}  // namespace aqec
