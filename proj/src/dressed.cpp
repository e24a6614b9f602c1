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

#include "aqec/dressed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "aqec/hilbert.hpp"

namespace aqec {

bool CouplerParams::dispersive() const {
  const double strongest =
      std::max(g1, g2) * std::sqrt(double(std::max(n_max, 1)));
  return std::min(delta1, delta2) >= 5.0 * strongest;
}

namespace {

// Bare block basis of excitation K: {|K,g>, |K-1,e>, |K-2,f>} (truncated).
Eigen::MatrixXd block_matrix(const CouplerParams& p, int excitation) {
  const int size = std::min(3, excitation + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  if (size >= 2) {
    h(1, 1) = p.delta1;
    h(0, 1) = h(1, 0) = std::sqrt(double(excitation)) * p.g1;
  }
  if (size >= 3) {
    h(2, 2) = p.delta2;
    h(1, 2) = h(2, 1) = std::sqrt(double(excitation - 1)) * p.g2;
  }
  return h;
}

}  // namespace

DressedSpectrum coupler_spectrum(const CouplerParams& params) {
  require(params.n_max >= 2, "coupler_spectrum: n_max must be >= 2");
  require(params.g1 >= 0.0 && params.g2 >= 0.0,
          "coupler_spectrum: couplings must be nonnegative");

  DressedSpectrum spec;
  spec.params = params;
  spec.dispersive_ok = params.dispersive();
  const int kmax = params.n_max + 2;
  spec.block_vectors.resize(kmax + 1);
  spec.block_energies.resize(kmax + 1);
  spec.branch_index.assign(kmax + 1, {-1, -1, -1});
  spec.e_g.resize(params.n_max + 1);
  spec.e_e.resize(params.n_max + 1);
  spec.e_f.resize(params.n_max + 1);

  for (int k = 0; k <= kmax; ++k) {
    const Eigen::MatrixXd h = block_matrix(params, k);
    const int size = int(h.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    spec.block_energies[k] = solver.eigenvalues();
    Eigen::MatrixXd vecs = solver.eigenvectors();
    // gauge: dominant component positive, so matrix elements vary smoothly
    // across blocks
    for (int v = 0; v < size; ++v) {
      int arg = 0;
      vecs.col(v).cwiseAbs().maxCoeff(&arg);
      if (vecs(arg, v) < 0.0) vecs.col(v) *= -1.0;
    }
    spec.block_vectors[k] = vecs.cast<cxd>();

    // branch labels by maximum overlap with the bare basis states
    std::array<bool, 3> used = {false, false, false};
    for (int bare = 0; bare < size; ++bare) {
      int best = -1;
      double best_w = -1.0;
      for (int v = 0; v < size; ++v) {
        if (used[v]) continue;
        const double w = std::norm(spec.block_vectors[k](bare, v));
        if (w > best_w) {
          best_w = w;
          best = v;
        }
      }
      if (best_w < 0.5)
        throw numerical_error(
            "coupler_spectrum: branch labeling ambiguous in excitation block " +
            std::to_string(k) +
            " (bare overlap^2 < 0.5); increase the detunings");
      used[best] = true;
      spec.branch_index[k][bare] = best;
    }

    // map block entries onto (n, branch) labels
    if (k <= params.n_max)
      spec.e_g(k) = spec.block_energies[k](spec.branch_index[k][0]);
    if (size >= 2 && k - 1 <= params.n_max)
      spec.e_e(k - 1) = spec.block_energies[k](spec.branch_index[k][1]);
    if (size >= 3 && k - 2 <= params.n_max)
      spec.e_f(k - 2) = spec.block_energies[k](spec.branch_index[k][2]);
  }

  spec.emission_g.resize(params.n_max);
  for (int n = 1; n <= params.n_max; ++n)
    spec.emission_g(n - 1) = spec.e_g(n) - spec.e_g(n - 1);
  spec.bandwidth =
      spec.emission_g.maxCoeff() - spec.emission_g.minCoeff();
  return spec;
}

Vector dressed_vector(const DressedSpectrum& spectrum, int n, int branch) {
  require(branch >= 0 && branch <= 2, "dressed_vector: branch must be 0..2");
  const int k = n + branch;
  require(n >= 0 && k < int(spectrum.block_vectors.size()),
          "dressed_vector: level out of range");
  const int osc_levels = spectrum.params.n_max + 3;
  Vector full = Vector::Zero(osc_levels * 3);
  const int col = spectrum.branch_index[k][branch];
  require(col >= 0, "dressed_vector: branch missing in this block");
  const int size = int(spectrum.block_vectors[k].rows());
  for (int bare = 0; bare < size; ++bare) {
    const int osc = k - bare;  // |k-bare, bare-th qubit level>
    full(osc * 3 + bare) = spectrum.block_vectors[k](bare, col);
  }
  return full;
}

double dressed_energy(const DressedSpectrum& spectrum, int n, int branch) {
  require(branch >= 0 && branch <= 2, "dressed_energy: branch must be 0..2");
  const int k = n + branch;
  require(n >= 0 && k < int(spectrum.block_energies.size()),
          "dressed_energy: level out of range");
  return spectrum.block_energies[k](spectrum.branch_index[k][branch]);
}

double lambda2(int n, const CouplerParams& params) {
  require(params.delta1 != 0.0 && params.delta2 != 0.0,
          "lambda2: zero detuning");
  const double s1 = (n + 2) * params.g1 * params.g1 / params.delta1;
  const double s2 = (n + 1) * params.g2 * params.g2 / params.delta2;
  return (n + 2) * params.g1 * params.g1 / (params.delta1 * params.delta1) *
         (s1 - s2);
}

double bandwidth(const CouplerParams& params) {
  return coupler_spectrum(params).bandwidth;
}

BandwidthScan bandwidth_scan(const CouplerParams& base,
                             const RealVector& g2sq_over_g1sq,
                             const RealVector& d2_over_d1) {
  require(g2sq_over_g1sq.minCoeff() > 0.0 && d2_over_d1.minCoeff() > 0.0,
          "bandwidth_scan: ratios must be positive");
  BandwidthScan scan;
  scan.g2sq_over_g1sq = g2sq_over_g1sq;
  scan.d2_over_d1 = d2_over_d1;
  scan.log10_bandwidth.resize(g2sq_over_g1sq.size(), d2_over_d1.size());
  const double floor_value = 1e-12 * base.delta1;

#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < g2sq_over_g1sq.size(); ++i) {
    for (int j = 0; j < d2_over_d1.size(); ++j) {
      CouplerParams p = base;
      p.g2 = base.g1 * std::sqrt(g2sq_over_g1sq(i));
      p.delta2 = base.delta1 * d2_over_d1(j);
      const double b = bandwidth(p);
      scan.log10_bandwidth(i, j) = std::log10(std::max(b, floor_value));
    }
  }
  return scan;
}

double chi_e(const CouplerParams& params) {
  require(std::abs(params.delta2 - params.delta1) > 1e-12 * params.delta1,
          "chi_e: pole at delta2 = delta1");
  return 2.0 * params.g1 * params.g1 / params.delta1 -
         params.g2 * params.g2 / (params.delta2 - params.delta1);
}

double chi_e_matched(double g1, double delta1, double r) {
  require(std::abs(r - 1.0) > 1e-12, "chi_e_matched: pole at r = 1");
  return g1 * g1 / delta1 * (r - 2.0) / (r - 1.0);
}

namespace {

FluxoniumSpectrum fluxonium_once(double ec, double ej, double el,
                                 double phi_ext, int basis_size) {
  const double omega = std::sqrt(8.0 * ec * el);
  const double phi_zpf = std::sqrt(4.0 * ec / omega);
  const double n_zpf = std::sqrt(omega / (16.0 * ec));

  const Matrix c = fock_annihilation(basis_size - 1);
  const Matrix phi = phi_zpf * (c + c.adjoint());
  const Matrix charge = imag_unit * n_zpf * (c.adjoint() - c);

  const Matrix exp_iphi = (imag_unit * phi).exp();
  const Matrix cos_phi = 0.5 * (exp_iphi * std::exp(-imag_unit * phi_ext) +
                                exp_iphi.adjoint() * std::exp(imag_unit * phi_ext));
  Matrix h = 4.0 * ec * charge * charge - ej * cos_phi + 0.5 * el * phi * phi;
  h = 0.5 * (h + Matrix(h.adjoint()));

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  FluxoniumSpectrum spec;
  const int nlev = std::min<int>(6, basis_size);
  spec.levels.resize(nlev);
  for (int i = 0; i < nlev; ++i)
    spec.levels(i) = solver.eigenvalues()(i) - solver.eigenvalues()(0);
  spec.omega_ge = spec.levels(1);
  spec.omega_ef = spec.levels(2) - spec.levels(1);

  const Vector g = solver.eigenvectors().col(0);
  const Vector e = solver.eigenvectors().col(1);
  const Vector f = solver.eigenvectors().col(2);
  spec.n_ge = e.dot(charge * g);
  spec.n_ef = f.dot(charge * e);
  spec.n_gf = f.dot(charge * g);
  spec.coupling_ratio = std::norm(spec.n_ef) / std::norm(spec.n_ge);
  return spec;
}

}  // namespace

FluxoniumSpectrum fluxonium_spectrum(double ec_ghz, double ej_ghz,
                                     double el_ghz, double phi_ext,
                                     int basis_size) {
  require(ec_ghz > 0.0 && el_ghz > 0.0, "fluxonium_spectrum: E_C, E_L must be > 0");
  require(ej_ghz >= 0.0, "fluxonium_spectrum: E_J must be >= 0");
  require(basis_size >= 20, "fluxonium_spectrum: basis too small");

  const auto spec = fluxonium_once(ec_ghz, ej_ghz, el_ghz, phi_ext, basis_size);
  const auto check =
      fluxonium_once(ec_ghz, ej_ghz, el_ghz, phi_ext, 2 * basis_size);
  const double shift = (spec.levels - check.levels.head(spec.levels.size()))
                           .cwiseAbs()
                           .maxCoeff();
  if (shift > 1e-3)  // 1 MHz in GHz units
    throw numerical_error(
        "fluxonium_spectrum: levels moved by " + std::to_string(shift) +
        " GHz on basis doubling; increase basis_size");
  return spec;
}

}  // namespace aqec
