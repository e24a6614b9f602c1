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

#include <doctest.h>

#include <cmath>

#include "aqec/dressed.hpp"
#include "aqec/lindblad.hpp"

using namespace aqec;

namespace {

CouplerParams matched_params(double r, double g_over_delta = 0.1,
                             int n_max = 6) {
  CouplerParams p;
  p.delta1 = mhz_to_angular(1000.0);
  p.g1 = g_over_delta * p.delta1;
  p.delta2 = r * p.delta1;
  p.g2 = p.g1 * std::sqrt(r);
  p.n_max = n_max;
  return p;
}

}  // namespace

TEST_SUITE("dressed") {

TEST_CASE("uncoupled limit: flat g branch, zero bandwidth") {
  CouplerParams p;
  p.delta1 = mhz_to_angular(1000.0);
  p.delta2 = mhz_to_angular(1500.0);
  p.g1 = p.g2 = 0.0;
  p.n_max = 5;
  const auto spec = coupler_spectrum(p);
  CHECK(spec.e_g.cwiseAbs().maxCoeff() == 0.0);
  CHECK(spec.emission_g.cwiseAbs().maxCoeff() == 0.0);
  CHECK(spec.bandwidth == 0.0);
  CHECK(bandwidth(p) == 0.0);
}

TEST_CASE("leading-order dispersive shift of the g branch") {
  CouplerParams p;
  p.delta1 = mhz_to_angular(1000.0);
  p.delta2 = mhz_to_angular(1300.0);
  p.g1 = 0.05 * p.delta1;
  p.g2 = 0.0;
  p.n_max = 4;
  const auto spec = coupler_spectrum(p);
  for (int n = 1; n <= p.n_max; ++n) {
    const double expected = -double(n) * p.g1 * p.g1 / p.delta1;
    CHECK(std::abs(spec.e_g(n) - expected) < 0.05 * std::abs(expected));
  }
}

TEST_CASE("block eigenvalues satisfy the characteristic cubic") {
  // dimensionless units (delta1 = 1) so the absolute residual is meaningful
  CouplerParams p;
  p.delta1 = 1.0;
  p.delta2 = 1.4;
  p.g1 = 0.08;
  p.g2 = 0.1;
  p.n_max = 5;
  const auto spec = coupler_spectrum(p);
  for (int k = 2; k <= p.n_max + 2; ++k) {
    const int n = k - 2;
    const double c2 = -(p.delta1 + p.delta2);
    const double c1 = p.delta1 * p.delta2 - (n + 2) * p.g1 * p.g1 -
                      (n + 1) * p.g2 * p.g2;
    const double c0 = (n + 2) * p.g1 * p.g1 * p.delta2;
    for (int v = 0; v < 3; ++v) {
      const double lam = spec.block_energies[k](v);
      const double res =
          ((lam + c2) * lam + c1) * lam + c0;
      CHECK(std::abs(res) < 1e-10);
    }
  }
}

TEST_CASE("dressed vectors diagonalize the full coupler Hamiltonian") {
  const auto p = matched_params(1.3, 0.08, 4);
  const auto spec = coupler_spectrum(p);

  // assemble the bare Hamiltonian on oscillator (x) 3-level space
  const int levels = p.n_max + 3;
  const Matrix a = tensor(fock_annihilation(levels - 1), identity(3));
  Matrix qe = Matrix::Zero(3, 3), qf = Matrix::Zero(3, 3);
  qe(1, 1) = 1.0;
  qf(2, 2) = 1.0;
  Matrix ge = Matrix::Zero(3, 3), ef = Matrix::Zero(3, 3);
  ge(0, 1) = 1.0;  // |g><e|
  ef(2, 1) = 1.0;  // |f><e|
  const Matrix h =
      p.delta1 * tensor(identity(levels), qe) +
      p.delta2 * tensor(identity(levels), qf) +
      p.g1 * (a.adjoint() * tensor(identity(levels), ge) +
              a * tensor(identity(levels), Matrix(ge.adjoint()))) +
      p.g2 * (a * tensor(identity(levels), ef) +
              a.adjoint() * tensor(identity(levels), Matrix(ef.adjoint())));

  for (int n = 0; n <= 2; ++n) {
    for (int branch = 0; branch <= 2; ++branch) {
      const Vector v = dressed_vector(spec, n, branch);
      const double e = dressed_energy(spec, n, branch);
      CHECK(std::abs(v.norm() - 1.0) < 1e-12);
      CHECK((h * v - e * v).cwiseAbs().maxCoeff() < 1e-9 * p.delta1);
    }
  }
}

TEST_CASE("lambda2 closed form") {
  CouplerParams p = matched_params(1.5, 0.05);
  // g2 = 0: pure Kerr from the g branch, (n+2)^2 g1^4 / Delta1^3
  CouplerParams p0 = p;
  p0.g2 = 0.0;
  for (int n = 0; n < 4; ++n) {
    CHECK(lambda2(n, p0) ==
          doctest::Approx((n + 2.0) * (n + 2.0) * std::pow(p0.g1, 4) /
                          std::pow(p0.delta1, 3))
              .epsilon(1e-12));
  }

  // matched point: exactly linear in n
  const double second_diff =
      lambda2(2, p) - 2.0 * lambda2(1, p) + lambda2(0, p);
  CHECK(std::abs(second_diff) < 1e-12 * std::abs(lambda2(1, p)));

  // perturbation theory against exact diagonalization
  const auto spec = coupler_spectrum(p);
  for (int n = 0; n <= 2; ++n) {
    const int m = n + 2;
    const double lam1 = -double(m) * p.g1 * p.g1 / p.delta1;
    const double beyond_linear = spec.e_g(m) - lam1;
    CHECK(std::abs(beyond_linear - lambda2(n, p)) <
          0.15 * std::abs(lambda2(n, p)));
  }
}

TEST_CASE("matched detunings suppress the emission bandwidth") {
  // On the two-line spectrum the quadratic dressed shift is fully removed
  // and the suppression is two orders and more.
  for (double r : {1.5, 2.0, 2.5, 3.0, 3.5}) {
    auto matched = matched_params(r);
    matched.n_max = 2;
    CouplerParams mismatched = matched;
    mismatched.delta2 = 2.0 * matched.delta2;
    const double ratio = bandwidth(mismatched) / bandwidth(matched);
    CHECK(ratio > 100.0);
  }
  // Across many emission lines the residual cubic shift limits the gain:
  // still a large factor, but (Delta/g)^2-limited.
  for (double r : {1.5, 2.5}) {
    auto matched = matched_params(r);
    matched.n_max = 6;
    CouplerParams mismatched = matched;
    mismatched.delta2 = 2.0 * matched.delta2;
    const double ratio = bandwidth(mismatched) / bandwidth(matched);
    CHECK(ratio > 8.0);
  }
}

TEST_CASE("bandwidth scales as g1^4 in the single-coupling limit") {
  CouplerParams p;
  p.delta1 = mhz_to_angular(1000.0);
  p.delta2 = mhz_to_angular(1500.0);
  p.g2 = 0.0;
  p.n_max = 5;
  std::vector<double> gs = {0.01, 0.02, 0.04};
  std::vector<double> bs;
  for (double g : gs) {
    p.g1 = g * p.delta1;
    bs.push_back(bandwidth(p));
  }
  const double slope01 = std::log(bs[1] / bs[0]) / std::log(gs[1] / gs[0]);
  const double slope12 = std::log(bs[2] / bs[1]) / std::log(gs[2] / gs[1]);
  CHECK(std::abs(slope01 - 4.0) < 0.3);
  CHECK(std::abs(slope12 - 4.0) < 0.3);
}

TEST_CASE("bandwidth scan: minimum on the diagonal, finite everywhere") {
  const auto base = matched_params(1.0, 0.05, 5);
  const RealVector ratios = linspace(1.2, 2.6, 8);
  const auto scan = bandwidth_scan(base, ratios, ratios);

  for (int i = 0; i < ratios.size(); ++i) {
    for (int j = 0; j < ratios.size(); ++j) {
      CHECK(std::isfinite(scan.log10_bandwidth(i, j)));
      if (i != j)
        CHECK(scan.log10_bandwidth(i, i) < scan.log10_bandwidth(i, j));
    }
  }
}

TEST_CASE("bandwidth scan shape survives a global parameter rescale") {
  const auto base = matched_params(1.0, 0.05, 5);
  CouplerParams doubled = base;
  doubled.delta1 *= 2.0;
  doubled.delta2 *= 2.0;
  doubled.g1 *= std::sqrt(2.0);
  doubled.g2 *= std::sqrt(2.0);
  const RealVector ratios = linspace(1.2, 2.6, 5);
  const auto s1 = bandwidth_scan(base, ratios, ratios);
  const auto s2 = bandwidth_scan(doubled, ratios, ratios);
  // where the quadratic shift dominates (off the diagonal) B -> B / 2, so
  // the log map shifts by -log10(2); on the diagonal the residual cubic
  // term scales one power faster and the valley only deepens
  const RealMatrix shift = s2.log10_bandwidth - s1.log10_bandwidth;
  const double expected = -std::log10(2.0);
  for (int i = 0; i < ratios.size(); ++i)
    for (int j = 0; j < ratios.size(); ++j) {
      if (i == j)
        CHECK(shift(i, j) < expected + 0.1);
      else
        CHECK(std::abs(shift(i, j) - expected) < 0.1);
    }
}

TEST_CASE("3x3 smoke grid is finite") {
  const auto base = matched_params(1.0, 0.08, 4);
  const RealVector r3 = linspace(0.9, 1.1, 3);
  const auto scan = bandwidth_scan(base, r3, r3);
  CHECK(scan.log10_bandwidth.allFinite());
}

TEST_CASE("chi_e branches") {
  // r = 2 kills the e-branch dispersive shift at the matched point
  CHECK(chi_e_matched(1.0, 10.0, 2.0) == doctest::Approx(0.0));
  // r = 1.2: (r-2)/(r-1) = -4
  const double g1 = mhz_to_angular(100.0), d1 = mhz_to_angular(1000.0);
  CHECK(chi_e_matched(g1, d1, 1.2) ==
        doctest::Approx(-4.0 * g1 * g1 / d1).epsilon(1e-12));
  // the general formula agrees at the matched point
  for (double r : {1.2, 1.7, 2.5}) {
    CouplerParams p = matched_params(r);
    CHECK(chi_e(p) ==
          doctest::Approx(chi_e_matched(p.g1, p.delta1, r)).epsilon(1e-12));
  }
  CouplerParams degenerate = matched_params(1.5);
  degenerate.delta2 = degenerate.delta1;
  CHECK_THROWS_AS(chi_e(degenerate), validation_error);
}

TEST_CASE("fluxonium: harmonic limit") {
  const double ec = 0.95, el = 0.65;
  const auto spec = fluxonium_spectrum(ec, 0.0, el, 0.0, 60);
  const double omega = std::sqrt(8.0 * ec * el);
  CHECK(spec.omega_ge == doctest::Approx(omega).epsilon(1e-6));
  CHECK(spec.omega_ef == doctest::Approx(omega).epsilon(1e-6));
}

TEST_CASE("fluxonium: paper parameters") {
  const auto spec = fluxonium_spectrum(0.95, 4.75, 0.65, 0.0, 60);
  CHECK(std::abs(spec.omega_ge - 5.43) < 0.05);
  CHECK(std::abs(spec.omega_ef - 3.87) < 0.05);
  CHECK(std::abs(spec.coupling_ratio - 1.2) < 0.05);
  // parity selection at zero external flux
  CHECK(std::abs(spec.n_gf) < 1e-8 * std::abs(spec.n_ge));
}

}  // TEST_SUITE
