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

#include "aqec/codes.hpp"
#include "aqec/objective.hpp"
#include "test_support.hpp"

using namespace aqec;

TEST_SUITE("codes") {

TEST_CASE("variant-1 radicals evaluate to the expected decimals") {
  const auto pair = sqrt3_code(1, 8);
  CHECK(pair.psi0(0).real() == doctest::Approx(0.650115).epsilon(1e-5));
  CHECK(pair.psi0(3).real() == doctest::Approx(0.759836).epsilon(1e-5));
  CHECK(pair.psi1(1).real() == doctest::Approx(0.891830).epsilon(1e-5));
  CHECK(pair.psi1(4).real() == doctest::Approx(-0.381530).epsilon(1e-4));
  CHECK(pair.psi1(6).real() == doctest::Approx(0.243048).epsilon(1e-5));
  CHECK(std::abs(pair.psi0.dot(pair.psi1)) == 0.0);  // disjoint Fock support
}

TEST_CASE("all scalar constraints hold to 1e-12 for both variants") {
  for (int variant : {1, 2}) {
    const auto residuals = sqrt3_constraint_residuals(variant);
    REQUIRE(residuals.size() == 6);
    for (double r : residuals) CHECK(std::abs(r) < 1e-12);
  }
}

TEST_CASE("mean photon number is sqrt(3) for every matrix element") {
  for (int variant : {1, 2}) {
    const int cutoff = 9;
    const auto pair = sqrt3_code(variant, cutoff);
    const Matrix n = fock_number(cutoff);
    CHECK(pair.psi0.dot(n * pair.psi0).real() ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK(pair.psi1.dot(n * pair.psi1).real() ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK(std::abs(pair.psi0.dot(n * pair.psi1)) < 1e-13);
  }
}

TEST_CASE("coupling operator satisfies the locality constraints") {
  for (int variant : {1, 2}) {
    auto [h_joint, c] =
        sqrt3_hamiltonian(variant, mhz_to_angular(10.0), true, 9);

    for (const auto& [m, n] : c.constraint_entries)
      CHECK(std::abs(c.h_tilde(m, n)) < 1e-12);
    CHECK(hamiltonian_distance(c.h_tilde, 1e-12) == 2);
    for (int m = 0; m < c.h_tilde.rows(); ++m)
      for (int n = 0; n < c.h_tilde.cols(); ++n)
        if (std::abs(m - n) > 2) CHECK(std::abs(c.h_tilde(m, n)) < 1e-12);

    CHECK(hermiticity_defect(h_joint) < 1e-12);
    const Matrix block = ge_block(h_joint);
    CHECK(block.cwiseAbs().maxCoeff() ==
          doctest::Approx(mhz_to_angular(10.0)).epsilon(1e-12));
    CHECK(hamiltonian_distance(block, 1e-10) == 2);
  }
}

TEST_CASE("variant-1 correction weights match the closed forms") {
  auto [h_joint, c] = sqrt3_hamiltonian(1, 1.0, false, 8);
  const double beta2_closed =
      -c.n1 * c.a_top / (c.n2 * c.n4 * c.beta_prime);
  const double beta1_closed =
      c.n1 * c.a4 * (1.0 - c.a_top / c.beta_prime) / (c.n2 * c.n3 * c.a1);
  CHECK(c.beta2 == doctest::Approx(beta2_closed).epsilon(1e-12));
  CHECK(c.beta1 == doctest::Approx(beta1_closed).epsilon(1e-12));
}

TEST_CASE("construction scaffolding is orthonormal") {
  for (int variant : {1, 2}) {
    auto [h_joint, c] = sqrt3_hamiltonian(variant, 1.0, true, 9);
    std::vector<Vector> states = {c.pair.psi0, c.pair.psi1, c.psi2,
                                  c.psi3,      c.psi4,      c.psi5,
                                  c.psi6};
    for (size_t p = 0; p < states.size(); ++p)
      for (size_t q = 0; q < states.size(); ++q) {
        const cxd overlap = states[p].dot(states[q]);
        if (p == q)
          CHECK(std::abs(overlap - 1.0) < 1e-12);
        else
          CHECK(std::abs(overlap) < 1e-12);
      }
  }
}

TEST_CASE("Knill-Laflamme structure") {
  const int cutoff = 9;
  const auto pair = sqrt3_code(1, cutoff);
  const auto report = kl_check(pair, {fock_annihilation(cutoff)}, 1e-10);
  INFO(report.text());
  CHECK(report.pass);
  CHECK(report.max_residual < 1e-12);
  // the a^+a block carries lambda = sqrt(3)
  bool found = false;
  for (const auto& b : report.blocks)
    if (b.label == "E1+E1") {
      CHECK(b.lambda.real() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
      found = true;
    }
  CHECK(found);

  // trivial encoding fails: <0|a^+a|0> != <1|a^+a|1>
  LogicalPair trivial;
  trivial.psi0 = Vector::Zero(cutoff + 1);
  trivial.psi1 = Vector::Zero(cutoff + 1);
  trivial.psi0(0) = 1.0;
  trivial.psi1(1) = 1.0;
  CHECK(!kl_check(trivial, {fock_annihilation(cutoff)}, 1e-10).pass);

  // error states are orthonormal
  auto [h, c] = sqrt3_hamiltonian(1, 1.0, false, cutoff);
  CHECK(std::abs(c.psi2.dot(c.psi3)) < 1e-13);
}

TEST_CASE("effective dissipator: designed fixed point and phase transport") {
  auto [h, c] = sqrt3_hamiltonian(1, 1.0, false, 9);

  // loss off: the error state relaxes onto the right codeword
  auto model = effective_dissipator_model(c, mhz_to_angular(20.0), 0.0);
  const RealVector tgrid = linspace(0.0, 0.5, 2);
  Matrix rho2 = c.psi2 * c.psi2.adjoint();
  auto traj = propagate(model, rho2, tgrid, 2000);
  const Matrix relaxed = traj.states[0].back();
  CHECK(c.pair.psi0.dot(relaxed * c.pair.psi0).real() >
        1.0 - 1e-8);

  // a superposition of error states relaxes phase-coherently
  const Vector chi = (c.psi2 + c.psi3) / std::sqrt(2.0);
  const Vector target = (c.pair.psi0 + c.pair.psi1) / std::sqrt(2.0);
  traj = propagate(model, Matrix(chi * chi.adjoint()), tgrid, 2000);
  CHECK(target.dot(traj.states[0].back() * target).real() >
        1.0 - 1e-6);
}

TEST_CASE("effective dissipator model beats break-even out to 10 us") {
  auto [h, c] = sqrt3_hamiltonian(1, 1.0, false, 9);
  const double kappa = mhz_to_angular(0.1);
  auto model = effective_dissipator_model(c, mhz_to_angular(20.0), kappa);
  const RealVector tgrid = linspace(0.0, 10.0, 11);
  const auto traj = propagate_code(model, c.pair, tgrid, 1000);
  for (int g = 1; g < tgrid.size(); ++g) {
    const double f = average_fidelity(c.pair, traj.branch_set_at(g));
    CHECK(f > break_even(tgrid(g), kappa));
  }
}

TEST_CASE("stabilization terms matter for the no-jump evolution") {
  const double scale = mhz_to_angular(10.0);
  const double kappa = mhz_to_angular(0.1);
  const double kappa_q = mhz_to_angular(20.0);
  const int cutoff = 8;
  const double t_end = 5.0;

  double fbar[2];
  for (int stab = 0; stab < 2; ++stab) {
    auto [h_joint, c] = sqrt3_hamiltonian(1, scale, stab == 1, cutoff);
    LindbladModel model;
    model.basis = {h_joint};
    model.alpha = RealVector::Ones(1);
    model.basis_support.resize(1);
    model.dissipators = {{kappa, mode_loss_op(cutoff)},
                         {kappa_q, qubit_loss_op(cutoff)}};
    LogicalPair joint_pair;
    joint_pair.psi0 = tensor(c.pair.psi0, Vector(Vector::Unit(2, 0)));
    joint_pair.psi1 = tensor(c.pair.psi1, Vector(Vector::Unit(2, 0)));
    const auto traj =
        propagate_code(model, joint_pair, linspace(0.0, t_end, 2), 5000);
    fbar[stab] = average_fidelity(joint_pair, traj.branch_set_at(1));
  }
  CHECK(fbar[1] > fbar[0]);
}

TEST_CASE("two-codeword stabilization example approaches 2/3") {
  FockStabilizationParams params;  // defaults carry the documented rates
  const auto result = fock_stabilization_example(params);
  const double final_fbar = result.curve.values(result.curve.values.size() - 1);
  CHECK(std::abs(final_fbar - 2.0 / 3.0) < 0.02);
  CHECK(result.pole0_final > 0.98);
  CHECK(result.pole1_final > 0.98);
  CHECK(std::abs(result.equator_final - 0.5) < 0.03);
  // and it beats the break-even asymptote of 1/2
  CHECK(final_fbar > result.curve.baseline(result.curve.baseline.size() - 1));
}

TEST_CASE("in-subspace detuning stabilizes a single superposition state") {
  // protecting |psi> = (|0>+|2>)/sqrt(2): the correction coupling alone
  // cannot hold the state against the no-jump drift; the detuning can.
  const int cutoff = 3;
  const int dim = 2 * (cutoff + 1);
  const double alpha = mhz_to_angular(10.0);
  const double kappa = mhz_to_angular(0.1);
  const double kappa_q = mhz_to_angular(20.0);
  const double t_end = 10.0;

  Vector psi = Vector::Zero(cutoff + 1);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(2) = 1.0 / std::sqrt(2.0);

  double overlap[2];
  for (int det = 0; det < 2; ++det) {
    Matrix h = Matrix::Zero(dim, dim);
    // |psi, e><1, g| + h.c.
    for (int n : {0, 2}) {
      h(joint_index(n, true), joint_index(1, false)) += alpha * psi(n).real();
      h(joint_index(1, false), joint_index(n, true)) += alpha * psi(n).real();
    }
    if (det == 1) {
      const double det_strength = mhz_to_angular(5.0);
      h(joint_index(0, false), joint_index(2, false)) += det_strength;
      h(joint_index(2, false), joint_index(0, false)) += det_strength;
      h(joint_index(0, true), joint_index(2, true)) += det_strength;
      h(joint_index(2, true), joint_index(0, true)) += det_strength;
    }
    LindbladModel model;
    model.basis = {h};
    model.alpha = RealVector::Ones(1);
    model.basis_support.resize(1);
    model.dissipators = {{kappa, mode_loss_op(cutoff)},
                         {kappa_q, qubit_loss_op(cutoff)}};
    Vector joint_psi = tensor(psi, Vector(Vector::Unit(2, 0)));
    const auto traj = propagate(model, Matrix(joint_psi * joint_psi.adjoint()),
                                linspace(0.0, t_end, 2), 10000);
    overlap[det] = joint_psi.dot(traj.states[0].back() * joint_psi).real();
  }
  CHECK(overlap[1] > 0.9);
  CHECK(overlap[1] > overlap[0] + 0.1);
}

TEST_CASE("wigner basics") {
  const int cutoff = 20;
  Matrix vac = Matrix::Zero(cutoff + 1, cutoff + 1);
  vac(0, 0) = 1.0;
  RealVector zero(1);
  zero << 0.0;
  CHECK(wigner(vac, zero, zero)(0, 0) ==
        doctest::Approx(1.0 / (two_pi / 2.0)).epsilon(1e-10));

  Matrix one = Matrix::Zero(cutoff + 1, cutoff + 1);
  one(1, 1) = 1.0;
  CHECK(wigner(one, zero, zero)(0, 0) ==
        doctest::Approx(-1.0 / (two_pi / 2.0)).epsilon(1e-10));
}

TEST_CASE("wigner of the code state integrates to one") {
  const int cutoff = 48;  // displaced states need (sqrt(n_top) + |alpha|)^2
  const auto pair = sqrt3_code(1, cutoff);
  const Matrix rho = code_state(pair);

  const int n = 61;
  const RealVector grid = linspace(-4.2, 4.2, n);
  double leakage = 0.0;
  const RealMatrix w = wigner(rho, grid, grid, &leakage);
  CHECK(leakage < 0.01);

  const double cell = (grid(1) - grid(0)) * (grid(1) - grid(0));
  CHECK(std::abs(w.sum() * cell - 1.0) < 1e-3);

  // an under-truncated run is flagged by the leakage indicator
  const auto small_pair = sqrt3_code(1, 20);
  double bad_leak = 0.0;
  wigner(code_state(small_pair), grid.head(4), grid.head(4), &bad_leak);
  CHECK(bad_leak > 0.01);

  // basis-phase invariance of the code state
  LogicalPair rotated = pair;
  rotated.psi1 *= std::exp(imag_unit * 0.9);
  const RealMatrix w2 = wigner(code_state(rotated), grid, grid);
  CHECK((w - w2).cwiseAbs().maxCoeff() < 1e-12);
}

}  // TEST_SUITE
