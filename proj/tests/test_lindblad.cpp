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

#include "aqec/lindblad.hpp"
#include "test_support.hpp"

using namespace aqec;

namespace {

LindbladModel plain_model(const Matrix& h, std::vector<Dissipator> ds) {
  LindbladModel m;
  m.basis = {h};
  m.alpha = RealVector::Ones(1);
  m.dissipators = std::move(ds);
  return m;
}

}  // namespace

TEST_SUITE("lindblad") {

TEST_CASE("identity channel leaves any state invariant") {
  auto gen = testing::rng(31);
  const Matrix rho0 = testing::random_matrix(4, gen);
  const auto model = plain_model(Matrix::Zero(4, 4), {});
  const auto traj = propagate(model, rho0, linspace(0.0, 2.0, 5), 10);
  for (const auto& s : traj.states[0])
    CHECK((s - rho0).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("closed-form photon loss decay") {
  const double kappa = 0.6283;  // rad/us
  const auto model = plain_model(Matrix::Zero(2, 2),
                                 {{kappa, fock_annihilation(1)}});
  Matrix rho0 = Matrix::Zero(2, 2);
  rho0(1, 1) = 1.0;
  const auto traj = propagate(model, rho0, linspace(0.0, 1.0, 11), 20);
  const double p1 = traj.states[0].back()(1, 1).real();
  CHECK(p1 == doctest::Approx(std::exp(-kappa)).epsilon(1e-9));
  CHECK(p1 == doctest::Approx(0.53340).epsilon(1e-4));
}

TEST_CASE("random models match the dense exponential oracle") {
  auto gen = testing::rng(32);
  for (int trial = 0; trial < 4; ++trial) {
    const auto model = testing::random_model(6, gen, 2, 0.6, 0.3);
    const Matrix liou = liouvillian(model.hamiltonian(), model.dissipators);
    const Matrix rho0 = testing::random_hermitian(6, gen);
    const auto traj = propagate(model, rho0, linspace(0.0, 1.0, 2), 100);
    const Matrix oracle = matexp_propagate(liou, rho0, 1.0);
    CHECK((traj.states[0].back() - oracle).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("RK4 order: halving the step cuts the error ~16x") {
  auto gen = testing::rng(33);
  const auto model = testing::random_model(4, gen, 2, 1.0, 0.5);
  const Matrix liou = liouvillian(model.hamiltonian(), model.dissipators);
  const Matrix rho0 = testing::random_hermitian(4, gen);
  const Matrix oracle = matexp_propagate(liou, rho0, 1.0);
  const RealVector tgrid = linspace(0.0, 1.0, 2);

  const Matrix coarse = propagate(model, rho0, tgrid, 8).states[0].back();
  const Matrix fine = propagate(model, rho0, tgrid, 16).states[0].back();
  const double e1 = (coarse - oracle).cwiseAbs().maxCoeff();
  const double e2 = (fine - oracle).cwiseAbs().maxCoeff();
  const double factor = e1 / e2;
  CHECK(factor > 8.0);
  CHECK(factor < 32.0);
}

TEST_CASE("generator linearity licenses the coherence branch") {
  auto gen = testing::rng(34);
  const auto model = testing::random_model(5, gen, 2);
  const Matrix r1 = testing::random_matrix(5, gen);
  const Matrix r2 = testing::random_matrix(5, gen);
  const cxd a(0.7, -0.2), b(-0.4, 1.1);
  const RealVector tgrid = linspace(0.0, 0.5, 2);

  const Matrix combined =
      propagate(model, a * r1 + b * r2, tgrid, 50).states[0].back();
  const Matrix split = a * propagate(model, r1, tgrid, 50).states[0].back() +
                       b * propagate(model, r2, tgrid, 50).states[0].back();
  CHECK((combined - split).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Hermiticity transport") {
  auto gen = testing::rng(35);
  const auto model = testing::random_model(5, gen, 2);
  const Matrix rho = testing::random_matrix(5, gen);
  const RealVector tgrid = linspace(0.0, 0.4, 2);
  const Matrix fwd = propagate(model, rho, tgrid, 40).states[0].back();
  const Matrix dag =
      propagate(model, rho.adjoint(), tgrid, 40).states[0].back();
  CHECK((dag - fwd.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("constant time-dependent Hamiltonian reduces to the static path") {
  auto gen = testing::rng(36);
  const auto model = testing::random_model(4, gen, 1);
  const Matrix h = model.hamiltonian();
  const Matrix rho0 = testing::random_hermitian(4, gen);
  const RealVector tgrid = linspace(0.0, 1.0, 6);

  const auto a = propagate(model, rho0, tgrid, 25);
  const auto b = propagate_time_dependent([&](double) { return h; },
                                          model.dissipators, rho0, tgrid, 25);
  for (int g = 0; g < tgrid.size(); ++g)
    CHECK((a.states[0][g] - b.states[0][g]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("resonant Rabi drive oscillates at 2*pi/Omega") {
  const double omega0 = two_pi * 50.0;  // rad/us
  const double rabi = two_pi * 1.0;
  Matrix sx = Matrix::Zero(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  Matrix proj_e = Matrix::Zero(2, 2);
  proj_e(1, 1) = 1.0;
  auto h_of_t = [&](double t) -> Matrix {
    return omega0 * proj_e + rabi * std::cos(omega0 * t) * sx;
  };
  Matrix rho0 = Matrix::Zero(2, 2);
  rho0(0, 0) = 1.0;

  const double period = two_pi / rabi;  // 1 us
  const int npts = 401;
  const auto traj = propagate_time_dependent(h_of_t, {}, rho0,
                                             linspace(0.0, 1.2, npts), 40);
  // locate the first full return of the ground population
  int best = 100;
  double best_p = -1.0;
  for (int g = 100; g < npts; ++g) {
    const double p = traj.states[0][g](0, 0).real();
    if (p > best_p) {
      best_p = p;
      best = g;
    }
  }
  const double t_return = traj.tgrid(best);
  CHECK(std::abs(t_return - period) / period < 0.01);
  CHECK(best_p > 0.99);
}

TEST_CASE("chirped drive preserves the trace") {
  Matrix sx = Matrix::Zero(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  auto h_of_t = [&](double t) -> Matrix {
    return two_pi * 2.0 * std::cos(two_pi * (5.0 + 40.0 * t) * t) * sx;
  };
  Matrix rho0 = Matrix::Zero(2, 2);
  rho0(0, 0) = 0.8;
  rho0(1, 1) = 0.2;
  const auto traj = propagate_time_dependent(
      h_of_t, {{0.5, fock_annihilation(1)}}, rho0, linspace(0.0, 1.0, 11), 200);
  for (const auto& s : traj.states[0])
    CHECK(std::abs(s.trace().real() - 1.0) < 1e-8);
}

TEST_CASE("non-Hermitian H(t) is reported") {
  auto h_of_t = [&](double) -> Matrix {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 1) = 1.0;  // not Hermitian
    return h;
  };
  const Matrix rho0 = Matrix::Identity(2, 2) * 0.5;
  CHECK_THROWS_AS(
      propagate_time_dependent(h_of_t, {}, rho0, linspace(0.0, 1.0, 3), 5),
      numerical_error);
}

TEST_CASE("code propagation: identity channel and coherence decay") {
  const int cutoff = 2;
  const double kappa = two_pi * 0.1;
  LogicalPair pair;
  pair.psi0 = Vector::Zero(2 * (cutoff + 1));
  pair.psi1 = Vector::Zero(2 * (cutoff + 1));
  pair.psi0(0) = 1.0;  // |0, g>
  pair.psi1(2) = 1.0;  // |1, g>

  const auto idle = plain_model(Matrix::Zero(2 * (cutoff + 1), 2 * (cutoff + 1)), {});
  const auto traj0 = propagate_code(idle, pair, linspace(0.0, 1.0, 3), 10);
  const auto init = initial_branches(pair);
  CHECK((traj0.states[0].back() - init.r00).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((traj0.states[1].back() - init.r11).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((traj0.states[2].back() - init.r10).cwiseAbs().maxCoeff() < 1e-14);

  const auto lossy = plain_model(Matrix::Zero(2 * (cutoff + 1), 2 * (cutoff + 1)),
                                 {{kappa, mode_loss_op(cutoff)}});
  const double t_end = 1.7;
  const auto traj = propagate_code(lossy, pair, linspace(0.0, t_end, 2), 200);
  const cxd coh = traj.states[2].back()(2, 0);
  CHECK(std::abs(coh - std::exp(-kappa * t_end / 2.0)) < 1e-8);
}

TEST_CASE("code branches match three separate propagations bit for bit") {
  auto gen = testing::rng(37);
  const int dim = 6;
  auto model = testing::random_model(dim, gen, 2);
  const auto pair = testing::random_pair(dim, gen);
  const RealVector tgrid = linspace(0.0, 0.5, 3);

  const auto code_traj = propagate_code(model, pair, tgrid, 20);
  const auto init = initial_branches(pair);
  const Matrix starts[3] = {init.r00, init.r11, init.r10};
  for (int b = 0; b < 3; ++b) {
    const auto single = propagate(model, starts[b], tgrid, 20);
    for (int g = 0; g < tgrid.size(); ++g) {
      CHECK((single.states[0][g] - code_traj.states[b][g]).cwiseAbs().maxCoeff() ==
            0.0);
    }
  }
}

TEST_CASE("non-orthonormal pair is rejected") {
  LogicalPair pair;
  pair.psi0 = Vector::Zero(4);
  pair.psi1 = Vector::Zero(4);
  pair.psi0(0) = 1.0;
  pair.psi1(0) = 0.5;
  pair.psi1(1) = std::sqrt(0.75);
  const auto model = plain_model(Matrix::Zero(4, 4), {});
  CHECK_THROWS_AS(propagate_code(model, pair, linspace(0.0, 1.0, 2), 5),
                  validation_error);
}

TEST_CASE("divergence names the time") {
  // absurd rate with huge steps: the unstable RK4 iteration overflows
  const auto model = plain_model(Matrix::Zero(2, 2),
                                 {{1e6, fock_annihilation(1)}});
  Matrix rho0 = Matrix::Zero(2, 2);
  rho0(1, 1) = 1.0;
  CHECK_THROWS_WITH_AS(propagate(model, rho0, linspace(0.0, 100.0, 2), 20),
                       doctest::Contains("diverged"), numerical_error);
}

}  // TEST_SUITE
