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

#include "aqec/adjoint.hpp"
#include "aqec/ansatz.hpp"
#include "test_support.hpp"

using namespace aqec;

namespace {

// Seeded distance-d instance on the oscillator (x) qubit space with random
// small coefficients, paper-like rates, and a random orthonormal pair.
struct Instance {
  LindbladModel model;
  LogicalPair pair;
};

Instance seeded_instance(int cutoff, int d, unsigned long long seed,
                         double coeff_scale = 0.3) {
  auto gen = testing::rng(seed);
  const auto basis = distance_d_basis(cutoff, d);
  RealVector alpha(basis.size());
  std::normal_distribution<double> dist;
  for (int j = 0; j < alpha.size(); ++j)
    alpha(j) = coeff_scale * mhz_to_angular(10.0) * dist(gen);
  std::vector<Dissipator> ds = {{mhz_to_angular(0.1), mode_loss_op(cutoff)},
                                {mhz_to_angular(20.0), qubit_loss_op(cutoff)}};
  Instance inst;
  inst.model = to_model(basis, alpha, std::move(ds));
  inst.pair = testing::random_pair(basis.dim, gen);
  return inst;
}

double objective_from_branches(const LogicalPair& pair, const BranchSet& b,
                               bool modified) {
  return modified ? modified_average_fidelity(pair, b)
                  : average_fidelity(pair, b);
}

}  // namespace

TEST_SUITE("adjoint") {

TEST_CASE("terminal adjoints carry the 1/3, 1/6, 1/3 weight structure") {
  auto gen = testing::rng(61);
  const auto pair = testing::random_pair(5, gen);
  const BranchSet init = initial_branches(pair);
  const auto terminal = terminal_adjoints(pair, init, /*modified=*/false);
  CHECK((terminal[0] - (init.r00 / 3.0 + init.r11 / 6.0)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK((terminal[1] - (init.r00 / 6.0 + init.r11 / 3.0)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK((terminal[2] - init.r10 / 3.0).cwiseAbs().maxCoeff() < 1e-14);

  // identity channel has z = 1/3 > 0, so the modified adjoint coincides
  const auto modified = terminal_adjoints(pair, init, /*modified=*/true);
  for (int b = 0; b < 3; ++b)
    CHECK((terminal[b] - modified[b]).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("terminal adjoints match finite differences of the objective") {
  auto gen = testing::rng(62);
  const int dim = 4;
  const auto pair = testing::random_pair(dim, gen);
  // generic final states (any linear image of valid branches works)
  BranchSet finals;
  finals.r00 = testing::random_hermitian(dim, gen) * 0.2;
  finals.r00 += Matrix::Identity(dim, dim) * 0.5;
  finals.r11 = testing::random_hermitian(dim, gen) * 0.2;
  finals.r11 += Matrix::Identity(dim, dim) * 0.5;
  finals.r10 = testing::random_matrix(dim, gen) * 0.3;

  for (bool modified : {false, true}) {
    const auto terminal = terminal_adjoints(pair, finals, modified);
    const double delta = 1e-6;
    const Matrix* blocks[3] = {&finals.r00, &finals.r11, &finals.r10};
    for (int b = 0; b < 3; ++b) {
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          for (int part = 0; part < 2; ++part) {
            BranchSet pert = finals;
            Matrix* target = b == 0 ? &pert.r00 : (b == 1 ? &pert.r11 : &pert.r10);
            const cxd eps = part == 0 ? cxd(delta, 0.0) : cxd(0.0, delta);
            (*target)(i, j) = (*blocks[b])(i, j) + eps;
            const double fp = objective_from_branches(pair, pert, modified);
            (*target)(i, j) = (*blocks[b])(i, j) - eps;
            const double fm = objective_from_branches(pair, pert, modified);
            const double fd = (fp - fm) / (2.0 * delta);
            const double adj = part == 0 ? terminal[b](i, j).real()
                                         : terminal[b](i, j).imag();
            CHECK(std::abs(adj - fd) <=
                  1e-7 * std::max(1.0, std::abs(fd)));
          }
        }
      }
    }
  }
}

TEST_CASE("zero terminal adjoints give exactly zero gradients") {
  const auto inst = seeded_instance(2, 1, 63);
  const auto traj = propagate_code(inst.model, inst.pair,
                                   linspace(0.0, 0.2, 2), 40, true);
  std::array<Matrix, 3> zero;
  for (auto& z : zero) z = Matrix::Zero(inst.model.dim(), inst.model.dim());
  const auto bundle = backpropagate(inst.model, traj, zero);
  CHECK(bundle.grad_alpha.cwiseAbs().maxCoeff() == 0.0);
  CHECK(bundle.grad_beta.cwiseAbs().maxCoeff() == 0.0);
  for (const auto& a : bundle.a0) CHECK(a.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("backpropagation is linear in the terminal matrices") {
  const auto inst = seeded_instance(2, 2, 64);
  const auto traj = propagate_code(inst.model, inst.pair,
                                   linspace(0.0, 0.3, 2), 60, true);
  auto gen = testing::rng(65);
  std::array<Matrix, 3> ta, tb, tsum;
  for (int b = 0; b < 3; ++b) {
    ta[b] = testing::random_matrix(inst.model.dim(), gen);
    tb[b] = testing::random_matrix(inst.model.dim(), gen);
    tsum[b] = 0.3 * ta[b] + 0.7 * tb[b];
  }
  const auto ga = backpropagate(inst.model, traj, ta);
  const auto gb = backpropagate(inst.model, traj, tb);
  const auto gs = backpropagate(inst.model, traj, tsum);
  CHECK((gs.grad_alpha - (0.3 * ga.grad_alpha + 0.7 * gb.grad_alpha))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  for (int b = 0; b < 3; ++b)
    CHECK((gs.a0[b] - (0.3 * ga.a0[b] + 0.7 * gb.a0[b])).cwiseAbs().maxCoeff() <
          1e-10);
}

TEST_CASE("backward pass realizes exp(M^+ T): duality with the oracle") {
  auto gen = testing::rng(66);
  for (int dim : {4, 6}) {
    const auto model = testing::random_model(dim, gen, 2, 0.8, 0.4);
    const Matrix liou = liouvillian(model.hamiltonian(), model.dissipators);
    const double T = 0.8;
    const Matrix a_term = testing::random_matrix(dim, gen);
    const Matrix drho0 = testing::random_matrix(dim, gen);

    // <a(T), exp(MT) drho(0)>
    const Matrix drho_T = matexp_propagate(liou, drho0, T);
    const double lhs =
        (a_term.conjugate().cwiseProduct(drho_T)).sum().real();
    // <a(0), drho(0)> with a(0) from the backward integration
    const Matrix a0 = adjoint_backward(model, a_term, T, 400);
    const double rhs = (a0.conjugate().cwiseProduct(drho0)).sum().real();
    CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("missing step storage is a contract error") {
  const auto inst = seeded_instance(2, 1, 67);
  const auto traj =
      propagate_code(inst.model, inst.pair, linspace(0.0, 0.2, 2), 10, false);
  std::array<Matrix, 3> zero;
  for (auto& z : zero) z = Matrix::Zero(inst.model.dim(), inst.model.dim());
  CHECK_THROWS_AS(backpropagate(inst.model, traj, zero), validation_error);
}

TEST_CASE("dissipator-rate gradient matches the break-even derivative") {
  // trivial encoding on a bare decaying mode: F(T) = break_even(T, kappa)
  const double kappa = two_pi * 0.1;
  const double T = 0.8;
  LindbladModel model;
  model.basis = {Matrix::Zero(2, 2)};
  model.alpha = RealVector::Ones(1);
  model.basis_support.resize(1);  // empty support: H really is zero
  model.dissipators = {{kappa, fock_annihilation(1)}};

  LogicalPair pair;
  pair.psi0 = Vector::Zero(2);
  pair.psi1 = Vector::Zero(2);
  pair.psi0(0) = 1.0;
  pair.psi1(1) = 1.0;

  const auto grads =
      fidelity_and_gradients(model, pair, T, 1600, /*modified=*/false);
  CHECK(grads.fidelity == doctest::Approx(break_even(T, kappa)).epsilon(1e-9));
  const double analytic =
      (-T * std::exp(-kappa * T) - T * std::exp(-kappa * T / 2.0)) / 6.0;
  CHECK(std::abs(grads.grad_beta(0) - analytic) < 1e-6);
}

TEST_CASE("gradcheck passes on a seeded dim-6 distance-2 instance") {
  const auto inst = seeded_instance(2, 2, 68);
  const auto report =
      gradcheck(inst.model, inst.pair, 0.4, 800, /*modified=*/true);
  INFO(report.table());
  CHECK(report.pass);
  CHECK(!report.degenerate);
  CHECK(report.max_rel_error < 1e-5);
}

TEST_CASE("plain-objective gradcheck also passes") {
  const auto inst = seeded_instance(2, 1, 69);
  const auto report =
      gradcheck(inst.model, inst.pair, 0.3, 600, /*modified=*/false);
  INFO(report.table());
  CHECK(report.pass);
}

TEST_CASE("doubling the RK4 steps shrinks the adjoint-vs-FD mismatch") {
  const auto inst = seeded_instance(2, 2, 70, 1.2);
  const auto coarse = gradcheck(inst.model, inst.pair, 0.4, 12, true);
  const auto fine = gradcheck(inst.model, inst.pair, 0.4, 24, true);
  CHECK(fine.max_rel_error < coarse.max_rel_error);
}

TEST_CASE("identity channel is stationary under code-space rotations") {
  auto gen = testing::rng(71);
  const int dim = 6;
  LindbladModel model;
  model.basis = {Matrix::Zero(dim, dim)};
  model.alpha = RealVector::Ones(1);
  model.basis_support.resize(1);
  const auto pair = testing::random_pair(dim, gen);

  const auto grads = fidelity_and_gradients(model, pair, 0.5, 10, true);
  CHECK(grads.fidelity == doctest::Approx(1.0).epsilon(1e-12));

  // directional derivatives along orthonormality-preserving directions,
  // dL = Re(g^+ d)
  auto dir_deriv = [&](const Vector& d0, const Vector& d1) {
    return grads.grad_psi0.dot(d0).real() + grads.grad_psi1.dot(d1).real();
  };
  const Vector zero = Vector::Zero(dim);
  // global phases
  CHECK(std::abs(dir_deriv(imag_unit * pair.psi0, zero)) < 1e-11);
  CHECK(std::abs(dir_deriv(zero, imag_unit * pair.psi1)) < 1e-11);
  // real and imaginary rotations between the two basis vectors
  CHECK(std::abs(dir_deriv(pair.psi1, -pair.psi0)) < 1e-11);
  CHECK(std::abs(dir_deriv(imag_unit * pair.psi1, imag_unit * pair.psi0)) <
        1e-11);
}

}  // TEST_SUITE
