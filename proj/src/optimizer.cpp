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

#include "aqec/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace aqec {

void adam_step(RealVector& params, const RealVector& grads, AdamState& state,
               double lr) {
  require(params.size() == grads.size(), "adam_step: shape mismatch");
  if (!grads.allFinite()) {
    int bad = -1;
    for (int i = 0; i < grads.size() && bad < 0; ++i)
      if (!std::isfinite(grads(i))) bad = i;
    throw numerical_error("adam_step: non-finite gradient at component " +
                          std::to_string(bad));
  }
  if (state.m.size() != params.size()) {
    state.m = RealVector::Zero(params.size());
    state.v = RealVector::Zero(params.size());
    state.step = 0;
  }
  state.step += 1;
  state.m = state.beta1 * state.m + (1.0 - state.beta1) * grads;
  state.v = state.beta2 * state.v +
            (1.0 - state.beta2) * grads.cwiseProduct(grads);
  const double bc1 = 1.0 - std::pow(state.beta1, double(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, double(state.step));
  for (int i = 0; i < params.size(); ++i) {
    const double mhat = state.m(i) / bc1;
    const double vhat = state.v(i) / bc2;
    params(i) -= lr * mhat / (std::sqrt(vhat) + state.epsilon);
  }
}

LogicalPair reorthogonalize(LogicalPair pair) {
  const double n0 = pair.psi0.norm();
  require(n0 > 1e-12, "reorthogonalize: psi0 vanished");
  const cxd overlap = pair.psi0.dot(pair.psi1) / (n0 * n0);
  pair.psi1 -= overlap * pair.psi0;
  const double n1 = pair.psi1.norm();
  if (n1 < 1e-10)
    throw numerical_error(
        "reorthogonalize: logical states collapsed onto each other");
  pair.psi0 /= n0;
  pair.psi1 /= n1;
  return pair;
}

void SearchConfig::validate() const {
  require(cutoff >= 1, "SearchConfig: cutoff must be >= 1");
  require(all_to_all || (distance >= 1 && distance <= cutoff),
          "SearchConfig: need 1 <= distance <= cutoff");
  require(kappa_mhz >= 0.0 && kappa_q_mhz >= 0.0,
          "SearchConfig: rates must be nonnegative");
  require(t_final_us > 0.0, "SearchConfig: T must be positive");
  require(bound_mhz > 0.0, "SearchConfig: bound must be positive");
  require(lr > 0.0 && lr_final > 0.0 && lr_final <= lr,
          "SearchConfig: need 0 < lr_final <= lr");
  require(iters >= 0, "SearchConfig: iters must be >= 0");
  require(steps_per_unit >= 1, "SearchConfig: steps_per_unit must be >= 1");
}

int SearchConfig::total_steps() const {
  return std::max(1, int(std::lround(t_final_us * steps_per_unit)));
}

namespace {

// Deterministic standard normals (Box-Muller over the raw engine), so the
// initialization does not depend on the standard library's distribution
// internals.
class Gaussian {
 public:
  explicit Gaussian(unsigned long long seed) : gen_(seed) {}
  double operator()() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 1e-300);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(two_pi * u2);
    have_ = true;
    return r * std::cos(two_pi * u2);
  }
  double uniform() {  // [0, 1)
    return double(gen_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_ = false;
};

struct PackedParams {
  RealVector u;  // alpha / bound, clipped to [-1, 1]
  Vector psi0;
  Vector psi1;
};

RealVector pack(const PackedParams& p) {
  const int nu = int(p.u.size()), d = int(p.psi0.size());
  RealVector out(nu + 4 * d);
  out.head(nu) = p.u;
  for (int n = 0; n < d; ++n) {
    out(nu + 0 * d + n) = p.psi0(n).real();
    out(nu + 1 * d + n) = p.psi0(n).imag();
    out(nu + 2 * d + n) = p.psi1(n).real();
    out(nu + 3 * d + n) = p.psi1(n).imag();
  }
  return out;
}

void unpack(const RealVector& flat, PackedParams& p) {
  const int nu = int(p.u.size()), d = int(p.psi0.size());
  p.u = flat.head(nu);
  for (int n = 0; n < d; ++n) {
    p.psi0(n) = cxd(flat(nu + 0 * d + n), flat(nu + 1 * d + n));
    p.psi1(n) = cxd(flat(nu + 2 * d + n), flat(nu + 3 * d + n));
  }
}

}  // namespace

std::pair<LogicalPair, RealVector> seeded_initialization(
    const SearchConfig& config, int nterms) {
  Gaussian gauss(config.seed);
  const int dim = 2 * (config.cutoff + 1);
  LogicalPair pair;
  pair.psi0.resize(dim);
  pair.psi1.resize(dim);
  for (int n = 0; n < dim; ++n) pair.psi0(n) = cxd(gauss(), gauss());
  for (int n = 0; n < dim; ++n) pair.psi1(n) = cxd(gauss(), gauss());
  pair = reorthogonalize(pair);

  RealVector u(nterms);
  for (int j = 0; j < nterms; ++j) u(j) = 0.2 * gauss.uniform() - 0.1;
  return {pair, u};
}

SearchResult train(const SearchConfig& config, const TrainCallback& on_checkpoint) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  const HamiltonianBasis basis =
      config.all_to_all
          ? all_to_all_basis(config.cutoff, config.include_diagonals)
          : distance_d_basis(config.cutoff, config.distance);
  const double bound = config.bound();
  const std::vector<Dissipator> dissipators = {
      {mhz_to_angular(config.kappa_mhz), mode_loss_op(config.cutoff)},
      {mhz_to_angular(config.kappa_q_mhz), qubit_loss_op(config.cutoff)}};

  PackedParams params;
  {
    auto [pair, u] = seeded_initialization(config, basis.size());
    params.u = u;
    params.psi0 = pair.psi0;
    params.psi1 = pair.psi1;
  }

  const int total_steps = config.total_steps();
  const int dim = basis.dim;

  SearchResult result;
  result.config = config;
  result.labels.reserve(basis.size());
  for (const auto& t : basis.terms) result.labels.push_back(t.label);

  auto evaluate = [&](const PackedParams& p) {
    LindbladModel model = to_model(basis, bound * p.u, dissipators);
    const LogicalPair pair{p.psi0, p.psi1};
    return fidelity_and_gradients(model, pair, config.t_final_us, total_steps,
                                  config.modified_objective);
  };

  double best_fidelity = -1.0;
  PackedParams best = params;
  AdamState adam;
  RealVector flat = pack(params);
  result.fidelity_history.reserve(config.iters);

  for (int iter = 0; iter < config.iters; ++iter) {
    const FidelityGradients eval = evaluate(params);
    result.fidelity_history.push_back(eval.fidelity);
    if (eval.fidelity > best_fidelity) {
      best_fidelity = eval.fidelity;
      best = params;
    }

    // checkpoints carry the iterate that produced the recorded objective
    if (on_checkpoint && config.checkpoint_every > 0 &&
        (iter + 1) % config.checkpoint_every == 0) {
      SearchResult snap = result;
      snap.pair = LogicalPair{params.psi0, params.psi1};
      snap.alpha = bound * params.u;
      snap.final_fidelity = eval.fidelity;
      snap.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      on_checkpoint(iter + 1, snap);
    }

    // minimize 1 - F: descend along -grad F; u-block chain rule d/du = bound * d/dalpha
    RealVector grad(flat.size());
    const int nu = int(params.u.size());
    grad.head(nu) = -bound * eval.grad_alpha;
    for (int n = 0; n < dim; ++n) {
      grad(nu + 0 * dim + n) = -eval.grad_psi0(n).real();
      grad(nu + 1 * dim + n) = -eval.grad_psi0(n).imag();
      grad(nu + 2 * dim + n) = -eval.grad_psi1(n).real();
      grad(nu + 3 * dim + n) = -eval.grad_psi1(n).imag();
    }

    const double lr =
        config.iters > 1
            ? config.lr + (config.lr_final - config.lr) * double(iter) /
                              double(config.iters - 1)
            : config.lr;
    adam_step(flat, grad, adam, lr);
    unpack(flat, params);

    params.u = project_bounds(params.u, 1.0);
    LogicalPair pair = reorthogonalize(LogicalPair{params.psi0, params.psi1});
    params.psi0 = pair.psi0;
    params.psi1 = pair.psi1;
    flat = pack(params);
  }

  // evaluate the final iterate; return the best of everything seen
  const FidelityGradients last = evaluate(params);
  if (last.fidelity > best_fidelity) {
    best_fidelity = last.fidelity;
    best = params;
  }
  if (config.iters == 0) {
    best = params;
    best_fidelity = last.fidelity;
  }

  result.pair = LogicalPair{best.psi0, best.psi1};
  result.alpha = bound * best.u;
  result.final_fidelity = best_fidelity;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace aqec
