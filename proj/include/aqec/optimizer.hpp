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

#include <functional>
#include <string>
#include <vector>

#include "aqec/adjoint.hpp"
#include "aqec/ansatz.hpp"

namespace aqec {

struct AdamState {
  RealVector m;
  RealVector v;
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Standard Adam descent update; rejects non-finite gradients.
void adam_step(RealVector& params, const RealVector& grads, AdamState& state,
               double lr);

// |psi1> -> |psi1> - (<psi0|psi1>/<psi0|psi0>) |psi0>, then both vectors are
// normalized.  Throws if the projection collapses psi1.
LogicalPair reorthogonalize(LogicalPair pair);

struct SearchConfig {
  int cutoff = 20;
  int distance = 2;        // used when all_to_all is false
  bool all_to_all = false;
  bool include_diagonals = true;  // all-to-all detuning terms (strict-paper
                                  // mode turns them off)
  double kappa_mhz = 0.1;
  double kappa_q_mhz = 20.0;
  double t_final_us = 0.5;
  double bound_mhz = 10.0;
  double lr = 1e-3;
  double lr_final = 3e-4;
  int iters = 2000;
  unsigned long long seed = 1;
  int steps_per_unit = 4000;  // RK4 steps per us
  bool modified_objective = true;
  int checkpoint_every = 0;  // 0 disables periodic checkpoints

  void validate() const;
  int total_steps() const;
  double bound() const { return mhz_to_angular(bound_mhz); }
};

struct SearchResult {
  LogicalPair pair;           // best-by-objective iterate
  RealVector alpha;           // rad/us, projected
  std::vector<std::string> labels;
  std::vector<double> fidelity_history;  // objective at the start of each iter
  double final_fidelity = 0.0;           // objective of the returned iterate
  double wall_seconds = 0.0;
  SearchConfig config;
};

using TrainCallback =
    std::function<void(int iter, const SearchResult& snapshot)>;

// The full training loop: assemble H(alpha) -> propagate the three branches
// over [0, T] -> modified average fidelity -> adjoint gradients -> Adam ->
// bound projection -> re-orthogonalization, with a linear learning-rate
// decay.  Drive coefficients enter Adam in units of the bound so the step
// size is scale-free.  Deterministic for fixed seed and thread count.
SearchResult train(const SearchConfig& config,
                   const TrainCallback& on_checkpoint = nullptr);

// Seeded initialization used by train(): psi from a complex Gaussian then
// orthonormalized, alpha uniform in [-0.1, 0.1] * bound.
std::pair<LogicalPair, RealVector> seeded_initialization(
    const SearchConfig& config, int nterms);

}  // namespace aqec
