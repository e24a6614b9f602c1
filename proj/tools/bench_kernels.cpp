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

// Compares the OpenMP sparse RHS kernel against the serial dense reference
// across problem sizes.  Usage: bench_kernels [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include <omp.h>

#include "aqec/ansatz.hpp"
#include "aqec/kernels.hpp"

using namespace aqec;

namespace {

double time_of(int reps, const std::function<void()>& fn) {
  // warm up
  fn();
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 2000;
  std::printf("threads: %d, reps per size: %d\n", omp_get_max_threads(), reps);
  std::printf("%8s %8s %14s %14s %9s %10s\n", "cutoff", "dim", "reference[us]",
              "kernel[us]", "speedup", "max|diff|");

  std::mt19937_64 gen(7);
  std::normal_distribution<double> dist(0.0, 1.0);

  for (int cutoff : {5, 10, 15, 20, 23}) {
    const auto basis = distance_d_basis(cutoff, 2);
    RealVector alpha(basis.size());
    for (int j = 0; j < alpha.size(); ++j)
      alpha(j) = mhz_to_angular(10.0) * dist(gen) * 0.3;
    const Matrix h = assemble(basis, alpha);
    std::vector<Dissipator> ds = {
        {mhz_to_angular(0.1), mode_loss_op(cutoff)},
        {mhz_to_angular(20.0), qubit_loss_op(cutoff)}};
    const auto ops = make_generator_ops(h, ds);

    const int dim = basis.dim;
    Matrix rho(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) rho(i, j) = cxd(dist(gen), dist(gen));
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();

    Matrix out_fast(dim, dim), out_ref(dim, dim);
    const double t_ref = time_of(
        reps, [&] { lindblad_rhs_reference(h, ds, rho, out_ref); });
    const double t_fast = time_of(reps, [&] { lindblad_rhs(ops, rho, out_fast); });
    const double diff = (out_fast - out_ref).cwiseAbs().maxCoeff();
    std::printf("%8d %8d %14.2f %14.2f %9.2fx %10.2e\n", cutoff, dim,
                t_ref * 1e6, t_fast * 1e6, t_ref / t_fast, diff);
  }
  return 0;
}
