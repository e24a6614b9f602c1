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

// Command-line surface: discover | evaluate | wigner | bloch-map |
// bandwidth | fluxonium | circuit-sim | verify-sqrt3 | gradcheck |
// export-waveforms.
//
// Exit codes: 0 success, 1 validation/usage error, 2 numerical failure.
// Frequencies are quoted in MHz (GHz for the fluxonium energies), times in
// us.  Every run emits a provenance record listing its outputs.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <omp.h>

#include "aqec/adjoint.hpp"
#include "aqec/circuit.hpp"
#include "aqec/codes.hpp"
#include "aqec/records.hpp"

using namespace aqec;

namespace {

struct CodeSource {
  std::string record_path;
  int sqrt3_variant = 1;
  bool use_record = false;
};

void add_source_options(CLI::App* cmd, CodeSource& src) {
  auto* rec = cmd->add_option("--record", src.record_path,
                              "search-result record (JSON) to analyze");
  cmd->add_option("--variant", src.sqrt3_variant,
                  "analytic sqrt(3) code variant (1 or 2)")
      ->check(CLI::Range(1, 2));
  rec->each([&src](const std::string&) { src.use_record = true; });
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

void emit_run_record(const std::string& command,
                     const nlohmann::json& config_echo,
                     const std::vector<std::string>& outputs, double seconds,
                     unsigned long long seed, std::string path) {
  if (path.empty())
    path = outputs.empty() ? command + ".run.json"
                           : outputs.front() + ".run.json";
  save_json(run_record(command, config_echo, outputs, seconds, seed), path);
  std::printf("run record: %s\n", path.c_str());
}

// Oscillator-side code state of a joint-space pair (ancilla traced out).
Matrix oscillator_code_state(const LogicalPair& joint) {
  const int dim = joint.dim() / 2;
  Matrix rho = Matrix::Zero(dim, dim);
  for (const Vector* psi : {&joint.psi0, &joint.psi1})
    for (int s = 0; s < 2; ++s) {
      Vector comp(dim);
      for (int n = 0; n < dim; ++n) comp(n) = (*psi)(2 * n + s);
      rho += 0.5 * comp * comp.adjoint();
    }
  return rho;
}

Vector oscillator_component(const Vector& joint, int sector) {
  Vector comp(joint.size() / 2);
  for (int n = 0; n < comp.size(); ++n) comp(n) = joint(2 * n + sector);
  return comp;
}

int run_app(int argc, char** argv) {
  CLI::App app{"autonomous quantum error correction toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads,
                 "cap worker threads (default: all cores)");
  app.parse_complete_callback([&] {
    if (threads > 0) omp_set_num_threads(threads);
  });

  // ---------------------------------------------------------------- discover
  auto* discover = app.add_subcommand(
      "discover", "run the gradient search for an AQEC scheme");
  discover->set_config("--config", "", "flat key=value config file");
  SearchConfig search;
  std::string discover_out = "discovered.json";
  std::string run_record_path;
  discover->add_option("--cutoff", search.cutoff, "Fock cutoff (levels 0..cutoff)");
  discover->add_option("--distance", search.distance, "Hamiltonian distance d");
  discover->add_flag("--all-to-all", search.all_to_all,
                     "use the all-to-all coupling family");
  bool strict_paper = false;
  discover->add_flag("--strict-paper", strict_paper,
                     "drop the in-sector diagonal detuning terms");
  discover->add_option("--kappa-mhz", search.kappa_mhz, "photon loss / 2pi");
  discover->add_option("--kappa-q-mhz", search.kappa_q_mhz, "ancilla decay / 2pi");
  discover->add_option("--T-us", search.t_final_us, "objective time");
  discover->add_option("--bound-mhz", search.bound_mhz, "drive bound / 2pi");
  discover->add_option("--lr", search.lr, "Adam learning rate");
  discover->add_option("--lr-final", search.lr_final, "final learning rate");
  discover->add_option("--iters", search.iters, "iterations");
  discover->add_option("--seed", search.seed, "RNG seed");
  discover->add_option("--steps-per-unit", search.steps_per_unit,
                       "RK4 steps per us");
  bool plain_objective = false;
  discover->add_flag("--plain-objective", plain_objective,
                     "train on the unmodified average fidelity");
  discover->add_option("--checkpoint-every", search.checkpoint_every,
                       "checkpoint period (0 = off)");
  discover->add_option("--out", discover_out, "result record path");
  discover->add_option("--run-record", run_record_path, "provenance path");
  discover->callback([&] {
    Timer timer;
    search.include_diagonals = !strict_paper;
    search.modified_objective = !plain_objective;
    std::vector<std::string> outputs;
    auto on_checkpoint = [&](int iter, const SearchResult& snap) {
      const std::string path =
          discover_out + ".ckpt" + std::to_string(iter) + ".json";
      save_result(snap, path);
      outputs.push_back(path);
      std::printf("iter %6d  F = %.6f  (checkpoint %s)\n", iter,
                  snap.final_fidelity, path.c_str());
    };
    const SearchResult result =
        train(search, search.checkpoint_every > 0 ? TrainCallback(on_checkpoint)
                                                  : TrainCallback());
    save_result(result, discover_out);
    outputs.insert(outputs.begin(), discover_out);
    std::printf("best objective F(T) = %.6f after %d iterations (%.1f s)\n",
                result.final_fidelity, search.iters, result.wall_seconds);
    std::printf("break-even at T: %.6f\n",
                break_even(search.t_final_us, mhz_to_angular(search.kappa_mhz)));
    emit_run_record("discover", to_json(search), outputs, timer.seconds(),
                    search.seed, run_record_path);
  });

  // ---------------------------------------------------------------- evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "fidelity curve of a recorded scheme vs break-even");
  std::string eval_record, eval_out = "curve.csv";
  double eval_tmax = 10.0;
  int eval_points = 100;
  int eval_steps = 0;
  evaluate->add_option("--record", eval_record, "search-result record")
      ->required();
  evaluate->add_option("--tmax", eval_tmax, "horizon (us)");
  evaluate->add_option("--points", eval_points, "grid points");
  evaluate->add_option("--steps-per-unit", eval_steps,
                       "override RK4 density (default: from the record)");
  evaluate->add_option("--out", eval_out, "CSV path");
  evaluate->add_option("--run-record", run_record_path, "provenance path");
  evaluate->callback([&] {
    Timer timer;
    const SearchResult rec = load_result(eval_record);
    const LindbladModel model = model_from_result(rec);
    const int steps_per_unit =
        eval_steps > 0 ? eval_steps : rec.config.steps_per_unit;
    const RealVector tgrid = linspace(0.0, eval_tmax, eval_points);
    const double interval = eval_tmax / (eval_points - 1);
    const int steps =
        std::max(1, int(std::lround(interval * steps_per_unit)));
    const Trajectory traj = propagate_code(model, rec.pair, tgrid, steps);
    FidelityCurve curve;
    curve.tgrid = tgrid;
    curve.values.resize(eval_points);
    curve.baseline.resize(eval_points);
    RealVector modified(eval_points);
    const double kappa = mhz_to_angular(rec.config.kappa_mhz);
    for (int g = 0; g < eval_points; ++g) {
      const BranchSet at = traj.branch_set_at(g);
      curve.values(g) = average_fidelity(rec.pair, at);
      modified(g) = modified_average_fidelity(rec.pair, at);
      curve.baseline(g) = break_even(tgrid(g), kappa);
    }
    write_curve_csv(eval_out, curve, &modified);
    std::printf("wrote %s (recorded F(T) = %.9f)\n", eval_out.c_str(),
                rec.final_fidelity);
    emit_run_record("evaluate", to_json(rec.config), {eval_out},
                    timer.seconds(), rec.config.seed, run_record_path);
  });

  // ------------------------------------------------------------------ wigner
  auto* wig = app.add_subcommand("wigner",
                                 "Wigner function of a code state (CSV)");
  CodeSource wig_src;
  add_source_options(wig, wig_src);
  std::string wig_out = "wigner.csv", wig_state = "code";
  double wig_extent = 4.2;
  int wig_points = 81, wig_cutoff = 48;
  wig->add_option("--state", wig_state, "code | psi0 | psi1");
  wig->add_option("--extent", wig_extent, "grid extent in x and p");
  wig->add_option("--points", wig_points, "grid points per axis");
  wig->add_option("--cutoff", wig_cutoff,
                  "Fock truncation for the displacement operators");
  wig->add_option("--out", wig_out, "CSV path");
  wig->add_option("--run-record", run_record_path, "provenance path");
  wig->callback([&] {
    Timer timer;
    Matrix rho;
    nlohmann::json echo;
    unsigned long long seed = 0;
    auto embed = [&](const Matrix& small) {
      Matrix big = Matrix::Zero(wig_cutoff + 1, wig_cutoff + 1);
      const int d = int(small.rows());
      require(d <= wig_cutoff + 1, "wigner: state larger than --cutoff");
      big.topLeftCorner(d, d) = small;
      return big;
    };
    if (wig_src.use_record) {
      const SearchResult rec = load_result(wig_src.record_path);
      seed = rec.config.seed;
      echo = to_json(rec.config);
      if (wig_state == "code")
        rho = embed(oscillator_code_state(rec.pair));
      else {
        const Vector& joint =
            wig_state == "psi0" ? rec.pair.psi0 : rec.pair.psi1;
        Matrix full = Matrix::Zero(joint.size() / 2, joint.size() / 2);
        for (int s = 0; s < 2; ++s) {
          const Vector comp = oscillator_component(joint, s);
          full += comp * comp.adjoint();
        }
        rho = embed(full);
      }
    } else {
      const auto pair = sqrt3_code(wig_src.sqrt3_variant, wig_cutoff);
      echo = {{"sqrt3_variant", wig_src.sqrt3_variant}};
      if (wig_state == "code")
        rho = code_state(pair);
      else
        rho = wig_state == "psi0"
                  ? Matrix(pair.psi0 * pair.psi0.adjoint())
                  : Matrix(pair.psi1 * pair.psi1.adjoint());
    }
    const RealVector grid = linspace(-wig_extent, wig_extent, wig_points);
    double leakage = 0.0;
    const RealMatrix w = wigner(rho, grid, grid, &leakage);
    if (leakage > 0.01)
      std::fprintf(stderr,
                   "warning: displacement leakage %.2f%% — increase --cutoff "
                   "or reduce --extent\n",
                   100.0 * leakage);
    write_wigner_csv(wig_out, grid, grid, w);
    std::printf("wrote %s (leakage %.2e)\n", wig_out.c_str(), leakage);
    emit_run_record("wigner", echo, {wig_out}, timer.seconds(), seed,
                    run_record_path);
  });

  // --------------------------------------------------------------- bloch-map
  auto* bloch = app.add_subcommand(
      "bloch-map", "single-state fidelity over the Bloch sphere (CSV)");
  CodeSource bloch_src;
  add_source_options(bloch, bloch_src);
  std::string bloch_out = "bloch.csv";
  double bloch_t = 10.0, bloch_scale_mhz = 10.0, bloch_kappa = 0.1,
         bloch_kappa_q = 20.0;
  int bloch_ntheta = 64, bloch_nphi = 64, bloch_steps = 1000;
  bloch->add_option("--t-us", bloch_t, "evolution time");
  bloch->add_option("--ntheta", bloch_ntheta, "theta grid");
  bloch->add_option("--nphi", bloch_nphi, "phi grid");
  bloch->add_option("--scale-mhz", bloch_scale_mhz,
                    "sqrt(3) Hamiltonian scale / 2pi");
  bloch->add_option("--kappa-mhz", bloch_kappa, "photon loss / 2pi");
  bloch->add_option("--kappa-q-mhz", bloch_kappa_q, "ancilla decay / 2pi");
  bloch->add_option("--steps-per-unit", bloch_steps, "RK4 steps per us");
  bloch->add_option("--out", bloch_out, "CSV path");
  bloch->add_option("--run-record", run_record_path, "provenance path");
  bloch->callback([&] {
    Timer timer;
    LindbladModel model;
    LogicalPair pair;
    nlohmann::json echo;
    unsigned long long seed = 0;
    if (bloch_src.use_record) {
      const SearchResult rec = load_result(bloch_src.record_path);
      model = model_from_result(rec);
      pair = rec.pair;
      echo = to_json(rec.config);
      seed = rec.config.seed;
    } else {
      const int cutoff = 10;
      auto [h_joint, c] = sqrt3_hamiltonian(
          bloch_src.sqrt3_variant, mhz_to_angular(bloch_scale_mhz), true,
          cutoff);
      model.basis = {h_joint};
      model.alpha = RealVector::Ones(1);
      model.basis_support.resize(1);
      model.dissipators = {
          {mhz_to_angular(bloch_kappa), mode_loss_op(cutoff)},
          {mhz_to_angular(bloch_kappa_q), qubit_loss_op(cutoff)}};
      pair.psi0 = tensor(c.pair.psi0, Vector(Vector::Unit(2, 0)));
      pair.psi1 = tensor(c.pair.psi1, Vector(Vector::Unit(2, 0)));
      echo = {{"sqrt3_variant", bloch_src.sqrt3_variant},
              {"scale_mhz", bloch_scale_mhz},
              {"kappa_mhz", bloch_kappa},
              {"kappa_q_mhz", bloch_kappa_q}};
    }
    const RealVector tgrid = linspace(0.0, bloch_t, 2);
    const int steps =
        std::max(1, int(std::lround(bloch_t * double(bloch_steps))));
    const Trajectory traj = propagate_code(model, pair, tgrid, steps);
    const RealMatrix map =
        bloch_map(pair, traj.branch_set_at(1), bloch_ntheta, bloch_nphi);
    write_bloch_csv(bloch_out, map);
    std::printf("wrote %s\n", bloch_out.c_str());
    emit_run_record("bloch-map", echo, {bloch_out}, timer.seconds(), seed,
                    run_record_path);
  });

  // --------------------------------------------------------------- bandwidth
  auto* band = app.add_subcommand(
      "bandwidth", "emission-bandwidth scan over coupling ratios (CSV)");
  std::string band_out = "bandwidth.csv";
  double band_delta1 = 1000.0, band_g1 = 100.0;
  double band_rmin = 0.8, band_rmax = 3.0;
  int band_points = 41, band_nmax = 6;
  band->add_option("--delta1-mhz", band_delta1, "Delta1 / 2pi");
  band->add_option("--g1-mhz", band_g1, "g1 / 2pi");
  band->add_option("--nmax", band_nmax, "emission lines 1..nmax");
  band->add_option("--ratio-min", band_rmin, "scan range lower edge");
  band->add_option("--ratio-max", band_rmax, "scan range upper edge");
  band->add_option("--points", band_points, "grid points per axis");
  band->add_option("--out", band_out, "CSV path");
  band->add_option("--run-record", run_record_path, "provenance path");
  band->callback([&] {
    Timer timer;
    CouplerParams base;
    base.delta1 = mhz_to_angular(band_delta1);
    base.g1 = mhz_to_angular(band_g1);
    base.delta2 = base.delta1;
    base.g2 = base.g1;
    base.n_max = band_nmax;
    const RealVector ratios = linspace(band_rmin, band_rmax, band_points);
    const BandwidthScan scan = bandwidth_scan(base, ratios, ratios);
    write_bandwidth_csv(band_out, scan);
    std::printf("wrote %s\n", band_out.c_str());
    emit_run_record("bandwidth",
                    {{"delta1_mhz", band_delta1},
                     {"g1_mhz", band_g1},
                     {"n_max", band_nmax},
                     {"ratio_min", band_rmin},
                     {"ratio_max", band_rmax},
                     {"points", band_points}},
                    {band_out}, timer.seconds(), 0, run_record_path);
  });

  // --------------------------------------------------------------- fluxonium
  auto* flux = app.add_subcommand("fluxonium",
                                  "fluxonium levels and coupling ratio");
  double ec = 0.95, ej = 4.75, el = 0.65, phi_ext = 0.0;
  int flux_basis = 60;
  flux->add_option("--ec-ghz", ec, "E_C / 2pi");
  flux->add_option("--ej-ghz", ej, "E_J / 2pi");
  flux->add_option("--el-ghz", el, "E_L / 2pi");
  flux->add_option("--phi-ext", phi_ext, "external flux (radians)");
  flux->add_option("--basis", flux_basis, "harmonic basis size");
  flux->add_option("--run-record", run_record_path, "provenance path");
  flux->callback([&] {
    Timer timer;
    const auto spec = fluxonium_spectrum(ec, ej, el, phi_ext, flux_basis);
    std::printf("omega_ge/2pi = %.4f GHz\n", spec.omega_ge);
    std::printf("omega_ef/2pi = %.4f GHz\n", spec.omega_ef);
    std::printf("coupling ratio r = |<f|n|e>|^2/|<e|n|g>|^2 = %.4f\n",
                spec.coupling_ratio);
    std::printf("|<g|n|f>| = %.3e (parity-forbidden at phi_ext = 0)\n",
                std::abs(spec.n_gf));
    emit_run_record("fluxonium",
                    {{"ec_ghz", ec},
                     {"ej_ghz", ej},
                     {"el_ghz", el},
                     {"phi_ext", phi_ext},
                     {"basis", flux_basis}},
                    {}, timer.seconds(), 0, run_record_path);
  });

  // ------------------------------------------------------------- circuit-sim
  auto* csim = app.add_subcommand(
      "circuit-sim",
      "rotating-frame simulation of the physical implementation");
  CodeSource csim_src;
  add_source_options(csim, csim_src);
  std::string csim_out = "circuit_curve.csv";
  double csim_tmax = 24.0;
  int csim_points = 9, csim_na = 8;
  double csim_steps = 1000.0;
  bool csim_no_swap = false, csim_drives_off = false;
  csim->add_option("--tmax", csim_tmax, "horizon (us)");
  csim->add_option("--points", csim_points, "curve points");
  csim->add_option("--na", csim_na, "oscillator cutoff");
  csim->add_option("--steps-per-us", csim_steps, "RK4 steps per us");
  csim->add_flag("--no-swap", csim_no_swap,
                 "ablate the entropy-evacuation swap (Omega = 0)");
  csim->add_flag("--drives-off", csim_drives_off,
                 "turn all drives off (decay baseline)");
  csim->add_option("--out", csim_out, "CSV path");
  csim->add_option("--run-record", run_record_path, "provenance path");
  csim->callback([&] {
    Timer timer;
    Matrix h_tilde;
    LogicalPair code;
    nlohmann::json echo;
    unsigned long long seed = 0;
    if (csim_src.use_record) {
      const SearchResult rec = load_result(csim_src.record_path);
      seed = rec.config.seed;
      echo = to_json(rec.config);
      const LindbladModel model = model_from_result(rec);
      h_tilde = ge_block(model.hamiltonian());
      // keep the oscillator-side components of the recorded pair
      code.psi0 = oscillator_component(rec.pair.psi0, 0);
      code.psi1 = oscillator_component(rec.pair.psi1, 0);
      const double weight =
          std::min(code.psi0.squaredNorm(), code.psi1.squaredNorm());
      if (weight < 0.99)
        std::fprintf(stderr,
                     "warning: recorded pair has %.1f%% weight outside the "
                     "ancilla ground sector\n",
                     100.0 * (1.0 - weight));
      code.psi0.normalize();
      code.psi1 -= code.psi0.dot(code.psi1) * code.psi0;
      code.psi1.normalize();
    } else {
      auto [h_joint, c] =
          sqrt3_hamiltonian(csim_src.sqrt3_variant, 1.0, true, 7);
      h_tilde = ge_block(h_joint);
      code = c.pair;
      echo = {{"sqrt3_variant", csim_src.sqrt3_variant}};
    }
    CircuitConfig config = desk_scale_config(h_tilde, csim_na);
    config.steps_per_us = csim_steps;
    if (csim_drives_off) {
      config.h_tilde = Matrix::Zero(2, 2);
      config.effective_b_decay = 0.0;
      config.omega_swap = 0.0;
      config.f4_tones = 1;
    } else if (csim_no_swap) {
      config.effective_b_decay = 0.0;
      config.omega_swap = 0.0;
    }
    echo["na"] = csim_na;
    echo["tmax_us"] = csim_tmax;
    echo["steps_per_us"] = csim_steps;
    echo["no_swap"] = csim_no_swap;
    echo["drives_off"] = csim_drives_off;
    const RealVector tgrid = linspace(0.0, csim_tmax, csim_points);
    const auto result = simulate_circuit(config, code, tgrid);
    for (const auto& w : result.warnings)
      std::fprintf(stderr, "warning: %s\n", w.c_str());
    write_curve_csv(csim_out, result.curve_plain, &result.curve.values);
    std::printf("wrote %s\n", csim_out.c_str());
    std::printf("F(t = %.2f us) = %.6f, break-even = %.6f\n", csim_tmax,
                result.curve.values(csim_points - 1),
                result.curve.baseline(csim_points - 1));
    emit_run_record("circuit-sim", echo, {csim_out}, timer.seconds(), seed,
                    run_record_path);
  });

  // ------------------------------------------------------------ verify-sqrt3
  auto* verify = app.add_subcommand(
      "verify-sqrt3", "constraint, locality, and KL checks of the code");
  int verify_variant = 1;
  verify->add_option("--variant", verify_variant)->check(CLI::Range(1, 2));
  verify->add_option("--run-record", run_record_path, "provenance path");
  verify->callback([&] {
    Timer timer;
    const int cutoff = 9;
    const auto residuals = sqrt3_constraint_residuals(verify_variant);
    std::printf("scalar constraint residuals (variant %d):\n", verify_variant);
    const char* names[6] = {"|psi0| normalization", "|psi1| normalization",
                            "error-state orthogonality",
                            "Knill-Laflamme balance", "beta equation",
                            "beta consistency"};
    bool ok = true;
    for (size_t i = 0; i < residuals.size(); ++i) {
      std::printf("  %-26s % .3e\n", names[i], residuals[i]);
      ok = ok && std::abs(residuals[i]) < 1e-12;
    }
    auto [h_joint, c] =
        sqrt3_hamiltonian(verify_variant, mhz_to_angular(10.0), true, cutoff);
    std::printf("locality entries (must vanish):\n");
    for (const auto& [m, n] : c.constraint_entries) {
      std::printf("  H~(%d,%d) = % .3e\n", m, n, std::abs(c.h_tilde(m, n)));
      ok = ok && std::abs(c.h_tilde(m, n)) < 1e-12;
    }
    const int dist = hamiltonian_distance(ge_block(h_joint), 1e-10);
    std::printf("hamiltonian distance: %d\n", dist);
    ok = ok && dist == 2;
    const auto kl = kl_check(sqrt3_code(verify_variant, cutoff),
                             {fock_annihilation(cutoff)}, 1e-10);
    std::printf("%s", kl.text().c_str());
    ok = ok && kl.pass;
    const Matrix nop = fock_number(cutoff);
    std::printf("mean photon number: %.12f (sqrt(3) = %.12f)\n",
                c.pair.psi0.dot(nop * c.pair.psi0).real(), std::sqrt(3.0));
    std::printf("overall: %s\n", ok ? "pass" : "FAIL");
    emit_run_record("verify-sqrt3", {{"variant", verify_variant}}, {},
                    timer.seconds(), 0, run_record_path);
    if (!ok) throw numerical_error("verify-sqrt3 checks failed");
  });

  // --------------------------------------------------------------- gradcheck
  auto* gc = app.add_subcommand(
      "gradcheck", "adjoint gradients vs central finite differences");
  int gc_cutoff = 3, gc_distance = 2;
  unsigned long long gc_seed = 1;
  double gc_t = 0.4;
  int gc_steps = 800;
  bool gc_plain = false;
  gc->add_option("--cutoff", gc_cutoff, "Fock cutoff of the test instance");
  gc->add_option("--distance", gc_distance, "Hamiltonian distance");
  gc->add_option("--seed", gc_seed, "instance seed");
  gc->add_option("--T-us", gc_t, "objective time");
  gc->add_option("--steps-per-unit", gc_steps, "RK4 steps per us");
  gc->add_flag("--plain-objective", gc_plain, "check the unmodified objective");
  gc->add_option("--run-record", run_record_path, "provenance path");
  gc->callback([&] {
    Timer timer;
    const auto basis = distance_d_basis(gc_cutoff, gc_distance);
    std::mt19937_64 gen(gc_seed);
    std::normal_distribution<double> dist;
    RealVector alpha(basis.size());
    for (int j = 0; j < alpha.size(); ++j)
      alpha(j) = 0.3 * mhz_to_angular(10.0) * dist(gen);
    LindbladModel model = to_model(
        basis, alpha,
        {{mhz_to_angular(0.1), mode_loss_op(gc_cutoff)},
         {mhz_to_angular(20.0), qubit_loss_op(gc_cutoff)}});
    LogicalPair pair;
    pair.psi0 = Vector(basis.dim);
    pair.psi1 = Vector(basis.dim);
    for (int n = 0; n < basis.dim; ++n) {
      pair.psi0(n) = cxd(dist(gen), dist(gen));
      pair.psi1(n) = cxd(dist(gen), dist(gen));
    }
    pair = reorthogonalize(pair);

    const int total = std::max(1, int(std::lround(gc_t * gc_steps)));
    const auto report = gradcheck(model, pair, gc_t, total, !gc_plain);
    std::printf("%s", report.table().c_str());
    std::printf("max relative error: %.3e  =>  %s\n", report.max_rel_error,
                report.pass ? "pass" : "FAIL");
    emit_run_record("gradcheck",
                    {{"cutoff", gc_cutoff},
                     {"distance", gc_distance},
                     {"T_us", gc_t},
                     {"steps_per_unit", gc_steps},
                     {"modified", !gc_plain}},
                    {}, timer.seconds(), gc_seed, run_record_path);
    if (!report.pass) throw numerical_error("gradient check failed");
  });

  // -------------------------------------------------------- export-waveforms
  auto* wf = app.add_subcommand(
      "export-waveforms", "flux-pump waveforms for the circuit loops (CSV)");
  CodeSource wf_src;
  add_source_options(wf, wf_src);
  std::string wf_out = "waveforms.csv";
  double wf_tmax = 0.5;
  int wf_samples = 20001, wf_na = 8;
  FluxWaveformParams wf_params;
  double wf_omega_a_mhz = 3500.0, wf_omega_c_mhz = 2500.0;
  wf->add_option("--tmax-us", wf_tmax, "window length");
  wf->add_option("--samples", wf_samples, "sample count");
  wf->add_option("--na", wf_na, "oscillator cutoff for drive synthesis");
  wf->add_option("--omega-a-mhz", wf_omega_a_mhz, "storage-mode frequency");
  wf->add_option("--omega-c-mhz", wf_omega_c_mhz, "lossy-qubit frequency");
  wf->add_option("--out", wf_out, "CSV path");
  wf->add_option("--run-record", run_record_path, "provenance path");
  wf->callback([&] {
    Timer timer;
    Matrix h_tilde;
    nlohmann::json echo;
    unsigned long long seed = 0;
    if (wf_src.use_record) {
      const SearchResult rec = load_result(wf_src.record_path);
      h_tilde = ge_block(model_from_result(rec).hamiltonian());
      echo = to_json(rec.config);
      seed = rec.config.seed;
    } else {
      auto [h_joint, c] =
          sqrt3_hamiltonian(wf_src.sqrt3_variant, 1.0, true, 7);
      h_tilde = ge_block(h_joint);
      echo = {{"sqrt3_variant", wf_src.sqrt3_variant}};
    }
    const CircuitConfig config = desk_scale_config(h_tilde, wf_na);
    const DressedSpectrum spectrum = coupler_spectrum(config.coupler);
    const DriveSet drives = synthesize_drives(
        spectrum, config.h_tilde, config.omega_swap, config.f4_tones);
    wf_params.omega_a = mhz_to_angular(wf_omega_a_mhz);
    wf_params.omega_c = mhz_to_angular(wf_omega_c_mhz);
    const RealVector t = linspace(0.0, wf_tmax, wf_samples);
    const FluxWaveforms waves = synthesize_flux_waveforms(drives, wf_params, t);
    write_waveforms_csv(wf_out, waves);
    std::printf("wrote %s (%d samples over %.3f us)\n", wf_out.c_str(),
                wf_samples, wf_tmax);
    emit_run_record("export-waveforms", echo, {wf_out}, timer.seconds(), seed,
                    run_record_path);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const validation_error& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 1;
  } catch (const numerical_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "malformed record: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
