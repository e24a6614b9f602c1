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

#include "aqec/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <omp.h>

#include "aqec/hilbert.hpp"
#include "aqec/lindblad.hpp"

namespace aqec {

cxd DriveSet::sample(int which, double t) const {
  cxd out = 0.0;
  for (const auto& tone : tones[size_t(which)])
    out += tone.amp * std::exp(-imag_unit * tone.freq * t);
  return out;
}

namespace {

constexpr double kElementFloor = 1e-6;

struct Element {
  int row = 0;
  int col = 0;
  cxd val;
};

// Dressed matrix elements of the bare operators needed by the simulation.
struct ElementTables {
  std::array<std::vector<Element>, 3> drive;  // a^+b^+, ab^+, a^2b^+ (e x g)
  std::vector<Element> b_dag;                 // b^+ (e x g)
  std::vector<Element> a_gg, a_ee;            // a within each branch
  std::vector<Element> b_low;                 // b (g x e)
};

Matrix bare_qubit_raise(int levels) {
  Matrix b = Matrix::Zero(3, 3);
  b(1, 0) = 1.0;  // |e><g|
  return tensor(identity(levels), b);
}

ElementTables compute_elements(const DressedSpectrum& spec, int n_a) {
  const int levels = spec.params.n_max + 3;
  const Matrix a_bare = tensor(fock_annihilation(levels - 1), identity(3));
  const Matrix bdag_bare = bare_qubit_raise(levels);
  const std::array<Matrix, 3> drive_ops = {
      Matrix(a_bare.adjoint() * bdag_bare), Matrix(a_bare * bdag_bare),
      Matrix(a_bare * a_bare * bdag_bare)};

  std::vector<Vector> g_states(n_a + 1), e_states(n_a + 1);
  for (int n = 0; n <= n_a; ++n) {
    g_states[n] = dressed_vector(spec, n, 0);
    e_states[n] = dressed_vector(spec, n, 1);
  }

  ElementTables tables;
  auto harvest = [&](const Matrix& op, const std::vector<Vector>& rows,
                     const std::vector<Vector>& cols,
                     std::vector<Element>& out) {
    for (int r = 0; r < int(rows.size()); ++r)
      for (int c = 0; c < int(cols.size()); ++c) {
        const cxd v = rows[r].dot(op * cols[c]);
        if (std::abs(v) > 1e-9) out.push_back({r, c, v});
      }
  };
  for (int l = 0; l < 3; ++l)
    harvest(drive_ops[l], e_states, g_states, tables.drive[l]);
  harvest(bdag_bare, e_states, g_states, tables.b_dag);
  harvest(a_bare, g_states, g_states, tables.a_gg);
  harvest(a_bare, e_states, e_states, tables.a_ee);
  harvest(Matrix(bdag_bare.adjoint()), g_states, e_states, tables.b_low);
  return tables;
}

cxd element_lookup(const std::vector<Element>& table, int row, int col) {
  for (const auto& e : table)
    if (e.row == row && e.col == col) return e.val;
  return 0.0;
}

}  // namespace

DriveSet synthesize_drives(const DressedSpectrum& spectrum,
                           const Matrix& h_tilde, double omega_swap,
                           int f4_tones, bool compensate_stark) {
  require(h_tilde.rows() == h_tilde.cols(), "synthesize_drives: H~ not square");
  const int levels = int(h_tilde.rows());
  const double scale = h_tilde.cwiseAbs().maxCoeff();
  const int n_need = std::max(levels - 1, f4_tones - 1);
  require(spectrum.params.n_max >= n_need,
          "synthesize_drives: dressed spectrum covers fewer levels than H~");
  require(f4_tones >= 1, "synthesize_drives: need at least one swap tone");

  const ElementTables tables = compute_elements(spectrum, n_need);
  const int offsets[3] = {-1, +1, +2};

  // Static light shift of |~n,e,gc> from the off-resonant swap-comb tones.
  // The code levels |~m,g,gc> are untouched by the comb (it needs an
  // excitation of b or c), so this is also the shift of the e <- g drive
  // transitions.  Shifts from the f1..f3 drives themselves are
  // O(alpha^2/chi), two orders below, and are not compensated.
  std::vector<double> swap_freq(static_cast<size_t>(f4_tones), 0.0);
  for (int n = 0; n < f4_tones; ++n)
    swap_freq[size_t(n)] =
        dressed_energy(spectrum, n, 1) - dressed_energy(spectrum, n, 0);
  auto stark_e = [&](int n) {
    if (!compensate_stark) return 0.0;
    const double own = n < f4_tones
                           ? swap_freq[size_t(n)]
                           : dressed_energy(spectrum, n, 1) -
                                 dressed_energy(spectrum, n, 0);
    double shift = 0.0;
    for (int k = 0; k < f4_tones; ++k) {
      if (k == n) continue;
      const double detuning = own - swap_freq[size_t(k)];
      const double rabi = omega_swap;  // amp_k * elem(n) ~ Omega
      if (std::abs(detuning) < 10.0 * rabi) continue;  // formula invalid
      shift += rabi * rabi / detuning;
    }
    return shift;
  };

  DriveSet set;
  for (int m = 0; m < levels && scale > 0.0; ++m) {
    for (int n = 0; n < levels; ++n) {
      if (std::abs(h_tilde(m, n)) < 1e-12 * scale) continue;
      const int delta = m - n;
      require(delta != 0,
              "synthesize_drives: diagonal coupling cannot be driven");
      int type = -1;
      for (int l = 0; l < 3; ++l)
        if (offsets[l] == delta) type = l;
      if (type < 0)
        throw validation_error(
            "synthesize_drives: offset " + std::to_string(delta) +
            " at entry (" + std::to_string(m) + "," + std::to_string(n) +
            ") has no drive operator (only a^+, a, a^2 against b^+)");
      // raising amplitude |n+delta, g> -> |n, e|
      const cxd alpha = std::conj(h_tilde(m, n));
      const cxd element = element_lookup(tables.drive[type], n, m);
      if (std::abs(element) < kElementFloor)
        throw validation_error("synthesize_drives: vanishing dressed matrix "
                               "element for type " + std::to_string(type + 1) +
                               " at n = " + std::to_string(n));
      DriveTone tone;
      tone.n = n;
      tone.freq = dressed_energy(spectrum, n, 1) -
                  dressed_energy(spectrum, m, 0) + stark_e(n);
      tone.amp = alpha / element;
      set.tones[size_t(type)].push_back(tone);
    }
  }

  for (int n = 0; n < f4_tones; ++n) {
    const cxd element = element_lookup(tables.b_dag, n, n);
    if (std::abs(element) < kElementFloor)
      throw validation_error(
          "synthesize_drives: vanishing b^+ element at n = " +
          std::to_string(n));
    DriveTone tone;
    tone.n = n;
    // |~n,g,ec> shifts opposite to |~n,e,gc>, so the swap line moves twice
    tone.freq = swap_freq[size_t(n)] + 2.0 * stark_e(n);
    tone.amp = omega_swap / element;
    set.tones[3].push_back(tone);
  }
  return set;
}

void CircuitConfig::validate() const {
  require(kappa >= 0.0 && kappa_q > 0.0, "CircuitConfig: bad rates");
  require(n_a >= 2 && coupler.n_max >= n_a,
          "CircuitConfig: coupler.n_max must cover the simulation cutoff");
  require(h_tilde.rows() == h_tilde.cols() && h_tilde.rows() <= n_a + 1,
          "CircuitConfig: H~ larger than the simulated space");
  require(steps_per_us > 0.0, "CircuitConfig: steps_per_us must be positive");
  const double realized = 4.0 * omega_swap * omega_swap / kappa_q;
  require(std::abs(realized - effective_b_decay) <=
              0.01 * effective_b_decay,
          "CircuitConfig: 4 Omega^2/kappa_q does not match the configured "
          "effective b decay (1% tolerance)");
}

CircuitConfig make_circuit_config(const CouplerParams& coupler,
                                  const Matrix& h_tilde_unit,
                                  double alpha_max, double kappa,
                                  double effective_b_decay, double kappa_q,
                                  int n_a) {
  CircuitConfig config;
  config.coupler = coupler;
  const double top = h_tilde_unit.cwiseAbs().maxCoeff();
  config.h_tilde = top > 0.0 ? Matrix((alpha_max / top) * h_tilde_unit)
                             : h_tilde_unit;
  config.kappa = kappa;
  config.kappa_q = kappa_q;
  config.effective_b_decay = effective_b_decay;
  config.omega_swap = 0.5 * std::sqrt(effective_b_decay * kappa_q);
  config.n_a = n_a;
  config.f4_tones = n_a;
  return config;
}

CircuitConfig desk_scale_config(const Matrix& h_tilde_unit, int n_a) {
  CouplerParams coupler;
  coupler.delta1 = mhz_to_angular(1000.0);
  coupler.g1 = mhz_to_angular(50.0);  // g1^2/Delta1 = 2pi x 2.5 MHz
  coupler.delta2 = 1.2 * coupler.delta1;
  coupler.g2 = coupler.g1 * std::sqrt(1.2);
  coupler.n_max = n_a;
  return make_circuit_config(coupler, h_tilde_unit, mhz_to_angular(0.2),
                             mhz_to_angular(0.002), mhz_to_angular(0.4),
                             mhz_to_angular(10.0), n_a);
}

namespace {

// Per-branch workspace for the rotating-frame right-hand side.
struct CircuitRhs {
  const CircuitConfig* config = nullptr;
  const DressedSpectrum* spectrum = nullptr;
  const ElementTables* tables = nullptr;
  const DriveSet* drives = nullptr;
  int dim = 0;  // 4 (n_a + 1)

  Matrix h, a_jump, b_jump, c_jump;
  Matrix na, nb, nc;
  Matrix t1, t2;
  std::vector<cxd> u_g, u_e;

  // index of |~n, s_b, s_c>
  int idx(int n, int sb, int sc) const { return (2 * n + sb) * 2 + sc; }

  void init(const CircuitConfig& cfg, const DressedSpectrum& spec,
            const ElementTables& tab, const DriveSet& drv) {
    config = &cfg;
    spectrum = &spec;
    tables = &tab;
    drives = &drv;
    dim = 4 * (cfg.n_a + 1);
    h.resize(dim, dim);
    a_jump.resize(dim, dim);
    b_jump.resize(dim, dim);
    c_jump = Matrix::Zero(dim, dim);
    for (int n = 0; n <= cfg.n_a; ++n)
      for (int sb = 0; sb < 2; ++sb)
        c_jump(idx(n, sb, 0), idx(n, sb, 1)) = 1.0;
    nc = c_jump.adjoint() * c_jump;
    na.resize(dim, dim);
    nb.resize(dim, dim);
    t1.resize(dim, dim);
    t2.resize(dim, dim);
    u_g.resize(cfg.n_a + 1);
    u_e.resize(cfg.n_a + 1);
  }

  void assemble(double t) {
    const int n_a = config->n_a;
    for (int n = 0; n <= n_a; ++n) {
      u_g[n] = std::exp(imag_unit * dressed_energy(*spectrum, n, 0) * t);
      u_e[n] = std::exp(imag_unit * dressed_energy(*spectrum, n, 1) * t);
    }
    h.setZero();
    for (int l = 0; l < 3; ++l) {
      const cxd f = drives->sample(l, t);
      if (f == cxd(0.0, 0.0) && drives->tones[size_t(l)].empty()) continue;
      for (const auto& e : tables->drive[l]) {
        const cxd v = f * e.val * u_e[e.row] * std::conj(u_g[e.col]);
        for (int sc = 0; sc < 2; ++sc) {
          h(idx(e.row, 1, sc), idx(e.col, 0, sc)) += v;
          h(idx(e.col, 0, sc), idx(e.row, 1, sc)) += std::conj(v);
        }
      }
    }
    {
      const cxd f4 = drives->sample(3, t);
      for (const auto& e : tables->b_dag) {
        const cxd v = f4 * e.val * u_e[e.row] * std::conj(u_g[e.col]);
        h(idx(e.row, 1, 0), idx(e.col, 0, 1)) += v;
        h(idx(e.col, 0, 1), idx(e.row, 1, 0)) += std::conj(v);
      }
    }

    a_jump.setZero();
    for (const auto& e : tables->a_gg) {
      const cxd v = e.val * u_g[e.row] * std::conj(u_g[e.col]);
      for (int sc = 0; sc < 2; ++sc)
        a_jump(idx(e.row, 0, sc), idx(e.col, 0, sc)) = v;
    }
    for (const auto& e : tables->a_ee) {
      const cxd v = e.val * u_e[e.row] * std::conj(u_e[e.col]);
      for (int sc = 0; sc < 2; ++sc)
        a_jump(idx(e.row, 1, sc), idx(e.col, 1, sc)) = v;
    }
    b_jump.setZero();
    for (const auto& e : tables->b_low) {
      const cxd v = e.val * u_g[e.row] * std::conj(u_e[e.col]);
      for (int sc = 0; sc < 2; ++sc)
        b_jump(idx(e.row, 0, sc), idx(e.col, 1, sc)) = v;
    }
  }

  void add_dissipator(double rate, const Matrix& jump, Matrix& normal,
                      const Matrix& rho, Matrix& out) {
    if (rate == 0.0) return;
    normal.noalias() = jump.adjoint() * jump;
    t1.noalias() = jump * rho;
    out.noalias() += rate * (t1 * jump.adjoint());
    t1.noalias() = normal * rho;
    t2.noalias() = rho * normal;
    out.noalias() -= (0.5 * rate) * (t1 + t2);
  }

  void operator()(double t, const Matrix& rho, Matrix& out) {
    assemble(t);
    out.noalias() = -imag_unit * (h * rho);
    out.noalias() += imag_unit * (rho * h);
    add_dissipator(config->kappa, a_jump, na, rho, out);
    add_dissipator(config->kappa, b_jump, nb, rho, out);
    add_dissipator(config->kappa_q, c_jump, nc, rho, out);
  }
};

}  // namespace

CircuitSimResult simulate_circuit(const CircuitConfig& config,
                                  const LogicalPair& code,
                                  const RealVector& tgrid) {
  config.validate();
  code.validate();
  require(code.dim() <= config.n_a + 1,
          "simulate_circuit: code lives above the simulated cutoff");
  require(tgrid.size() >= 2 && std::abs(tgrid(0)) < 1e-12,
          "simulate_circuit: tgrid must start at 0");

  CircuitSimResult result;
  const DressedSpectrum spectrum = coupler_spectrum(config.coupler);
  if (!spectrum.dispersive_ok)
    result.warnings.push_back(
        "coupler outside the dispersive regime (detuning < 5 g sqrt(n))");
  const double chi = std::abs(chi_e(config.coupler));
  const double alpha_max = config.h_tilde.cwiseAbs().maxCoeff();
  if (alpha_max > chi / 10.0)
    result.warnings.push_back(
        "drive hierarchy violated: max|alpha| > chi_e/10; rotating-wave "
        "leakage will be significant");

  const DriveSet drives =
      synthesize_drives(spectrum, config.h_tilde, config.omega_swap,
                        config.f4_tones, config.compensate_stark);
  const ElementTables tables = compute_elements(spectrum, config.n_a);

  // code states on the dressed g branch with c in its ground state
  const int dim = 4 * (config.n_a + 1);
  LogicalPair pair;
  pair.psi0 = Vector::Zero(dim);
  pair.psi1 = Vector::Zero(dim);
  for (int n = 0; n < code.dim(); ++n) {
    pair.psi0(4 * n) = code.psi0(n);
    pair.psi1(4 * n) = code.psi1(n);
  }
  const BranchSet init = initial_branches(pair);
  const Matrix starts[3] = {init.r00, init.r11, init.r10};

  const int npts = int(tgrid.size());
  std::vector<std::vector<Matrix>> grid_states(3);

  const int branch_threads = std::min(3, omp_get_max_threads());
#pragma omp parallel for schedule(static) num_threads(branch_threads)
  for (int b = 0; b < 3; ++b) {
    CircuitRhs rhs;
    rhs.init(config, spectrum, tables, drives);
    Matrix rho = starts[b];
    grid_states[b].push_back(rho);
    for (int g = 0; g + 1 < npts; ++g) {
      const double span = tgrid(g + 1) - tgrid(g);
      const int steps =
          std::max(1, int(std::lround(span * config.steps_per_us)));
      const double hstep = span / steps;
      rk4_integrate([&rhs](double t, const Matrix& r, Matrix& o) { rhs(t, r, o); },
                    rho, tgrid(g), hstep, steps);
      if (!rho.allFinite())
        throw numerical_error("simulate_circuit: integration diverged near t = " +
                              std::to_string(tgrid(g + 1)));
      grid_states[b].push_back(rho);
    }
  }

  for (int b = 0; b < 3; ++b) result.final_states[b] = grid_states[b].back();
  result.curve.tgrid = tgrid;
  result.curve.values.resize(npts);
  result.curve.baseline.resize(npts);
  result.curve_plain = result.curve;
  for (int g = 0; g < npts; ++g) {
    const BranchSet at{grid_states[0][g], grid_states[1][g],
                       grid_states[2][g]};
    result.curve.values(g) = modified_average_fidelity(pair, at);
    result.curve_plain.values(g) = average_fidelity(pair, at);
    result.curve.baseline(g) = break_even(tgrid(g), config.kappa);
    result.curve_plain.baseline(g) = result.curve.baseline(g);
  }
  return result;
}

RealVector b_relaxation_probe(const CircuitConfig& config,
                              const RealVector& tgrid) {
  config.validate();
  require(tgrid.size() >= 2, "b_relaxation_probe: need at least two times");
  const DressedSpectrum spectrum = coupler_spectrum(config.coupler);
  const ElementTables tables = compute_elements(spectrum, config.n_a);

  const DriveSet swap_only =
      synthesize_drives(spectrum, Matrix::Zero(1, 1), config.omega_swap,
                        config.f4_tones, config.compensate_stark);

  CircuitRhs rhs;
  rhs.init(config, spectrum, tables, swap_only);
  const int dim = 4 * (config.n_a + 1);
  Matrix rho = Matrix::Zero(dim, dim);
  rho(rhs.idx(0, 1, 0), rhs.idx(0, 1, 0)) = 1.0;  // |~0, e, gc>

  RealVector p_excited(tgrid.size());
  auto record = [&](int g) {
    double p = 0.0;
    for (int n = 0; n <= config.n_a; ++n)
      for (int sc = 0; sc < 2; ++sc)
        p += rho(rhs.idx(n, 1, sc), rhs.idx(n, 1, sc)).real();
    p_excited(g) = p;
  };
  record(0);
  for (int g = 0; g + 1 < tgrid.size(); ++g) {
    const double span = tgrid(g + 1) - tgrid(g);
    const int steps = std::max(1, int(std::lround(span * config.steps_per_us)));
    rk4_integrate([&rhs](double t, const Matrix& r, Matrix& o) { rhs(t, r, o); },
                  rho, tgrid(g), span / steps, steps);
    record(g + 1);
  }
  return p_excited;
}

FluxWaveforms synthesize_flux_waveforms(const DriveSet& drives,
                                        const FluxWaveformParams& params,
                                        const RealVector& t_us) {
  require(params.phi_a > 0.0 && params.phi_b > 0.0 && params.phi_c > 0.0,
          "synthesize_flux_waveforms: zero participation phases");
  require(params.g_ab1 != 0.0 && params.g_bc1 != 0.0 && params.g_ab2 != 0.0,
          "synthesize_flux_waveforms: zero pump coefficients");

  FluxWaveforms out;
  out.t_us = t_us;
  out.eps1.resize(t_us.size());
  out.eps2.resize(t_us.size());
  const double c_ab1 = 1.0 / (params.phi_a * params.phi_b * params.g_ab1);
  const double c_bc1 = 1.0 / (params.phi_b * params.phi_c * params.g_bc1);
  const double c_ab2 =
      2.0 / (params.phi_a * params.phi_a * params.phi_b * params.g_ab2);
  for (int i = 0; i < t_us.size(); ++i) {
    const double t = t_us(i);
    const cxd f1 = drives.sample(0, t);
    const cxd f2 = drives.sample(1, t);
    const cxd f3 = drives.sample(2, t);
    const cxd f4 = drives.sample(3, t);
    const cxd at = std::exp(-2.0 * imag_unit * params.omega_a * t) * f1 + f2;
    const cxd bc = std::exp(imag_unit * (params.omega_c - params.omega_a) * t) * f4;
    out.eps1(i) = -2.0 * (c_ab1 * at + c_bc1 * bc).real();
    out.eps2(i) =
        -2.0 * (c_ab2 * std::exp(imag_unit * params.omega_a * t) * f3).real();
  }
  return out;
}

}  // namespace aqec
