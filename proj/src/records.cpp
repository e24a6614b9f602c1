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

#include "aqec/records.hpp"

#include <fstream>
#include <iomanip>

namespace aqec {

using nlohmann::json;

namespace {

json complex_vector_to_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i)
    out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Vector complex_vector_from_json(const json& j) {
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    v(int(i)) = cxd(j[i][0].get<double>(), j[i][1].get<double>());
  return v;
}

json real_vector_to_json(const RealVector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

RealVector real_vector_from_json(const json& j) {
  RealVector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(int(i)) = j[i].get<double>();
  return v;
}

}  // namespace

json to_json(const SearchConfig& c) {
  return json{{"cutoff", c.cutoff},
              {"distance", c.distance},
              {"all_to_all", c.all_to_all},
              {"include_diagonals", c.include_diagonals},
              {"kappa_mhz", c.kappa_mhz},
              {"kappa_q_mhz", c.kappa_q_mhz},
              {"t_final_us", c.t_final_us},
              {"bound_mhz", c.bound_mhz},
              {"lr", c.lr},
              {"lr_final", c.lr_final},
              {"iters", c.iters},
              {"seed", c.seed},
              {"steps_per_unit", c.steps_per_unit},
              {"modified_objective", c.modified_objective},
              {"checkpoint_every", c.checkpoint_every}};
}

SearchConfig config_from_json(const json& j) {
  SearchConfig c;
  c.cutoff = j.at("cutoff").get<int>();
  c.distance = j.at("distance").get<int>();
  c.all_to_all = j.at("all_to_all").get<bool>();
  c.include_diagonals = j.at("include_diagonals").get<bool>();
  c.kappa_mhz = j.at("kappa_mhz").get<double>();
  c.kappa_q_mhz = j.at("kappa_q_mhz").get<double>();
  c.t_final_us = j.at("t_final_us").get<double>();
  c.bound_mhz = j.at("bound_mhz").get<double>();
  c.lr = j.at("lr").get<double>();
  c.lr_final = j.at("lr_final").get<double>();
  c.iters = j.at("iters").get<int>();
  c.seed = j.at("seed").get<unsigned long long>();
  c.steps_per_unit = j.at("steps_per_unit").get<int>();
  c.modified_objective = j.at("modified_objective").get<bool>();
  c.checkpoint_every = j.at("checkpoint_every").get<int>();
  return c;
}

json to_json(const SearchResult& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "search_result";
  j["config"] = to_json(r.config);
  j["labels"] = r.labels;
  j["alpha_rad_per_us"] = real_vector_to_json(r.alpha);
  j["psi0"] = complex_vector_to_json(r.pair.psi0);
  j["psi1"] = complex_vector_to_json(r.pair.psi1);
  j["fidelity_history"] = r.fidelity_history;
  j["final_fidelity"] = r.final_fidelity;
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

SearchResult result_from_json(const json& j) {
  require(j.value("schema_version", -1) == kSchemaVersion,
          "record: unsupported schema version");
  require(j.value("kind", "") == "search_result",
          "record: not a search result");
  SearchResult r;
  r.config = config_from_json(j.at("config"));
  r.labels = j.at("labels").get<std::vector<std::string>>();
  r.alpha = real_vector_from_json(j.at("alpha_rad_per_us"));
  r.pair.psi0 = complex_vector_from_json(j.at("psi0"));
  r.pair.psi1 = complex_vector_from_json(j.at("psi1"));
  r.fidelity_history = j.at("fidelity_history").get<std::vector<double>>();
  r.final_fidelity = j.at("final_fidelity").get<double>();
  r.wall_seconds = j.at("wall_seconds").get<double>();
  return r;
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  require(bool(out), "cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  require(bool(out), "write failed: " + path);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), "cannot open: " + path);
  json j;
  in >> j;
  return j;
}

void save_result(const SearchResult& result, const std::string& path) {
  save_json(to_json(result), path);
}

SearchResult load_result(const std::string& path) {
  return result_from_json(load_json(path));
}

LindbladModel model_from_result(const SearchResult& result) {
  const SearchConfig& c = result.config;
  const HamiltonianBasis basis =
      c.all_to_all ? all_to_all_basis(c.cutoff, c.include_diagonals)
                   : distance_d_basis(c.cutoff, c.distance);
  require(basis.size() == int(result.labels.size()),
          "record: basis size does not match labels");
  for (int j = 0; j < basis.size(); ++j)
    require(basis.terms[j].label == result.labels[size_t(j)],
            "record: label mismatch at term " + std::to_string(j));
  return to_model(basis, result.alpha,
                  {{mhz_to_angular(c.kappa_mhz), mode_loss_op(c.cutoff)},
                   {mhz_to_angular(c.kappa_q_mhz), qubit_loss_op(c.cutoff)}});
}

namespace {

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  require(bool(out), "cannot open for writing: " + path);
  out << std::setprecision(9);
  return out;
}

}  // namespace

void write_curve_csv(const std::string& path, const FidelityCurve& curve,
                     const RealVector* modified) {
  auto out = open_csv(path);
  out << "t_us,avg_fidelity";
  if (modified) out << ",modified_avg_fidelity";
  out << ",break_even\n";
  for (int g = 0; g < curve.tgrid.size(); ++g) {
    out << curve.tgrid(g) << "," << curve.values(g);
    if (modified) out << "," << (*modified)(g);
    out << "," << curve.baseline(g) << "\n";
  }
}

void write_bloch_csv(const std::string& path, const RealMatrix& grid) {
  auto out = open_csv(path);
  out << "theta,phi,fidelity\n";
  const double pi = two_pi / 2.0;
  for (int i = 0; i < grid.rows(); ++i) {
    const double theta = pi * double(i) / double(grid.rows() - 1);
    for (int j = 0; j < grid.cols(); ++j) {
      const double phi = two_pi * double(j) / double(grid.cols());
      out << theta << "," << phi << "," << grid(i, j) << "\n";
    }
  }
}

void write_wigner_csv(const std::string& path, const RealVector& xgrid,
                      const RealVector& pgrid, const RealMatrix& w) {
  auto out = open_csv(path);
  out << "x,p,w\n";
  for (int i = 0; i < xgrid.size(); ++i)
    for (int j = 0; j < pgrid.size(); ++j)
      out << xgrid(i) << "," << pgrid(j) << "," << w(i, j) << "\n";
}

void write_bandwidth_csv(const std::string& path, const BandwidthScan& scan) {
  auto out = open_csv(path);
  out << "g2sq_over_g1sq,d2_over_d1,log10_bandwidth\n";
  for (int i = 0; i < scan.g2sq_over_g1sq.size(); ++i)
    for (int j = 0; j < scan.d2_over_d1.size(); ++j)
      out << scan.g2sq_over_g1sq(i) << "," << scan.d2_over_d1(j) << ","
          << scan.log10_bandwidth(i, j) << "\n";
}

void write_waveforms_csv(const std::string& path, const FluxWaveforms& wf) {
  auto out = open_csv(path);
  out << "t_us,eps1,eps2\n";
  for (int i = 0; i < wf.t_us.size(); ++i)
    out << wf.t_us(i) << "," << wf.eps1(i) << "," << wf.eps2(i) << "\n";
}

json run_record(const std::string& command, const json& config_echo,
                const std::vector<std::string>& outputs, double wall_seconds,
                unsigned long long seed) {
  return json{{"schema_version", kSchemaVersion},
              {"kind", "run_record"},
              {"command", command},
              {"config", config_echo},
              {"outputs", outputs},
              {"timings", {{"wall_seconds", wall_seconds}}},
              {"seed", seed}};
}

}  // namespace aqec
