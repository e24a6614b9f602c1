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

#include <string>

#include <json.hpp>

#include "aqec/circuit.hpp"
#include "aqec/dressed.hpp"
#include "aqec/optimizer.hpp"

namespace aqec {

inline constexpr int kSchemaVersion = 1;

// JSON round-trip of search configurations and results.  Complex amplitudes
// are stored as [re, im] pairs; doubles serialize with enough digits to
// round-trip exactly, so re-ingesting a record reproduces the recorded
// objective bit-for-bit on the same build.
nlohmann::json to_json(const SearchConfig& config);
SearchConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SearchResult& result);
SearchResult result_from_json(const nlohmann::json& j);

void save_result(const SearchResult& result, const std::string& path);
SearchResult load_result(const std::string& path);

// Rebuilds the model recorded in a result (basis from the config, labels
// cross-checked) with the recorded rates.
LindbladModel model_from_result(const SearchResult& result);

// CSV emission; all floating point at 9 significant digits.
void write_curve_csv(const std::string& path, const FidelityCurve& curve,
                     const RealVector* modified = nullptr);
void write_bloch_csv(const std::string& path, const RealMatrix& grid);
void write_wigner_csv(const std::string& path, const RealVector& xgrid,
                      const RealVector& pgrid, const RealMatrix& w);
void write_bandwidth_csv(const std::string& path, const BandwidthScan& scan);
void write_waveforms_csv(const std::string& path, const FluxWaveforms& wf);

// Provenance record accompanying every CLI invocation.
nlohmann::json run_record(const std::string& command,
                          const nlohmann::json& config_echo,
                          const std::vector<std::string>& outputs,
                          double wall_seconds, unsigned long long seed);
void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

}  // namespace aqec
