// Copyright 2026 The qblackwell Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file io.hpp
 * JSON file formats.
 *
 * Complex numbers are [re, im] pairs (plain numbers are read as real) and
 * matrices are row-major nested arrays. Every number written is rounded to
 * 12 significant digits. Malformed input raises InvariantError naming the
 * offending field.
 *
 *   matrix     [[z, ...], ...]
 *   state      {"dims": [d1, ...], "matrix": matrix}
 *   channel    {"dim": D, "kraus": [matrix, ...]}
 *              or {"dim": D, "zoo": name, "param": x} with name one of
 *              identity, depolarizing, amplitude_damping, dephasing;
 *              {"zoo": "unitary", "matrix": matrix};
 *              {"zoo": "replacer", "state": state}
 *   ensemble   {"dims": [D, d_anc], "members": [{"prob": p, "state": matrix}, ...]}
 *   povm       {"dims": [D, d_anc], "elements": [matrix, ...]}
 *   operators  {"dim": n, "operators": [matrix, ...]}
 *   scenario   {"honest": channel,
 *               "eve": channel | [{"weight": w, "channel": channel}, ...],
 *               "suspect": channel, "ensemble": ensemble | "auto",
 *               "signals": N, "seed": S}
 */

#pragma once

#include <json.hpp>

#include "qblackwell/blackwell.hpp"
#include "qblackwell/eavesdrop.hpp"

namespace qbw::io {

using Json = nlohmann::json;

inline constexpr int kFormat = 1;

/// Rounds to 12 significant digits.
double round12(double x);

Json to_json(const CMatrix& m);
Json to_json(const DensityMatrix& rho);
Json to_json(const QuantumChannel& ch);
Json to_json(const Ensemble& ens);
Json to_json(const Povm& povm, const std::vector<int>& dims);
Json to_json(const HermitianSet& m);
Json to_json(const Discrimination& d, const std::vector<int>& dims);
Json to_json(const HermitianTransform& t);
Json to_json(const GarbleResult& g);
Json to_json(const Witness& w);
Json to_json(const ComparisonReport& r);
Json to_json(const DetectionReport& r);

CMatrix matrix_from_json(const Json& j);
DensityMatrix state_from_json(const Json& j);
QuantumChannel channel_from_json(const Json& j);
Ensemble ensemble_from_json(const Json& j);
Povm povm_from_json(const Json& j);
HermitianSet operators_from_json(const Json& j);
EveScenario scenario_from_json(const Json& j);

}  // namespace qbw::io
