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

#include "qblackwell/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace qbw::io {

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InvariantError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

double real_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number()) throw InvariantError(std::string("field \"") + name + "\" must be a number");
  return v.get<double>();
}

int int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) throw InvariantError(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

std::vector<int> dims_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_array() || v.empty()) throw InvariantError(std::string("field \"") + name + "\" must be a nonempty array");
  std::vector<int> dims;
  for (const auto& d : v) {
    if (!d.is_number_integer() || d.get<int>() < 1) throw InvariantError("dimensions must be positive integers");
    dims.push_back(d.get<int>());
  }
  return dims;
}

Complex complex_from_json(const Json& z) {
  if (z.is_number()) return {z.get<double>(), 0.0};
  if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
    return {z[0].get<double>(), z[1].get<double>()};
  }
  throw InvariantError("matrix entries must be numbers or [re, im] pairs");
}

std::vector<CMatrix> matrix_list(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_array() || v.empty()) throw InvariantError(std::string("field \"") + name + "\" must be a nonempty array");
  std::vector<CMatrix> out;
  for (const auto& m : v) out.push_back(matrix_from_json(m));
  return out;
}

Json dims_json(const std::vector<int>& dims) {
  Json out = Json::array();
  for (int d : dims) out.push_back(d);
  return out;
}

}  // namespace

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({number(m(r, c).real()), number(m(r, c).imag())}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const DensityMatrix& rho) { return {{"dims", dims_json(rho.dims())}, {"matrix", to_json(rho.matrix())}}; }

Json to_json(const QuantumChannel& ch) {
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(to_json(k));
  return {{"dim", ch.dim()}, {"kraus", std::move(kraus)}};
}

Json to_json(const Ensemble& ens) {
  Json members = Json::array();
  for (const auto& m : ens.members()) members.push_back({{"prob", number(m.prob)}, {"state", to_json(m.state.matrix())}});
  return {{"dims", dims_json(ens.dims())}, {"members", std::move(members)}};
}

Json to_json(const Povm& povm, const std::vector<int>& dims) {
  Json elements = Json::array();
  for (const auto& e : povm.elements()) elements.push_back(to_json(e));
  return {{"dims", dims_json(dims)}, {"elements", std::move(elements)}};
}

Json to_json(const HermitianSet& m) {
  Json ops = Json::array();
  for (const auto& op : m.operators()) ops.push_back(to_json(op));
  return {{"dim", m.dim()}, {"operators", std::move(ops)}};
}

Json to_json(const Discrimination& d, const std::vector<int>& dims) {
  Json out = {{"status", std::string(sdp::to_string(d.status))}, {"p_max", number(d.p_max)}};
  out["povm"] = d.povm ? to_json(*d.povm, dims) : Json(nullptr);
  if (d.dual) out["dual"] = to_json(*d.dual);
  return out;
}

Json to_json(const HermitianTransform& t) {
  return {{"ensemble", to_json(t.ensemble)}, {"lambda_min", number(t.lambda_min)}, {"epsilon", number(t.epsilon)}};
}

Json to_json(const GarbleResult& g) {
  Json out = {{"status", std::string(to_string(g.status))},
              {"residual", number(g.residual)},
              {"iterations", g.iterations}};
  out["garbling"] = g.garbling ? to_json(*g.garbling) : Json(nullptr);
  out["garbling_choi"] = g.garbling ? to_json(g.garbling->choi()) : Json(nullptr);
  out["certificate"] = g.certificate ? to_json(*g.certificate) : Json(nullptr);
  out["certificate_margin"] = number(g.certificate_margin);
  return out;
}

Json to_json(const Witness& w) {
  return {{"ensemble", to_json(w.ensemble)}, {"p_a", number(w.p_a)}, {"p_b", number(w.p_b)}, {"gap", number(w.gap)}};
}

Json to_json(const ComparisonReport& r) {
  Json out = {{"verdict", std::string(to_string(r.verdict))}, {"a_to_b", to_json(r.a_to_b)}, {"b_to_a", to_json(r.b_to_a)}};
  out["witnesses"] = {{"a_over_b", r.a_over_b ? to_json(*r.a_over_b) : Json(nullptr)},
                      {"b_over_a", r.b_over_a ? to_json(*r.b_over_a) : Json(nullptr)}};
  return out;
}

Json to_json(const DetectionReport& r) {
  return {{"analytic_p_honest", number(r.analytic_p_honest)},
          {"analytic_p_tampered", number(r.analytic_p_tampered)},
          {"empirical_success_rate", number(r.empirical_success_rate)},
          {"standard_error", number(r.standard_error)},
          {"successes", r.successes},
          {"signals", r.signals},
          {"threshold_rate", number(r.threshold_rate)},
          {"z_score", number(r.z_score)},
          {"log_likelihood_ratio", number(r.log_likelihood_ratio)},
          {"decision", std::string(to_string(r.decision))}};
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw InvariantError("matrix must be a nonempty array of nonempty rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
      throw InvariantError("matrix rows must all have the same length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  if (!m.allFinite()) throw InvariantError("matrix entries must be finite");
  return m;
}

DensityMatrix state_from_json(const Json& j) {
  CMatrix m = matrix_from_json(field(j, "matrix"));
  if (j.contains("dims")) return DensityMatrix(std::move(m), dims_field(j, "dims"));
  return DensityMatrix(std::move(m));
}

QuantumChannel channel_from_json(const Json& j) {
  if (!j.is_object()) throw InvariantError("channel must be a JSON object");
  if (j.contains("kraus")) {
    QuantumChannel ch(matrix_list(j, "kraus"));
    if (j.contains("dim") && int_field(j, "dim") != ch.dim()) throw InvariantError("channel \"dim\" disagrees with its Kraus operators");
    return ch;
  }
  if (!j.contains("zoo")) throw InvariantError("channel needs \"kraus\" or \"zoo\"");
  const Json& zoo = j.at("zoo");
  if (!zoo.is_string()) throw InvariantError("field \"zoo\" must be a string");
  const auto name = zoo.get<std::string>();
  if (name == "unitary") return unitary_channel(matrix_from_json(field(j, "matrix")));
  if (name == "replacer") return replacer(state_from_json(field(j, "state")));
  const int d = j.contains("dim") ? int_field(j, "dim") : 2;
  if (name == "identity") return identity_channel(d);
  const double x = real_field(j, "param");
  if (!(x >= 0.0 && x <= 1.0)) throw InvariantError("zoo parameter must lie in [0, 1]", x);
  if (name == "depolarizing") return depolarizing(x, d);
  if (name == "dephasing") return dephasing(x, d);
  if (name == "amplitude_damping") {
    if (d != 2) throw InvariantError("amplitude damping is a qubit channel");
    return amplitude_damping(x);
  }
  throw InvariantError("unknown zoo channel \"" + name + "\"");
}

Ensemble ensemble_from_json(const Json& j) {
  const auto dims = dims_field(j, "dims");
  const Json& ms = field(j, "members");
  if (!ms.is_array() || ms.empty()) throw InvariantError("field \"members\" must be a nonempty array");
  std::vector<EnsembleMember> members;
  for (const auto& m : ms) {
    const Json& st = field(m, "state");
    // Accept a bare matrix or a state object.
    DensityMatrix rho = st.is_object() ? state_from_json(st) : DensityMatrix(matrix_from_json(st));
    members.push_back({real_field(m, "prob"), std::move(rho)});
  }
  return Ensemble(dims, std::move(members));
}

Povm povm_from_json(const Json& j) { return Povm(matrix_list(j, "elements")); }

HermitianSet operators_from_json(const Json& j) {
  HermitianSet m(matrix_list(j, "operators"));
  if (j.contains("dim") && int_field(j, "dim") != m.dim()) throw InvariantError("operators \"dim\" disagrees with the matrices");
  return m;
}

EveScenario scenario_from_json(const Json& j) {
  EveScenario s{channel_from_json(field(j, "honest")), std::nullopt, std::nullopt, std::nullopt};
  if (j.contains("eve") && !j.at("eve").is_null()) {
    const Json& e = j.at("eve");
    if (e.is_array()) {
      std::vector<double> weights;
      std::vector<QuantumChannel> channels;
      for (const auto& part : e) {
        weights.push_back(real_field(part, "weight"));
        channels.push_back(channel_from_json(field(part, "channel")));
      }
      if (channels.empty()) throw InvariantError("eavesdropper mixture must be nonempty");
      s.eve = mix(weights, channels);
    } else {
      s.eve = channel_from_json(e);
    }
  }
  if (j.contains("suspect") && !j.at("suspect").is_null()) s.suspect = channel_from_json(j.at("suspect"));
  if (j.contains("ensemble")) {
    const Json& e = j.at("ensemble");
    if (!(e.is_string() && e.get<std::string>() == "auto")) s.ensemble = ensemble_from_json(e);
  }
  s.signals = int_field(j, "signals");
  if (s.signals < 1) throw InvariantError("field \"signals\" must be at least 1");
  if (j.contains("seed")) {
    const Json& v = j.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw InvariantError("field \"seed\" must be a nonnegative integer");
    }
    s.seed = v.get<std::uint64_t>();
  }
  return s;
}

}  // namespace qbw::io
