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

#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include "qblackwell/io.hpp"

namespace qbw::cli {

namespace {

using io::Json;

struct Outcome {
  Json body;
  int code = kOk;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvariantError("cannot open input file " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvariantError(path + " is not valid JSON: " + e.what());
  }
}

int code_for(GarbleStatus s) {
  switch (s) {
    case GarbleStatus::feasible:
      return kOk;
    case GarbleStatus::infeasible:
      return kInfeasible;
    case GarbleStatus::indeterminate:
      return kIndeterminate;
  }
  return kIndeterminate;
}

int code_for(sdp::Status s) { return s == sdp::Status::optimal ? kOk : kIndeterminate; }

std::vector<int> transform_dims(const std::vector<int>& given, int n) {
  if (!given.empty()) return given;
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw InvariantError("operator dimension is not a square; pass --dims D,d_anc");
  return {d, d};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Blackwell order and minimum-error discrimination toolkit", "qbw"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  double tol = 1e-7;
  app.add_option("--out", out_path, "Write the JSON result to this file");
  app.add_option("--tol", tol, "Feasibility and witness tolerance")->check(CLI::PositiveNumber);

  std::function<Outcome()> action;

  // channel choi|apply|compose
  auto* channel = app.add_subcommand("channel", "Channel representations");
  channel->require_subcommand(1);
  std::string ch_path, state_path, e_path, b_path;
  auto* choi_cmd = channel->add_subcommand("choi", "Choi state of a channel");
  choi_cmd->add_option("--channel", ch_path)->required();
  choi_cmd->callback([&] {
    action = [&] { return Outcome{{{"choi", io::to_json(choi(io::channel_from_json(read_json(ch_path))))}}}; };
  });
  auto* apply_cmd = channel->add_subcommand("apply", "Apply a channel to the first factor of a state");
  apply_cmd->add_option("--channel", ch_path)->required();
  apply_cmd->add_option("--state", state_path)->required();
  apply_cmd->callback([&] {
    action = [&] {
      const auto ch = io::channel_from_json(read_json(ch_path));
      const auto rho = io::state_from_json(read_json(state_path));
      const DensityMatrix result =
          rho.dim() == ch.dim() ? DensityMatrix(ch(rho.matrix()), rho.dims()) : apply_to_subsystem(ch, rho);
      return Outcome{{{"state", io::to_json(result)}}};
    };
  });
  auto* compose_cmd = channel->add_subcommand("compose", "The channel e after b");
  compose_cmd->add_option("--e", e_path)->required();
  compose_cmd->add_option("--b", b_path)->required();
  compose_cmd->callback([&] {
    action = [&] {
      const auto e = io::channel_from_json(read_json(e_path));
      const auto b = io::channel_from_json(read_json(b_path));
      return Outcome{{{"channel", io::to_json(compose(e, b))}}};
    };
  });

  // discriminate
  std::string ens_path, method = "auto";
  auto* disc = app.add_subcommand("discriminate", "Optimal success probability and POVM");
  disc->add_option("--ensemble", ens_path)->required();
  disc->add_option("--channel", ch_path, "Send the system half through this channel first");
  disc->add_option("--method", method)->check(CLI::IsMember({"auto", "sdp"}));
  disc->callback([&] {
    action = [&] {
      auto ens = io::ensemble_from_json(read_json(ens_path));
      if (!ch_path.empty()) ens = through_channel(ens, io::channel_from_json(read_json(ch_path)));
      const auto m = method == "sdp" ? DiscriminationMethod::sdp : DiscriminationMethod::automatic;
      const auto d = min_error_discriminate(ens, m);
      return Outcome{io::to_json(d, ens.dims()), code_for(d.status)};
    };
  });

  // payoff
  std::string ops_path;
  auto* pay = app.add_subcommand("payoff", "Maximal payoff with the channel's Choi state and |I_D>");
  pay->add_option("--channel", ch_path)->required();
  pay->add_option("--operators", ops_path)->required();
  pay->callback([&] {
    action = [&] {
      const auto ch = io::channel_from_json(read_json(ch_path));
      const auto m = io::operators_from_json(read_json(ops_path));
      const auto r = payoff_max_choi(ch, m);
      Json body = {{"status", std::string(sdp::to_string(r.status))}, {"r_max", io::round12(r.value)}};
      body["povm"] = r.status == sdp::Status::optimal ? io::to_json(Povm(r.povm), {ch.dim(), ch.dim()}) : Json(nullptr);
      return Outcome{body, code_for(r.status)};
    };
  });

  // transform
  std::string epsilon = "auto";
  std::vector<int> dims;
  auto* tr = app.add_subcommand("transform", "Ensemble from Hermitian operators");
  tr->add_option("--operators", ops_path)->required();
  tr->add_option("--epsilon", epsilon, "auto or a number");
  tr->add_option("--dims", dims, "D,d_anc (default: square split)")->delimiter(',')->expected(2);
  tr->callback([&] {
    action = [&] {
      const auto m = io::operators_from_json(read_json(ops_path));
      std::optional<double> eps;
      if (epsilon != "auto") {
        try {
          std::size_t used = 0;
          eps = std::stod(epsilon, &used);
          if (used != epsilon.size()) throw std::invalid_argument(epsilon);
        } catch (const std::logic_error&) {
          throw InvariantError("--epsilon must be \"auto\" or a number");
        }
      }
      return Outcome{io::to_json(hermitians_to_ensemble(m, transform_dims(dims, m.dim()), eps))};
    };
  });

  // garble-check
  std::string a_path;
  auto* garble = app.add_subcommand("garble-check", "Is there a channel E with A = E o B?");
  garble->add_option("--a", a_path)->required();
  garble->add_option("--b", b_path)->required();
  garble->callback([&] {
    action = [&] {
      const auto r = garble_check(io::channel_from_json(read_json(a_path)), io::channel_from_json(read_json(b_path)), tol);
      return Outcome{io::to_json(r), code_for(r.status)};
    };
  });

  // compare
  int restarts = 4;
  std::uint64_t seed = 1;
  bool no_witness = false;
  auto* cmp = app.add_subcommand("compare", "Blackwell-order verdict between two channels");
  cmp->add_option("--a", a_path)->required();
  cmp->add_option("--b", b_path)->required();
  cmp->add_option("--restarts", restarts)->check(CLI::NonNegativeNumber);
  cmp->add_option("--seed", seed);
  cmp->add_flag("--no-witness", no_witness, "Skip the witness search");
  cmp->callback([&] {
    action = [&] {
      CompareOptions o;
      o.tol = tol;
      o.restarts = restarts;
      o.seed = seed;
      o.search_witnesses = !no_witness;
      const auto r = compare(io::channel_from_json(read_json(a_path)), io::channel_from_json(read_json(b_path)), o);
      return Outcome{io::to_json(r), r.verdict == Verdict::indeterminate ? kIndeterminate : kOk};
    };
  });

  // witness
  int k = 2, d_anc = 0;
  auto* wit = app.add_subcommand("witness", "Ensemble better distinguished after A than after B");
  wit->add_option("--a", a_path)->required();
  wit->add_option("--b", b_path)->required();
  wit->add_option("--k", k)->check(CLI::Range(2, 64));
  wit->add_option("--d-anc", d_anc, "Ancilla dimension (default D)")->check(CLI::Range(1, 16));
  wit->add_option("--restarts", restarts)->check(CLI::NonNegativeNumber);
  wit->add_option("--seed", seed);
  wit->callback([&] {
    action = [&] {
      WitnessOptions o;
      o.k = k;
      o.d_anc = d_anc;
      o.restarts = restarts;
      o.seed = seed;
      o.tol = tol;
      const auto w = find_witness(io::channel_from_json(read_json(a_path)), io::channel_from_json(read_json(b_path)), o);
      Json body = {{"found", w.has_value()}};
      body["witness"] = w ? io::to_json(*w) : Json(nullptr);
      return Outcome{body};
    };
  });

  // eve-demo
  std::string scenario_path;
  auto* eve = app.add_subcommand("eve-demo", "Simulate eavesdropper detection");
  eve->add_option("--scenario", scenario_path)->required();
  eve->callback([&] {
    action = [&] {
      const auto s = io::scenario_from_json(read_json(scenario_path));
      DetectionOptions o;
      o.tol = tol;
      o.seed = s.seed;
      return Outcome{io::to_json(simulate(s, o))};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }

  Outcome result;
  try {
    result = action();
  } catch (const std::invalid_argument& e) {  // InvariantError, IllPosedError
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const Json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const NoGapError& e) {
    err << "indeterminate: " << e.what() << "\n";
    return kIndeterminate;
  } catch (const ConvergenceError& e) {
    err << "indeterminate: " << e.what() << "\n";
    return kIndeterminate;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }

  Json doc = {{"format", io::kFormat}};
  doc.update(result.body);
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f || !(f << text)) {
      err << "cannot write " << out_path << "\n";
      return kInternal;
    }
  }
  return result.code;
}

}  // namespace qbw::cli
