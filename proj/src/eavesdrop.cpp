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

#include "qblackwell/eavesdrop.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qbw {

QuantumChannel effective_channel(const EveScenario& s) {
  if (!s.eve) throw InvariantError("scenario has no eavesdropper");
  return compose(*s.eve, s.honest);
}

namespace {

struct Deployment {
  Povm povm;
  double p_honest;
  double p_tampered;
};

Deployment deploy(const Ensemble& ens, const QuantumChannel& honest, const QuantumChannel& tampered) {
  const auto best = discriminate_through_channel(ens, honest);
  if (best.status != sdp::Status::optimal || !best.povm) {
    throw ConvergenceError("could not find the honest-optimal measurement");
  }
  const double p_t = success_probability(through_channel(ens, tampered), *best.povm);
  return {*best.povm, best.p_max, p_t};
}

}  // namespace

DetectionEnsemble detection_ensemble(const QuantumChannel& honest, const QuantumChannel& eve,
                                     const DetectionOptions& options) {
  if (honest.dim() != eve.dim()) throw InvariantError("honest and eavesdropper channels must have equal dimension");
  const QuantumChannel tampered = compose(eve, honest);
  const int d = honest.dim();

  const Ensemble bell = bell_ensemble(d, 2);
  const auto dep = deploy(bell, honest, tampered);
  if (dep.p_honest - dep.p_tampered >= 10.0 * options.tol) {
    return {bell, dep.p_honest, dep.p_tampered, dep.p_honest - dep.p_tampered};
  }

  std::optional<DetectionEnsemble> best;
  for (int k : {2, d * d}) {
    WitnessOptions wo;
    wo.k = k;
    wo.restarts = options.restarts;
    wo.seed = options.seed;
    wo.tol = options.tol;
    const auto w = find_witness(honest, tampered, wo);
    if (!w) continue;
    const auto found = deploy(w->ensemble, honest, tampered);
    const double gap = found.p_honest - found.p_tampered;
    if (gap >= 10.0 * options.tol && (!best || gap > best->gap)) {
      best = DetectionEnsemble{w->ensemble, found.p_honest, found.p_tampered, gap};
      break;
    }
  }
  if (!best) throw NoGapError("no ensemble separates the honest line from the tampered one");
  return *best;
}

std::string_view to_string(Decision decision) {
  switch (decision) {
    case Decision::honest:
      return "honest";
    case Decision::tampered:
      return "tampered";
    case Decision::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

DetectionReport decide(int successes, int n, double p_honest, double p_tampered) {
  if (n < 1) throw InvariantError("signal count must be at least 1");
  if (successes < 0 || successes > n) throw InvariantError("success count must lie in [0, N]");
  DetectionReport r;
  r.successes = successes;
  r.signals = n;
  r.analytic_p_honest = p_honest;
  r.analytic_p_tampered = p_tampered;
  r.empirical_success_rate = static_cast<double>(successes) / n;
  r.standard_error = std::sqrt(std::max(0.0, p_honest * (1.0 - p_honest)) / n);

  const double floor = 1e-12;
  const double ph = std::clamp(p_honest, floor, 1.0 - floor);
  const double pt = std::clamp(p_tampered, floor, 1.0 - floor);
  const double rate = r.empirical_success_rate;
  const double hit = std::log(ph / pt);
  const double miss = std::log((1.0 - pt) / (1.0 - ph));
  r.log_likelihood_ratio = n * (rate * hit - (1.0 - rate) * miss);

  if (std::abs(ph - pt) < 1e-12) {
    r.threshold_rate = ph;
    r.decision = Decision::inconclusive;
    return r;
  }
  r.threshold_rate = miss / (hit + miss);
  const double se = std::sqrt(r.threshold_rate * (1.0 - r.threshold_rate) / n);
  r.z_score = se > 0.0 ? (rate - r.threshold_rate) / se : 0.0;
  if (std::abs(rate - r.threshold_rate) < 2.0 * se) {
    r.decision = Decision::inconclusive;
  } else {
    r.decision = r.log_likelihood_ratio > 0.0 ? Decision::honest : Decision::tampered;
  }
  return r;
}

DetectionReport simulate(const EveScenario& s, const DetectionOptions& options) {
  if (s.signals < 1) throw InvariantError("signal count must be at least 1");
  const int d = s.honest.dim();
  for (const auto* ch : {&s.eve, &s.suspect}) {
    if (*ch && (*ch)->dim() != d) throw InvariantError("eavesdropper dimension must equal the honest channel dimension");
  }
  const QuantumChannel hypothesis = s.eve ? *s.eve : s.suspect ? *s.suspect : depolarizing(0.0, d);
  const QuantumChannel tampered = compose(hypothesis, s.honest);
  const Ensemble ens = s.ensemble ? *s.ensemble : detection_ensemble(s.honest, hypothesis, options).ensemble;
  if (ens.system_dim() != d) throw InvariantError("ensemble system dimension must equal the channel dimension");

  const auto dep = deploy(ens, s.honest, tampered);
  const QuantumChannel actual = s.eve ? tampered : s.honest;
  const Ensemble received = through_channel(ens, actual);

  // Born probabilities of each outcome j given each sent label k.
  const std::size_t kk = ens.size();
  std::vector<std::vector<double>> outcome(kk, std::vector<double>(kk));
  for (std::size_t k = 0; k < kk; ++k) {
    double total = 0.0;
    for (std::size_t j = 0; j < kk; ++j) {
      total += outcome[k][j] = std::max(0.0, real_trace_product(dep.povm[j], received[k].state.matrix()));
    }
    for (auto& p : outcome[k]) p /= total;
  }
  std::vector<double> priors;
  for (const auto& m : ens.members()) priors.push_back(m.prob);

  Rng rng(s.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](const std::vector<double>& p) {
    double u = unit(rng);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (u < p[i]) return i;
      u -= p[i];
    }
    return p.size() - 1;
  };
  int successes = 0;
  for (int t = 0; t < s.signals; ++t) {
    const std::size_t k = draw(priors);
    if (draw(outcome[k]) == k) ++successes;
  }
  return decide(successes, s.signals, dep.p_honest, dep.p_tampered);
}

}  // namespace qbw
