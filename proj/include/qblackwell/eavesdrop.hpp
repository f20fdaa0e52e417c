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
 * @file eavesdrop.hpp
 * Detecting an eavesdropper who garbles the line.
 *
 * Alice and Bob agree on a channel B and a signal ensemble. An eavesdropper
 * E turns the line into E o B. Bob keeps measuring with the POVM that is
 * optimal for B, so his success rate drops under tampering and a likelihood
 * ratio test on that rate flags the attack.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "qblackwell/blackwell.hpp"

namespace qbw {

/// Raised when no tried ensemble separates the honest and tampered lines.
class NoGapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EveScenario {
  QuantumChannel honest;
  /// The eavesdropper actually on the line; absent for an honest run.
  std::optional<QuantumChannel> eve;
  /// The attack Bob tests against when `eve` is absent. Defaults to the
  /// completely depolarizing channel.
  std::optional<QuantumChannel> suspect;
  /// Signal ensemble; absent means chosen by detection_ensemble.
  std::optional<Ensemble> ensemble;
  int signals = 1000;
  std::uint64_t seed = 1;
};

/// eve o honest. Throws when the scenario has no eve.
QuantumChannel effective_channel(const EveScenario& s);

struct DetectionOptions {
  double tol = 1e-7;
  int restarts = 4;
  std::uint64_t seed = 1;
};

struct DetectionEnsemble {
  Ensemble ensemble;
  double p_honest = 0.0;
  double p_tampered = 0.0;
  double gap = 0.0;
};

/// An ensemble better distinguished through honest than through eve o honest.
/// Tries the orthogonal Bell pair first, then the witness search. Throws
/// NoGapError when the gap stays below 10 tol.
DetectionEnsemble detection_ensemble(const QuantumChannel& honest, const QuantumChannel& eve,
                                     const DetectionOptions& options = {});

enum class Decision { honest, tampered, inconclusive };

std::string_view to_string(Decision decision);

struct DetectionReport {
  double analytic_p_honest = 0.0;
  /// Success of the honest-optimal POVM on the tampered line.
  double analytic_p_tampered = 0.0;
  double empirical_success_rate = 0.0;
  /// sqrt(p_honest (1 - p_honest) / N)
  double standard_error = 0.0;
  /// Successes over N signals.
  int successes = 0;
  int signals = 0;
  /// Rate at which both hypotheses are equally likely, and the distance of
  /// the empirical rate from it in standard errors.
  double threshold_rate = 0.0;
  double z_score = 0.0;
  /// log L(honest) - log L(tampered) of the observed count.
  double log_likelihood_ratio = 0.0;
  Decision decision = Decision::inconclusive;
};

/// Samples `signals` uses of the line. Deterministic given the seed.
DetectionReport simulate(const EveScenario& s, const DetectionOptions& options = {});

/// Likelihood ratio test of `successes` out of `n` between success
/// probabilities p_honest and p_tampered; inconclusive within 2 standard
/// errors of the equal-likelihood rate.
DetectionReport decide(int successes, int n, double p_honest, double p_tampered);

}  // namespace qbw
