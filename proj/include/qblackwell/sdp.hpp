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
 * @file sdp.hpp
 * Small dense complex semidefinite programs.
 *
 * Primal form, over Hermitian PSD blocks X = (X_1, ..., X_B):
 *
 *     maximize   sum_b Re Tr(C_b X_b)
 *     subject to sum_b Re Tr(A_ib X_b) = b_i,   X_b >= 0
 *
 * with dual  minimize b^T y  s.t.  Z = sum_i y_i A_i - C >= 0.
 *
 * The solver is an infeasible-start primal-dual path-following method using
 * the HKM search direction with a Mehrotra predictor-corrector, working
 * directly on complex Hermitian blocks. Data are pre-scaled (each
 * constraint and the objective to unit spectral norm) and every tolerance
 * below refers to the scaled problem.
 *
 * Feasibility problems are solved through an always-feasible phase-one
 * program that minimizes the l1 constraint violation. Its dual optimum is
 * a Farkas certificate y with A^*(y) >= 0 and b^T y < 0 whenever the
 * constraint set is empty.
 */

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qblackwell/numerics.hpp"

namespace qbw::sdp {

enum class Sense { maximize, feasibility };

enum class Status { optimal, infeasible, indeterminate };

std::string_view to_string(Status status);

struct Block {
  std::string label;
  int dim = 0;
};

/// One block's coefficient in a linear functional.
struct Term {
  std::size_t block = 0;
  CMatrix coeff;
};

struct Constraint {
  std::vector<Term> terms;
  double rhs = 0.0;
};

class Problem {
 public:
  explicit Problem(Sense sense = Sense::maximize) : sense_(sense) {}

  /// Adds a Hermitian PSD variable block; returns its index.
  std::size_t add_block(std::string label, int dim);

  void set_objective(std::size_t block, const CMatrix& coeff);

  /// sum_t Re Tr(coeff_t X_{block_t}) = rhs
  void add_constraint(std::vector<Term> terms, double rhs);

  Sense sense() const { return sense_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  /// Objective coefficient per block; an empty matrix means zero.
  const std::vector<CMatrix>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

 private:
  void check_term(std::size_t block, const CMatrix& coeff) const;

  Sense sense_;
  std::vector<Block> blocks_;
  std::vector<CMatrix> objective_;
  std::vector<Constraint> constraints_;
};

struct Options {
  double tol = 1e-10;                // target for residuals and gap
  double accept_tol = 1e-7;          // contract: looser results are not optimal
  double certificate_margin = 1e-7;  // minimum Farkas margin for infeasible
  int max_iter = 120;
};

struct Residuals {
  double primal = 0.0;  // ||A(X) - b||_2
  double dual = 0.0;    // ||A^*(y) - C - Z||_F
  double gap = 0.0;     // |primal objective - dual objective|
};

/// Separating functional proving primal infeasibility: functional =
/// A^*(multipliers) is PSD blockwise while b^T multipliers = -margin < 0.
struct Certificate {
  std::vector<CMatrix> functional;
  RVector multipliers;
  double margin = 0.0;
};

struct Solution {
  Status status = Status::indeterminate;
  std::vector<CMatrix> primal;
  double objective = 0.0;
  double dual_objective = 0.0;
  RVector dual;
  std::vector<CMatrix> dual_slack;
  std::optional<Certificate> certificate;
  Residuals residuals;
  int iterations = 0;
};

/// Solves the problem. Deterministic for identical inputs and options.
/// Throws IllPosedError for malformed problems (no blocks, no constraints in
/// a maximization, duplicated constraints with different right-hand sides).
Solution solve(const Problem& problem, const Options& options = {});

/// Running totals over every solve() in the process. An optimal solve
/// violates the contract when a residual exceeds accept_tol, a primal block
/// has an eigenvalue below -accept_tol, or the primal objective exceeds the
/// dual one by more than accept_tol; an infeasible one when its certificate
/// margin is below certificate_margin.
struct Audit {
  long solves = 0;
  long optimal = 0;
  long infeasible = 0;
  long indeterminate = 0;
  long contract_violations = 0;
  double worst_primal = 0.0;
  double worst_dual = 0.0;
  double worst_gap = 0.0;
};

Audit audit();
void reset_audit();

/// Optimum of sum_k Re Tr(Pi_k N_k) over POVMs {Pi_k}.
struct PovmMaximum {
  Status status = Status::indeterminate;
  double value = 0.0;
  std::vector<CMatrix> povm;
  /// Dual certificate Y with Y >= N_k for all k and Tr Y = value.
  CMatrix dual;
  Residuals residuals;
};

/// Maximizes sum_k Tr(Pi_k N_k) over POVMs. The dual is min Tr(Y) subject to
/// Y >= N_k for every k. The returned POVM is polished to resolve the
/// identity to machine precision.
PovmMaximum povm_maximize(const std::vector<CMatrix>& targets, const Options& options = {});

/// Plain-text dump of a problem (labels, dims, coefficient matrices).
void dump(const Problem& problem, std::ostream& os);

}  // namespace qbw::sdp
