// Copyright 2026 The Diagraph Authors
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

// Annotator competence estimation (MACE) by expectation maximisation.
//
// Generative story: every item i has a latent true label T_i drawn uniformly
// from k categories. Annotator j spams with probability 1 - theta_j; a
// non-spamming annotator copies T_i, a spamming one draws from its own
// multinomial xi_j. So
//
//   P(A_ij = a | T_i = t) = theta_j [a == t] + (1 - theta_j) xi_j(a).
//
// The M-step is the MAP update under Beta(s + 1, s + 1) priors on theta_j and
// Dirichlet(s + 1) priors on xi_j, where s is the smoothing constant. The
// objective recorded in the trace is the matching log posterior (log
// likelihood plus log prior, up to a constant), which EM never decreases.

#ifndef DIAGRAPH_MACE_HPP_
#define DIAGRAPH_MACE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "diagraph/agreement.hpp"

namespace diagraph {

struct MaceConfig {
  int restarts = 10;
  int iterations = 50;
  std::optional<double> smoothing;  // default 0.1 / k
  std::optional<std::uint64_t> seed;
  bool parallel = true;
};

struct MaceResult {
  std::vector<double> competence;               // theta_j per annotator
  std::vector<std::vector<double>> spam;        // xi_j, annotators x k
  std::vector<std::vector<double>> posteriors;  // items x k, rows sum to 1
  std::vector<int> predicted;                   // argmax of each posterior row
  /// Objective before the first and after every iteration, per restart.
  std::vector<std::vector<double>> traces;
  double log_likelihood = 0.0;  // final objective of the best restart
  int best_restart = 0;

  // Echo of the effective configuration.
  int restarts = 0;
  int iterations = 0;
  double smoothing = 0.0;
  std::uint64_t seed = 0;
};

/// Errors: kSeedRequired when restarts > 1 and no seed is set;
/// kInvalidArgument for non-positive restarts or negative iterations or
/// smoothing.
MaceResult mace(const AnnotationMatrix& m, const MaceConfig& config = {});

}  // namespace diagraph

#endif  // DIAGRAPH_MACE_HPP_
