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

#include "diagraph/mace.hpp"

#include <cmath>
#include <future>

#include "diagraph/error.hpp"
#include "diagraph/rng.hpp"

namespace diagraph {
namespace {

struct Params {
  std::vector<double> theta;
  std::vector<std::vector<double>> xi;
};

struct Run {
  Params params;
  std::vector<std::vector<double>> posteriors;
  std::vector<double> trace;
};

class Estimator {
 public:
  Estimator(const AnnotationMatrix& m, double smoothing)
      : m_(m),
        N_(m.item_count()),
        n_(m.annotator_count()),
        k_(m.category_count()),
        s_(smoothing) {}

  Run run(std::uint64_t seed, int iterations) const {
    Rng rng(seed);
    Run out;
    Params& p = out.params;
    p.theta.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const double u1 = rng.uniform(), u2 = rng.uniform();
      p.theta[j] = (1.0 + u1) / (2.0 + u1 + u2);
    }
    // Uniform spam distributions keep the run equivariant under relabelling.
    p.xi.assign(n_, std::vector<double>(k_, 1.0 / static_cast<double>(k_)));

    out.posteriors.assign(N_, std::vector<double>(k_, 0.0));
    out.trace.push_back(e_step(p, out.posteriors));
    for (int it = 0; it < iterations; ++it) {
      m_step(p, out.posteriors);
      out.trace.push_back(e_step(p, out.posteriors));
    }
    return out;
  }

 private:
  // Fills posteriors over true labels; returns the MAP objective.
  double e_step(const Params& p, std::vector<std::vector<double>>& post) const {
    double ll = 0.0;
    const double prior = 1.0 / static_cast<double>(k_);
    for (std::size_t i = 0; i < N_; ++i) {
      // Work in log space: long items with confident annotators underflow.
      std::vector<double> logp(k_, std::log(prior));
      for (std::size_t j = 0; j < n_; ++j) {
        const auto a = static_cast<std::size_t>(m_.label(i, j));
        const double spam = (1.0 - p.theta[j]) * p.xi[j][a];
        for (std::size_t t = 0; t < k_; ++t)
          logp[t] += std::log(spam + (a == t ? p.theta[j] : 0.0));
      }
      double mx = logp[0];
      for (double v : logp) mx = std::max(mx, v);
      double z = 0.0;
      for (std::size_t t = 0; t < k_; ++t) {
        post[i][t] = std::exp(logp[t] - mx);
        z += post[i][t];
      }
      for (double& v : post[i]) v /= z;
      ll += mx + std::log(z);
    }
    if (s_ > 0.0) {
      for (std::size_t j = 0; j < n_; ++j) {
        ll += s_ * (std::log(p.theta[j]) + std::log(1.0 - p.theta[j]));
        for (double x : p.xi[j]) ll += s_ * std::log(x);
      }
    }
    return ll;
  }

  void m_step(Params& p, const std::vector<std::vector<double>>& post) const {
    for (std::size_t j = 0; j < n_; ++j) {
      double nonspam = 0.0;
      std::vector<double> spam_counts(k_, 0.0);
      for (std::size_t i = 0; i < N_; ++i) {
        const auto a = static_cast<std::size_t>(m_.label(i, j));
        const double spam = (1.0 - p.theta[j]) * p.xi[j][a];
        // Expected spam indicator, marginalised over the true label.
        double e_spam = 0.0;
        for (std::size_t t = 0; t < k_; ++t) {
          const double total = spam + (a == t ? p.theta[j] : 0.0);
          if (total > 0.0) e_spam += post[i][t] * spam / total;
        }
        nonspam += 1.0 - e_spam;
        spam_counts[a] += e_spam;
      }
      const double N = static_cast<double>(N_);
      p.theta[j] = (nonspam + s_) / (N + 2.0 * s_);
      double total = 0.0;
      for (double c : spam_counts) total += c;
      const double denom = total + static_cast<double>(k_) * s_;
      for (std::size_t a = 0; a < k_; ++a)
        p.xi[j][a] = denom > 0.0 ? (spam_counts[a] + s_) / denom
                                 : 1.0 / static_cast<double>(k_);
    }
  }

  const AnnotationMatrix& m_;
  std::size_t N_, n_, k_;
  double s_;
};

}  // namespace

MaceResult mace(const AnnotationMatrix& m, const MaceConfig& config) {
  if (config.restarts < 1)
    throw Error(ErrorCode::kInvalidArgument, "restarts must be positive");
  if (config.iterations < 0)
    throw Error(ErrorCode::kInvalidArgument, "iterations must be non-negative");
  if (config.restarts > 1 && !config.seed)
    throw Error(ErrorCode::kSeedRequired,
                "a seed is required when running more than one restart");
  const double smoothing =
      config.smoothing.value_or(0.1 / static_cast<double>(m.category_count()));
  if (!(smoothing >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "smoothing must be non-negative");
  const std::uint64_t seed = config.seed.value_or(0);

  const Estimator estimator(m, smoothing);
  std::vector<Run> runs(static_cast<std::size_t>(config.restarts));
  if (config.parallel && config.restarts > 1) {
    std::vector<std::future<Run>> jobs;
    for (int r = 0; r < config.restarts; ++r)
      jobs.push_back(std::async(std::launch::async, [&, r] {
        return estimator.run(derive_seed(seed, static_cast<std::uint64_t>(r)),
                             config.iterations);
      }));
    for (std::size_t r = 0; r < jobs.size(); ++r) runs[r] = jobs[r].get();
  } else {
    for (int r = 0; r < config.restarts; ++r)
      runs[static_cast<std::size_t>(r)] = estimator.run(
          derive_seed(seed, static_cast<std::uint64_t>(r)), config.iterations);
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].trace.back() > runs[best].trace.back()) best = r;

  MaceResult result;
  result.competence = runs[best].params.theta;
  result.spam = runs[best].params.xi;
  result.posteriors = runs[best].posteriors;
  for (const auto& row : result.posteriors) {
    std::size_t arg = 0;
    for (std::size_t t = 1; t < row.size(); ++t)
      if (row[t] > row[arg]) arg = t;
    result.predicted.push_back(static_cast<int>(arg));
  }
  for (auto& run : runs) result.traces.push_back(std::move(run.trace));
  result.log_likelihood = result.traces[best].back();
  result.best_restart = static_cast<int>(best);
  result.restarts = config.restarts;
  result.iterations = config.iterations;
  result.smoothing = smoothing;
  result.seed = seed;
  return result;
}

}  // namespace diagraph
