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

#include <cmath>
#include <numeric>

#include "common.hpp"
#include "generators.hpp"

#include "diagraph/agreement.hpp"
#include "diagraph/mace.hpp"

using namespace diagraph;

namespace {

AnnotationMatrix simulated(std::uint64_t seed, std::size_t items, int k,
                           const std::vector<double>& competence) {
  Rng rng(seed);
  const auto labels = gen::simulate_annotators(rng, items, k, competence);
  std::vector<std::string> cats, anns;
  for (int c = 0; c < k; ++c) cats.push_back("c" + std::to_string(c));
  for (std::size_t a = 0; a < competence.size(); ++a) anns.push_back("a" + std::to_string(a));
  return AnnotationMatrix(cats, anns, labels);
}

}  // namespace

TEST_CASE("mace defaults and result shape") {
  const AnnotationMatrix m = simulated(1, 60, 3, {0.9, 0.8, 0.3});
  MaceConfig config;
  config.seed = 5;
  const MaceResult r = mace(m, config);
  CHECK(r.restarts == 10);
  CHECK(r.iterations == 50);
  CHECK(r.smoothing == doctest::Approx(0.1 / 3));
  CHECK(r.seed == 5);
  CHECK(r.competence.size() == 3);
  CHECK(r.spam.size() == 3);
  REQUIRE(r.traces.size() == 10);
  for (const auto& t : r.traces) CHECK(t.size() == 51);
  CHECK(r.log_likelihood == doctest::Approx(r.traces[static_cast<std::size_t>(r.best_restart)].back()));
  for (const auto& t : r.traces) CHECK(t.back() <= r.log_likelihood + 1e-12);
  for (const auto& row : r.posteriors)
    CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0));
  for (const auto& xi : r.spam)
    CHECK(std::accumulate(xi.begin(), xi.end(), 0.0) == doctest::Approx(1.0));
  for (std::size_t i = 0; i < r.predicted.size(); ++i) {
    const auto& row = r.posteriors[i];
    CHECK(row[static_cast<std::size_t>(r.predicted[i])] ==
          *std::max_element(row.begin(), row.end()));
  }
}

TEST_CASE("mace is deterministic under a seed, parallel or not") {
  const AnnotationMatrix m = simulated(2, 80, 4, {0.95, 0.7, 0.6, 0.2});
  MaceConfig a;
  a.seed = 11;
  MaceConfig b = a;
  b.parallel = false;
  const MaceResult x = mace(m, a), y = mace(m, a), z = mace(m, b);
  CHECK(x.competence == y.competence);
  CHECK(x.traces == z.traces);
  CHECK(x.posteriors == z.posteriors);
  MaceConfig c = a;
  c.seed = 12;
  CHECK(mace(m, c).traces != x.traces);
}

TEST_CASE("mace objective never decreases") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const AnnotationMatrix m = simulated(100 + s, 50, 5, {0.9, 0.6, 0.5, 0.1});
    MaceConfig config;
    config.seed = s;
    config.iterations = 80;
    for (const auto& t : mace(m, config).traces)
      for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] >= t[i - 1] - 1e-9);
  }
  // Without smoothing the objective is the plain marginal likelihood.
  MaceConfig plain;
  plain.seed = 3;
  plain.smoothing = 0.0;
  for (const auto& t : mace(simulated(9, 40, 3, {0.9, 0.8, 0.4}), plain).traces)
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] >= t[i - 1] - 1e-9);
}

TEST_CASE("mace separates reliable from random annotators") {
  const AnnotationMatrix m = simulated(7, 300, 4, {0.95, 0.9, 0.85, 0.0});
  MaceConfig config;
  config.seed = 1;
  const MaceResult r = mace(m, config);
  CHECK(r.competence[3] < 0.2);
  for (int j = 0; j < 3; ++j) CHECK(r.competence[static_cast<std::size_t>(j)] > 0.7);
}

TEST_CASE("mace argument errors") {
  const AnnotationMatrix m = simulated(1, 10, 2, {0.9, 0.9});
  CHECK_THROWS_CODE(mace(m), ErrorCode::kSeedRequired);
  MaceConfig single;
  single.restarts = 1;
  CHECK_NOTHROW(mace(m, single));
  for (auto broken : {MaceConfig{0, 50, {}, 1, true}, MaceConfig{1, -1, {}, 1, true},
                      MaceConfig{1, 10, -0.5, 1, true}})
    CHECK_THROWS_CODE(mace(m, broken), ErrorCode::kInvalidArgument);
}
