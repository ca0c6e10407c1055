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

#include <set>

#include "common.hpp"
#include "generators.hpp"

#include "diagraph/sampling.hpp"

using namespace diagraph;
using testing::id;

TEST_CASE("task layer names") {
  CHECK(parse_task_layer("grouping") == TaskLayer::kGrouping);
  CHECK(parse_task_layer("discourse") == TaskLayer::kRst);
  CHECK(parse_task_layer("rst") == TaskLayer::kRst);
  CHECK_FALSE(parse_task_layer("layout").has_value());
  CHECK(task_layer_name(TaskLayer::kConnectivity) == "connectivity");
}

TEST_CASE("populations per layer") {
  const std::vector<Diagram> corpus = {gen::food_web_diagram(), gen::discourse_diagram()};
  const auto groups = task_population(corpus, TaskLayer::kGrouping);
  // G1 and G2..G13 are innermost; G14 contains groups.
  CHECK(groups.size() == 13);
  for (const auto& t : groups) CHECK(t.unit != "G14");
  const auto g7 = std::find_if(groups.begin(), groups.end(),
                               [](const auto& t) { return t.unit == "G7"; });
  REQUIRE(g7 != groups.end());
  CHECK(g7->key() == "274:G7");
  CHECK(g7->highlight == testing::ids({"B2", "T3"}));

  const auto macro = task_population(corpus, TaskLayer::kMacro);
  CHECK(macro.size() == 2);
  CHECK(macro[0].reference_label == "vertical");

  const auto conn = task_population(corpus, TaskLayer::kConnectivity);
  REQUIRE(conn.size() == 1);
  CHECK(conn[0].unit == "G7->G9:directed");

  const auto rst = task_population(corpus, TaskLayer::kRst);
  REQUIRE(rst.size() == 3);
  CHECK(rst[0].hop_depth == 0);
  CHECK(rst[2].hop_depth == 2);
  CHECK(rst[0].highlight.size() == 6);
}

TEST_CASE("sample sizes") {
  CHECK(sample_size(2560, 0.1) == 256);
  CHECK(sample_size(3, 0.1) == 1);
  CHECK(sample_size(3, 1.0) == 3);
  CHECK(sample_size(10, 0.33) == 3);
  CHECK(sample_size(100, 0.33) == 33);
}

TEST_CASE("sampling is seeded and duplicate free") {
  Rng rng(8);
  std::vector<Diagram> corpus;
  for (int i = 0; i < 30; ++i) corpus.push_back(gen::random_diagram(rng, std::to_string(i)));
  corpus.push_back(gen::food_web_diagram());
  const auto a = sample_agreement_tasks(corpus, TaskLayer::kGrouping, 0.5, 42);
  const auto b = sample_agreement_tasks(corpus, TaskLayer::kGrouping, 0.5, 42);
  const auto c = sample_agreement_tasks(corpus, TaskLayer::kGrouping, 0.5, 43);
  const auto population = task_population(corpus, TaskLayer::kGrouping);
  CHECK(a.size() == sample_size(population.size(), 0.5));
  std::set<std::string> keys;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].key() == b[i].key());
    keys.insert(a[i].key());
  }
  CHECK(keys.size() == a.size());
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= a[i].key() != c[i].key();
  CHECK(differs);
  CHECK(sample_agreement_tasks(corpus, TaskLayer::kGrouping, 1.0, 1).size() == population.size());
}

TEST_CASE("sampling errors") {
  const std::vector<Diagram> corpus = {gen::discourse_diagram()};
  CHECK_THROWS_CODE(sample_agreement_tasks(corpus, TaskLayer::kGrouping, 0.1, 1),
                    ErrorCode::kEmptyPopulation);
  CHECK_THROWS_CODE(sample_agreement_tasks(corpus, TaskLayer::kRst, 0.0, 1),
                    ErrorCode::kInvalidArgument);
  CHECK_THROWS_CODE(sample_agreement_tasks(corpus, TaskLayer::kRst, 1.5, 1),
                    ErrorCode::kInvalidArgument);
}
