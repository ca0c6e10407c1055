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

#include "common.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include "diagraph/features.hpp"
#include "diagraph/graph_ops.hpp"
#include "diagraph/ingest.hpp"

using namespace diagraph;
using testing::id;

TEST_CASE("schema layout") {
  const FeatureSchema schema;
  CHECK(schema.size() == 41);
  CHECK(schema.dimensions()[0] == "elements.blob");
  CHECK(schema.dimensions()[schema.macro_offset()] == "macro.network");
  CHECK(schema.dimensions()[schema.relation_offset()].rfind("relation.", 0) == 0);
  CHECK(schema.index_of("relation.cyclic_sequence") < schema.size());
  CHECK(schema.dimensions()[schema.nucleus_index()] == "nucleusCount");
  CHECK(schema.dimensions()[schema.satellite_index()] == "satelliteCount");
  CHECK(schema.dimensions()[schema.density_index()] == "density");
  CHECK(schema.index_of("nothing") == schema.size());
  CHECK(relation_dimension("nonvolitional cause") == "relation.nonvolitional_cause");
  CHECK(schema.version().rfind("1-r20-", 0) == 0);
  CHECK(FeatureSchema().version() == schema.version());
  const auto other = FeatureSchema(RelationVocabulary::from_json(R"([{"name": "x", "multinuclear": true}])"));
  CHECK(other.size() == 22);
  CHECK(other.version() != schema.version());
}

TEST_CASE("toy diagram features") {
  const FeatureSchema schema;
  const FeatureVector v = extract_features(gen::toy_feature_diagram(), schema);
  CHECK(v.diagram_id == "toy");
  auto at = [&](const char* name) { return v.raw[schema.index_of(name)]; };
  CHECK(at("elements.blob") == 2);
  CHECK(at("elements.text") == 2);
  CHECK(at("elements.arrow") == 1);
  CHECK(at("connection.directed") == 1);
  CHECK(at("relation.identification") == 1);
  CHECK(at("nucleusCount") == 1);
  CHECK(at("satelliteCount") == 1);
  CHECK(at("density") == doctest::Approx(0.5));
  double total = 0;
  for (double x : v.raw) total += x;
  CHECK(total == doctest::Approx(9.5));
  CHECK_THROWS_CODE(
      extract_features(gen::discourse_diagram(),
                       FeatureSchema(RelationVocabulary::from_json(R"([{"name": "x", "multinuclear": true}])"))),
      ErrorCode::kSchemaMismatch);
}

TEST_CASE("density counts ordered pairs") {
  ConnectivityGraph c;
  CHECK(connectivity_density(c) == 0.0);
  c.edges = {{id("B0"), id("B1"), ConnectionKind::kDirected},
             {id("B1"), id("B2"), ConnectionKind::kUndirected}};
  // B0->B1, B1->B2, B2->B1 out of 6 ordered pairs.
  CHECK(connectivity_density(c) == doctest::Approx(0.5));
  c.edges.push_back({id("B1"), id("B0"), ConnectionKind::kDirected});
  CHECK(connectivity_density(c) == doctest::Approx(4.0 / 6.0));
  c.isolated_nodes = {id("T0")};
  CHECK(connectivity_density(c) == doctest::Approx(4.0 / 12.0));
}

TEST_CASE("random diagrams match the recount") {
  const FeatureSchema schema;
  Rng rng(77);
  for (int i = 0; i < 50; ++i) {
    const Diagram d = gen::random_diagram(rng, std::to_string(i));
    std::vector<std::string> ids;
    for (const auto& e : d.layout.elements) ids.push_back(e.id.str());
    const auto expected = oracle::recount_features(serialize(d), ids);
    const FeatureVector v = extract_features(d, schema);
    for (std::size_t c = 0; c < schema.size(); ++c) {
      auto it = expected.find(schema.dimensions()[c]);
      CHECK(v.raw[c] == doctest::Approx(it == expected.end() ? 0.0 : it->second));
    }
  }
}

TEST_CASE("z-score normalization") {
  const Matrix raw = {{1, 5, 0}, {2, 5, 0}, {3, 5, 9}};
  const Matrix z = zscore_normalize(raw);
  const double sd = std::sqrt(2.0 / 3.0);
  CHECK(z[0][0] == doctest::Approx(-1.0 / sd));
  CHECK(z[2][0] == doctest::Approx(1.0 / sd));
  for (const auto& row : z) CHECK(row[1] == 0.0);
  CHECK_THROWS_CODE(zscore_normalize({{1, 2}}), ErrorCode::kTooFewVectors);
  CHECK_THROWS_CODE(zscore_normalize({{1, 2}, {1}}), ErrorCode::kInvalidArgument);
}

TEST_CASE("corpus frequencies") {
  const auto freq =
      corpus_frequencies({gen::food_web_diagram(), gen::discourse_diagram(), gen::toy_feature_diagram()});
  CHECK(freq.macro_groups.total == 2);
  CHECK(freq.macro_groups.categories.size() == 10);
  CHECK(freq.connections.total == 2);
  CHECK(freq.relations.total == 4);
  double sum = 0;
  for (double f : freq.relations.frequencies) sum += f;
  CHECK(sum == doctest::Approx(1.0));
  const std::string csv = frequencies_to_csv(freq.connections);
  CHECK(csv.find("directed,2,1") != std::string::npos);
}

TEST_CASE("pca and embeddings") {
  const Matrix flat = {{1, 1, 1}, {2, 2, 2}, {3, 3, 3}};
  CHECK_THROWS_CODE(project_pca(flat), ErrorCode::kRankDeficient);
  const Matrix plane = {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {2, 1, 1}};
  const Projection p = project_pca(plane);
  CHECK(p.coords.size() == 5);
  CHECK(p.eigenvalues[0] >= p.eigenvalues[1]);
  for (const auto& comp : p.components) {
    double norm = 0;
    for (double x : comp) norm += x * x;
    CHECK(norm == doctest::Approx(1.0));
  }

  const Matrix coords =
      project_external({"b", "a"}, "diagram,x,y\na,1.5,2\nb,-1,0.25\nc,9,9\n");
  CHECK(coords == Matrix{{-1, 0.25}, {1.5, 2}});
  CHECK_THROWS_AS(project_external({"z"}, "diagram,x,y\na,1,2\n"), Error);
  CHECK_THROWS_CODE(project_external({"a"}, "id,x,y\na,1,2\n"), ErrorCode::kMalformedDocument);
  CHECK_THROWS_CODE(project_external({"a"}, "diagram,x,y\na,1,nan\n"), ErrorCode::kMalformedDocument);
  CHECK(coords_to_csv({"b", "a"}, coords).rfind("diagram,x,y\n", 0) == 0);
  CHECK(features_to_csv(FeatureSchema(), {}).rfind("elements.blob,", 0) == 0);
}
