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

#include "common.hpp"

#include "diagraph/model.hpp"

using namespace diagraph;
using testing::id;

TEST_CASE("element ids parse and print") {
  for (const char* text : {"B0", "T12", "A3", "H4", "I0", "G7", "R1", "T7.1", "B2.3"})
    CHECK(ElementId::parse(text).str() == text);
  for (const char* bad : {"", "X1", "B", "b1", "B-1", "B01", "T7.", "T7.0", "T1.2.3", "B 1"})
    CHECK_FALSE(ElementId::try_parse(bad).has_value());
  CHECK_THROWS_CODE(ElementId::parse("Q0"), ErrorCode::kInvalidId);
}

TEST_CASE("element ids order naturally") {
  CHECK(id("T2") < id("T10"));
  CHECK(id("T7") < id("T7.1"));
  CHECK(id("T7.1") < id("T7.2"));
  CHECK(id("A0") < id("B0"));
  CHECK(id("T7.1").base() == id("T7"));
  CHECK(id("I0").is_root());
  CHECK_FALSE(id("I1").is_root());
  CHECK(id("G3").is_group());
  CHECK(id("R2").is_relation());
}

TEST_CASE("element kinds follow the id prefix") {
  CHECK(element_kind_of(id("B1")) == ElementKind::kBlob);
  CHECK(element_kind_of(id("T1")) == ElementKind::kText);
  CHECK(element_kind_of(id("A1")) == ElementKind::kArrow);
  CHECK(element_kind_of(id("H1")) == ElementKind::kArrowhead);
  CHECK(element_kind_of(id("I0")) == ElementKind::kImageConstant);
  CHECK_FALSE(element_kind_of(id("G1")).has_value());
  CHECK_FALSE(element_kind_of(id("R1")).has_value());
}

TEST_CASE("closed vocabularies round-trip through their names") {
  for (MacroGroup g : kAllMacroGroups) CHECK(parse_macro_group(macro_group_name(g)) == g);
  CHECK(macro_group_name(MacroGroup::kCutOut) == "cutOut");
  CHECK_FALSE(parse_macro_group("spiral").has_value());
  for (ConnectionKind k : kAllConnectionKinds)
    CHECK(parse_connection_kind(connection_kind_name(k)) == k);
  CHECK(parse_nuclearity("satellite") == Nuclearity::kSatellite);
  CHECK_FALSE(parse_nuclearity("core").has_value());
}

TEST_CASE("standard relation vocabulary") {
  const auto& v = RelationVocabulary::standard();
  CHECK(v.size() == 20);
  for (const char* multi : {"joint", "sequence", "cyclic sequence", "contrast", "conjunction",
                            "disjunction", "list", "connected", "restatement"})
    CHECK(v.is_multinuclear(multi));
  for (const char* mono : {"elaboration", "identification", "preparation", "means",
                           "nonvolitional cause", "class-ascription", "property-ascription"})
    CHECK_FALSE(v.is_multinuclear(mono));
  CHECK_THROWS_CODE(v.is_multinuclear("justify"), ErrorCode::kUnknownRelation);
  CHECK(v.index_of("joint").has_value());
}

TEST_CASE("custom vocabulary from json") {
  const auto v = RelationVocabulary::from_json(
      R"([{"name": "cause", "multinuclear": false}, {"name": "pair", "multinuclear": true}])");
  CHECK(v.size() == 2);
  CHECK(v.is_multinuclear("pair"));
  CHECK_FALSE(v.contains("joint"));
  CHECK_THROWS_AS(RelationVocabulary::from_json("{}"), Error);
}

TEST_CASE("graph accessors") {
  GroupingGraph g;
  g.nodes = {id("I0"), id("G1"), id("B0"), id("T0")};
  g.edges = {{id("I0"), id("G1")}, {id("G1"), id("B0")}, {id("G1"), id("T0")}};
  CHECK(g.children(id("G1")).size() == 2);
  CHECK(g.parent(id("B0")) == id("G1"));
  CHECK_FALSE(g.parent(id("I0")).has_value());
  CHECK(g.groups() == std::vector<ElementId>{id("G1")});

  ConnectivityGraph c;
  c.edges = {{id("B0"), id("T0"), ConnectionKind::kDirected}};
  c.isolated_nodes = {id("G1")};
  CHECK(c.all_nodes().size() == 3);
}
