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
#include "generators.hpp"

#include "diagraph/graph_ops.hpp"
#include "diagraph/ingest.hpp"
#include "diagraph/validate.hpp"

using namespace diagraph;
using testing::id;
using testing::ids;

namespace {

Diagram small() {
  return skeleton_diagram(gen::layout_with("g", {"I0", "B0", "B1", "T0", "T1", "A0", "H0"}));
}

}  // namespace

TEST_CASE("skeleton grouping is a star under I0 without arrowheads") {
  const Diagram d = small();
  CHECK(d.grouping.nodes.size() == 6);
  CHECK(d.grouping.children(id("I0")).size() == 5);
  CHECK_FALSE(d.grouping.contains(id("H0")));
  CHECK_FALSE(validate_diagram(d).has_errors());
}

TEST_CASE("add_group attaches under the lowest common ancestor") {
  auto g1 = add_group(small().grouping, ids({"B0", "T0"}));
  CHECK(g1.id == id("G0"));
  CHECK(g1.graph.parent(id("G0")) == id("I0"));
  CHECK(g1.graph.parent(id("B0")) == id("G0"));
  auto g2 = add_group(g1.graph, std::vector<ElementId>{id("G0"), id("T1")});
  CHECK(g2.id == id("G1"));
  CHECK(g2.graph.parent(id("G0")) == id("G1"));
  // Regrouping inside an existing group keeps the tree rooted at that group.
  auto g3 = add_group(add_group(small().grouping, ids({"B0", "T0", "B1"})).graph,
                      ids({"B0", "T0"}));
  CHECK(g3.graph.parent(g3.id) == id("G0"));
}

TEST_CASE("add_group rejects broken trees") {
  const GroupingGraph g = small().grouping;
  CHECK_THROWS_CODE(add_group(g, ids({"B0"})), ErrorCode::kArityTooSmall);
  CHECK_THROWS_CODE(add_group(g, ids({"B0", "B9"})), ErrorCode::kUnknownNode);
  CHECK_THROWS_CODE(add_group(g, ids({"B0", "B0"})), ErrorCode::kWouldBreakTree);
  CHECK_THROWS_CODE(add_group(g, ids({"B0", "I0"})), ErrorCode::kWouldBreakTree);
  auto g0 = add_group(g, ids({"B0", "T0"}));
  // Taking one child out of a binary group would leave a singleton.
  CHECK_THROWS_CODE(add_group(g0.graph, ids({"B0", "T1"})), ErrorCode::kWouldBreakTree);
  CHECK_THROWS_CODE(add_group(g0.graph, std::vector<ElementId>{id("G0"), id("B0")}),
                    ErrorCode::kWouldBreakTree);
}

TEST_CASE("dissolve_group and macro labels") {
  auto g0 = add_group(small().grouping, ids({"B0", "T0"}));
  auto labelled = set_macro_label(g0.graph, id("G0"), MacroGroup::kCycle);
  CHECK(labelled.macro_labels.at(id("G0")) == MacroGroup::kCycle);
  labelled = set_macro_label(labelled, id("I0"), MacroGroup::kNetwork);
  CHECK_THROWS_CODE(set_macro_label(labelled, id("B0"), MacroGroup::kCycle),
                    ErrorCode::kNotAGroupNode);
  CHECK_THROWS_CODE(set_macro_label(labelled, id("G9"), MacroGroup::kCycle),
                    ErrorCode::kUnknownNode);
  const GroupingGraph back = dissolve_group(labelled, id("G0"));
  CHECK_FALSE(back.contains(id("G0")));
  CHECK(back.macro_labels.size() == 1);
  CHECK(back.parent(id("B0")) == id("I0"));
  CHECK_THROWS_CODE(dissolve_group(back, id("B0")), ErrorCode::kNotAGroupNode);
  CHECK_THROWS_CODE(dissolve_group(back, id("G0")), ErrorCode::kUnknownNode);
}

TEST_CASE("connections") {
  const Diagram d = small();
  auto c = add_connection(d.connectivity, d.grouping, id("B0"), id("T0"),
                          ConnectionKind::kDirected);
  CHECK(c.edges.size() == 1);
  CHECK_THROWS_CODE(add_connection(c, d.grouping, id("B0"), id("B0"), ConnectionKind::kDirected),
                    ErrorCode::kSelfLoop);
  CHECK_THROWS_CODE(add_connection(c, d.grouping, id("B0"), id("T0"), ConnectionKind::kDirected),
                    ErrorCode::kDuplicateEdge);
  CHECK_THROWS_CODE(add_connection(c, d.grouping, id("B0"), id("H0"), ConnectionKind::kDirected),
                    ErrorCode::kUnknownNode);
  // A different kind between the same pair is a separate edge.
  c = add_connection(c, d.grouping, id("B0"), id("T0"), ConnectionKind::kUndirected);
  CHECK(c.edges.size() == 2);
  c = remove_connection(c, id("B0"), id("T0"), ConnectionKind::kDirected);
  CHECK(c.edges.size() == 1);
  CHECK_THROWS_CODE(remove_connection(c, id("B0"), id("T0"), ConnectionKind::kDirected),
                    ErrorCode::kUnknownEdge);
}

TEST_CASE("relations enforce nuclearity") {
  RstGraph r;
  CHECK_THROWS_CODE(add_relation(r, "joint", ids({"B0"}), {}), ErrorCode::kNuclearityViolation);
  CHECK_THROWS_CODE(add_relation(r, "joint", ids({"B0", "T0"}), ids({"T1"})),
                    ErrorCode::kNuclearityViolation);
  CHECK_THROWS_CODE(add_relation(r, "elaboration", ids({"B0", "T0"}), ids({"T1"})),
                    ErrorCode::kNuclearityViolation);
  CHECK_THROWS_CODE(add_relation(r, "elaboration", ids({"B0"}), {}),
                    ErrorCode::kNuclearityViolation);
  CHECK_THROWS_CODE(add_relation(r, "justify", ids({"B0"}), ids({"T0"})),
                    ErrorCode::kUnknownRelation);
  auto r1 = add_relation(r, "elaboration", ids({"B0"}), ids({"T0", "T1"}));
  CHECK(r1.id == id("R0"));
  CHECK(r1.graph.incoming(r1.id).size() == 3);
  CHECK_THROWS_CODE(add_relation(r1.graph, "joint", ids({"B0", "B1"}), {}),
                    ErrorCode::kParticipantAlreadyBound);
  CHECK_THROWS_CODE(add_relation(r1.graph, "joint", ids({"R7", "B1"}), {}),
                    ErrorCode::kUnknownNode);
  auto r2 = add_relation(r1.graph, "joint", std::vector<ElementId>{r1.id, id("B1")}, {});
  CHECK(rst_hop_depth(r2.graph, r1.id) == 0);
  CHECK(rst_hop_depth(r2.graph, r2.id) == 1);
  CHECK_THROWS_CODE(remove_relation(r2.graph, r1.id), ErrorCode::kRelationInUse);
  const RstGraph back = remove_relation(r2.graph, r2.id);
  CHECK(back == r1.graph);
  CHECK_THROWS_CODE(remove_relation(back, id("B0")), ErrorCode::kUnknownNode);
}

TEST_CASE("split copies collapse onto their original") {
  auto r1 = add_relation(RstGraph{}, "elaboration", ids({"B0"}), ids({"T7"}));
  CHECK_THROWS_CODE(split_node(r1.graph, r1.id), ErrorCode::kCannotSplitRelationNode);
  auto copy = split_node(r1.graph, id("T7"));
  CHECK(copy.id == id("T7.1"));
  CHECK(copy.graph.find(copy.id)->original_id == id("T7"));
  auto second = split_node(copy.graph, id("T7"));
  CHECK(second.id == id("T7.2"));
  auto r2 = add_relation(copy.graph, "identification", ids({"B1"}), ids({"T7.1"}));
  const CollapsedRst collapsed = collapse_splits(r2.graph);
  CHECK_FALSE(collapsed.nodes.count(id("T7.1")));
  int parents = 0;
  for (const auto& e : collapsed.edges)
    if (e.child == id("T7")) ++parents;
  CHECK(parents == 2);
}

TEST_CASE("hand-built diagrams are valid") {
  for (const Diagram& d :
       {gen::food_web_diagram(), gen::discourse_diagram(), gen::toy_feature_diagram()}) {
    const auto report = validate_diagram(d);
    CHECK_MESSAGE(!report.has_errors(), report_to_text(report));
  }
  const Diagram web = gen::food_web_diagram();
  CHECK(web.grouping.children(id("G7")) == ids({"B2", "T3"}));
  CHECK(web.grouping.children(id("G14")).size() == 28);
  CHECK(web.grouping.macro_labels.at(id("G14")) == MacroGroup::kNetwork);

  const Diagram discourse = gen::discourse_diagram();
  CHECK(discourse.rst.find(id("R1"))->relation == "joint");
  CHECK(discourse.rst.incoming(id("R1")).size() == 5);
  CHECK(rst_hop_depth(discourse.rst, id("R3")) == 2);
}

TEST_CASE("random diagrams exercise nesting, connections and splits") {
  Rng rng(5);
  int nested = 0, connected = 0, split = 0, related = 0;
  for (int i = 0; i < 200; ++i) {
    const Diagram d = gen::random_diagram(rng, "x" + std::to_string(i));
    REQUIRE_FALSE(validate_diagram(d).has_errors());
    for (const auto& g : d.grouping.groups())
      for (const auto& c : d.grouping.children(g))
        if (c.is_group()) ++nested;
    connected += !d.connectivity.edges.empty();
    related += !d.rst.relations().empty();
    for (const auto& [nid, node] : d.rst.nodes) split += nid.is_split();
  }
  CHECK(nested > 10);
  CHECK(connected > 50);
  CHECK(related > 50);
  CHECK(split > 10);
}
