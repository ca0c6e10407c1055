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

#include "json.hpp"

#include "diagraph/graph_ops.hpp"
#include "diagraph/ingest.hpp"
#include "diagraph/validate.hpp"

using namespace diagraph;
using testing::id;
using testing::ids;

namespace {

std::vector<std::string> error_codes(const Diagram& d) {
  std::vector<std::string> out;
  for (const auto& f : validate_diagram(d).findings)
    if (f.severity == Severity::kError) out.push_back(f.code);
  return out;
}

std::vector<std::string> warning_codes(const Diagram& d) {
  std::vector<std::string> out;
  for (const auto& f : validate_diagram(d).findings)
    if (f.severity == Severity::kWarning) out.push_back(f.code);
  return out;
}

}  // namespace

TEST_CASE("grouping invariants") {
  Diagram d = gen::food_web_diagram();
  CHECK(error_codes(d).empty());

  Diagram orphan = d;
  orphan.grouping.edges.erase({id("G7"), id("B2")});
  CHECK(error_codes(orphan) == std::vector<std::string>{codes::kGroupingNotTree});

  Diagram no_root = d;
  no_root.grouping.nodes.erase(id("I0"));
  CHECK_FALSE(error_codes(no_root).empty());

  Diagram unlabelled = d;
  unlabelled.grouping.macro_labels[id("T0")] = MacroGroup::kTable;
  CHECK(error_codes(unlabelled) == std::vector<std::string>{codes::kMacroOnLeaf});
}

TEST_CASE("connectivity invariants") {
  Diagram d = gen::toy_feature_diagram();
  d.connectivity.edges.push_back({id("B0"), id("G5"), ConnectionKind::kDirected});
  CHECK(error_codes(d) == std::vector<std::string>{codes::kDanglingId});

  Diagram pair = gen::toy_feature_diagram();
  pair.connectivity = add_connection(pair.connectivity, pair.grouping, id("B1"), id("B0"),
                                     ConnectionKind::kUndirected);
  CHECK(error_codes(pair).empty());
  CHECK(warning_codes(pair) == std::vector<std::string>{codes::kDuplicatePair});
}

TEST_CASE("discourse invariants") {
  Diagram d = gen::discourse_diagram();
  CHECK(error_codes(d).empty());

  Diagram orphan = d;
  orphan.rst.nodes.erase(id("T3"));
  // R3 loses its only satellite along with the dangling edge.
  CHECK(error_codes(orphan) == std::vector<std::string>{codes::kNuclearityViolation,
                                                        codes::kRstNotTree});

  Diagram wrong_parent = d;
  wrong_parent.rst.edges.push_back({id("T5"), id("B0"), Nuclearity::kNucleus});
  CHECK_FALSE(error_codes(wrong_parent).empty());

  Diagram cyclic = d;
  for (auto& e : cyclic.rst.edges)
    if (e.child == id("B0")) e.child = id("R3");
  cyclic.rst.nodes.erase(id("B0"));
  canonicalize(cyclic);
  const auto codes_found = error_codes(cyclic);
  CHECK(std::find(codes_found.begin(), codes_found.end(), codes::kRstNotTree) !=
        codes_found.end());

}

TEST_CASE("multiple discourse roots warn") {
  Diagram d = skeleton_diagram(gen::layout_with("m", {"I0", "B0", "B1", "T0", "T1"}));
  d.rst = add_relation(d.rst, "identification", ids({"B0"}), ids({"T0"})).graph;
  d.rst = add_relation(d.rst, "identification", ids({"B1"}), ids({"T1"})).graph;
  CHECK(error_codes(d).empty());
  CHECK(warning_codes(d) == std::vector<std::string>{codes::kRstMultipleRoots});
}

TEST_CASE("split copies") {
  Diagram d = skeleton_diagram(gen::layout_with("s", {"I0", "B0", "B1", "T0"}));
  auto r = add_relation(d.rst, "identification", ids({"B0"}), ids({"T0"}));
  auto copy = split_node(r.graph, id("T0"));
  d.rst = add_relation(copy.graph, "identification", ids({"B1"}), std::vector<ElementId>{copy.id}).graph;
  CHECK(error_codes(d).empty());

  Diagram unused = d;
  unused.rst.nodes[id("B1.1")] = RstNode{id("B1.1"), {}, id("B1")};
  // A copy waiting for its relation is one more root.
  CHECK(error_codes(unused).empty());
  CHECK(warning_codes(unused) == std::vector<std::string>{codes::kRstMultipleRoots});

  Diagram mismatch = d;
  mismatch.rst.nodes[id("T0.1")].original_id = id("B0");
  CHECK(error_codes(mismatch) == std::vector<std::string>{codes::kSplitOriginalMismatch});
}

TEST_CASE("reports are ordered and render as text and json") {
  Diagram d = gen::discourse_diagram();
  d.grouping.macro_labels[id("T0")] = MacroGroup::kTable;
  d.connectivity.edges.push_back({id("B0"), id("B0"), ConnectionKind::kDirected});
  const ValidationReport report = validate_diagram(d);
  REQUIRE(report.findings.size() >= 2);
  CHECK(report.findings[0].layer == Layer::kGrouping);
  CHECK(report.first_error()->code == codes::kMacroOnLeaf);
  const auto j = nlohmann::json::parse(report_to_json(report));
  CHECK(j["diagram"] == "0");
  CHECK(j["findings"].size() == report.findings.size());
  CHECK(report_to_text(report).find("SELF_LOOP") != std::string::npos);

  const CorpusValidation corpus = validate_corpus({d, gen::food_web_diagram()});
  CHECK(corpus.error_count == 2);
  CHECK(corpus.counts_by_code.at(codes::kSelfLoop) == 1);
}
