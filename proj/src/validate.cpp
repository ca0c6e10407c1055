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

#include "diagraph/validate.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "json.hpp"

namespace diagraph {

std::string_view severity_name(Severity s) {
  return s == Severity::kError ? "error" : "warning";
}

std::string_view layer_name(Layer l) {
  switch (l) {
    case Layer::kLayout: return "layout";
    case Layer::kGrouping: return "grouping";
    case Layer::kConnectivity: return "connectivity";
    case Layer::kRst: return "rst";
  }
  return "?";
}

bool ValidationReport::has_errors() const { return first_error() != nullptr; }

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [](const Finding& f) {
        return f.severity == Severity::kError;
      }));
}

const Finding* ValidationReport::first_error() const {
  for (const auto& f : findings)
    if (f.severity == Severity::kError) return &f;
  return nullptr;
}

namespace {

class Checker {
 public:
  Checker(const Diagram& d, const RelationVocabulary& vocabulary)
      : d_(d), vocabulary_(vocabulary) {}

  std::vector<Finding> run() {
    check_layout();
    check_grouping();
    check_connectivity();
    check_rst();
    check_unused();
    std::stable_sort(findings_.begin(), findings_.end(),
                     [](const Finding& a, const Finding& b) {
                       return std::tie(a.layer, a.code, a.path) <
                              std::tie(b.layer, b.code, b.path);
                     });
    findings_.erase(std::unique(findings_.begin(), findings_.end()),
                    findings_.end());
    return std::move(findings_);
  }

 private:
  void error(Layer layer, const char* code, std::string path,
             std::string message) {
    findings_.push_back(
        {Severity::kError, layer, code, std::move(path), std::move(message)});
  }
  void warning(Layer layer, const char* code, std::string path,
               std::string message) {
    findings_.push_back(
        {Severity::kWarning, layer, code, std::move(path), std::move(message)});
  }

  void check_layout() {
    std::set<ElementId> seen;
    for (const auto& e : d_.layout.elements) {
      const std::string path = "/layout/elements/" + e.id.str();
      if (!seen.insert(e.id).second)
        error(Layer::kLayout, codes::kDuplicateId, path, "duplicate element id");
      if (e.id.is_split())
        error(Layer::kLayout, codes::kSplitOutsideRst, path,
              "split ids exist only in the discourse layer");
      auto expected = element_kind_of(e.id);
      if (!expected || *expected != e.kind)
        error(Layer::kLayout, codes::kKindMismatch, path,
              "id prefix does not match element kind " +
                  std::string(element_kind_name(e.kind)));
      std::size_t min_vertices = 0;
      switch (e.kind) {
        case ElementKind::kBlob:
        case ElementKind::kArrow: min_vertices = 3; break;
        case ElementKind::kText:
        case ElementKind::kArrowhead: min_vertices = 2; break;
        case ElementKind::kImageConstant: break;
      }
      if (e.outline.size() < min_vertices)
        error(Layer::kLayout, codes::kBadOutline, path,
              "outline needs at least " + std::to_string(min_vertices) +
                  " points");
    }
    for (const auto& rel : d_.layout.relationships) {
      for (const auto& end : {rel.origin, rel.destination})
        if (!d_.layout.find(end))
          error(Layer::kLayout, codes::kDanglingId,
                "/layout/relationships/" + rel.id,
                "relationship endpoint " + end.str() + " is not an element");
    }
  }

  void check_grouping() {
    const GroupingGraph& g = d_.grouping;
    const Layer L = Layer::kGrouping;
    for (const auto& id : g.nodes) {
      const std::string path = "/grouping/nodes/" + id.str();
      if (id.is_split()) {
        error(L, codes::kSplitOutsideRst, path,
              "split ids exist only in the discourse layer");
        continue;
      }
      switch (id.prefix()) {
        case ElementId::Prefix::kRelation:
          error(L, codes::kKindMismatch, path,
                "relation nodes belong to the discourse layer");
          break;
        case ElementId::Prefix::kArrowhead:
          error(L, codes::kArrowheadInGrouping, path,
                "arrowheads are not part of the grouping layer");
          break;
        case ElementId::Prefix::kImageConstant:
          if (!id.is_root())
            error(L, codes::kGroupingNotTree, path,
                  "the only image constant allowed is I0");
          break;
        case ElementId::Prefix::kGroup: break;
        default:
          if (!d_.layout.find(id))
            error(L, codes::kDanglingId, path,
                  "element is not in the layout segmentation");
      }
    }

    bool tree = true;
    if (!g.contains(root_id())) {
      error(L, codes::kGroupingNotTree, "/grouping/nodes/I0",
            "the grouping graph must contain the root I0");
      tree = false;
    }
    std::map<ElementId, int> parent_count;
    for (const auto& e : g.edges) {
      const std::string path =
          "/grouping/edges/" + e.parent.str() + "-" + e.child.str();
      if (!g.contains(e.parent) || !g.contains(e.child)) {
        error(L, codes::kGroupingNotTree, path, "edge endpoint is not a node");
        tree = false;
        continue;
      }
      if (e.parent == e.child) {
        error(L, codes::kGroupingNotTree, path, "self edge");
        tree = false;
        continue;
      }
      if (!e.parent.is_group() && !e.parent.is_root()) {
        error(L, codes::kGroupingNotTree, path,
              "only I0 and group nodes can have children");
        tree = false;
      }
      ++parent_count[e.child];
    }
    for (const auto& id : g.nodes) {
      const std::string path = "/grouping/nodes/" + id.str();
      const int parents = parent_count[id];
      if (id.is_root() && parents > 0) {
        error(L, codes::kGroupingNotTree, path, "the root I0 cannot have a parent");
        tree = false;
      } else if (!id.is_root() && parents == 0) {
        error(L, codes::kGroupingNotTree, path, "node is not attached to the tree");
        tree = false;
      } else if (parents > 1) {
        error(L, codes::kGroupingNotTree, path, "node has more than one parent");
        tree = false;
      }
    }
    if (tree) {
      // Every node has one parent; any node not reachable from I0 sits on a
      // cycle.
      std::set<ElementId> reached{root_id()};
      std::deque<ElementId> queue{root_id()};
      while (!queue.empty()) {
        ElementId cur = queue.front();
        queue.pop_front();
        for (const auto& c : g.children(cur))
          if (reached.insert(c).second) queue.push_back(c);
      }
      for (const auto& id : g.nodes)
        if (!reached.count(id)) {
          error(L, codes::kGroupingNotTree, "/grouping/nodes/" + id.str(),
                "node lies on a cycle");
          tree = false;
        }
    }
    if (tree) {
      for (const auto& id : g.nodes)
        if (id.is_group() && g.children(id).size() < 2)
          error(L, codes::kGroupArity, "/grouping/nodes/" + id.str(),
                "a group needs at least two children");
    }
    for (const auto& [node, label] : g.macro_labels) {
      const std::string path = "/grouping/macro/" + node.str();
      if (!node.is_group() && !node.is_root())
        error(L, codes::kMacroOnLeaf, path,
              "macro-groups label I0 or group nodes only");
      else if (!g.contains(node))
        error(L, codes::kDanglingId, path, "labelled node is not in the graph");
    }
  }

  void check_connectivity() {
    const ConnectivityGraph& c = d_.connectivity;
    const Layer L = Layer::kConnectivity;
    for (const auto& id : c.all_nodes()) {
      const std::string path = "/connectivity/nodes/" + id.str();
      if (id.is_split())
        error(L, codes::kSplitOutsideRst, path,
              "split ids exist only in the discourse layer");
      else if (!d_.grouping.contains(id))
        error(L, codes::kDanglingId, path,
              "node does not resolve through the grouping layer");
    }
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      const Connection& e = c.edges[i];
      const std::string path = "/connectivity/edges/" + std::to_string(i);
      if (e.source == e.target) {
        error(L, codes::kSelfLoop, path, "connection from a node to itself");
        continue;
      }
      for (std::size_t j = 0; j < i; ++j) {
        const Connection& prior = c.edges[j];
        if (prior == e) {
          error(L, codes::kDuplicateEdge, path,
                "identical to /connectivity/edges/" + std::to_string(j));
          break;
        }
        const bool same_pair =
            (prior.source == e.source && prior.target == e.target) ||
            (prior.source == e.target && prior.target == e.source);
        if (same_pair) {
          warning(L, codes::kDuplicatePair, path,
                  "another connection joins " + e.source.str() + " and " +
                      e.target.str());
          break;
        }
      }
    }
  }

  void check_rst() {
    const RstGraph& r = d_.rst;
    const Layer L = Layer::kRst;
    for (const auto& [id, node] : r.nodes) {
      const std::string path = "/rst/nodes/" + id.str();
      if (id.is_relation()) {
        if (id.is_split())
          error(L, codes::kSplitOriginalMismatch, path,
                "relation nodes cannot be split");
        if (!vocabulary_.contains(node.relation))
          error(L, codes::kUnknownRelation, path,
                "relation '" + node.relation + "' is not in the vocabulary");
        if (node.original_id)
          error(L, codes::kSplitOriginalMismatch, path,
                "relation nodes carry no originalId");
        continue;
      }
      if (!node.relation.empty())
        error(L, codes::kKindMismatch, path,
              "only relation nodes carry a relation name");
      if (id.is_split()) {
        if (!node.original_id || *node.original_id != id.base())
          error(L, codes::kSplitOriginalMismatch, path,
                "split copy must carry originalId " + id.base().str());
      } else if (node.original_id && *node.original_id != id) {
        error(L, codes::kSplitOriginalMismatch, path,
              "only split copies carry an originalId");
      }
      if (!d_.grouping.contains(id.base()))
        error(L, codes::kDanglingId, path,
              id.base().str() + " does not resolve through the grouping layer");
    }

    std::map<ElementId, std::vector<ElementId>> parents;
    std::map<ElementId, std::pair<int, int>> nuclearity;  // nuclei, satellites
    for (std::size_t i = 0; i < r.edges.size(); ++i) {
      const RstEdge& e = r.edges[i];
      const std::string path = "/rst/edges/" + std::to_string(i);
      if (!r.find(e.child) || !r.find(e.parent)) {
        error(L, codes::kRstNotTree, path, "edge endpoint is not a declared node");
        continue;
      }
      if (!e.parent.is_relation()) {
        error(L, codes::kRstNotTree, path,
              "edges must point to a relation node");
        continue;
      }
      parents[e.child].push_back(e.parent);
      auto& [nuc, sat] = nuclearity[e.parent];
      (e.nuclearity == Nuclearity::kNucleus ? nuc : sat) += 1;
    }
    bool single_parents = true;
    for (const auto& [child, ps] : parents)
      if (ps.size() > 1) {
        error(L, codes::kRstNotTree, "/rst/nodes/" + child.str(),
              "node has " + std::to_string(ps.size()) + " parent relations");
        single_parents = false;
      }
    if (single_parents) {
      for (const auto& [start, ps] : parents) {
        ElementId cur = start;
        for (std::size_t steps = 0; steps <= r.nodes.size(); ++steps) {
          auto it = parents.find(cur);
          if (it == parents.end()) break;
          cur = it->second.front();
          if (cur == start) {
            error(L, codes::kRstNotTree, "/rst/nodes/" + start.str(),
                  "node lies on a cycle");
            break;
          }
        }
      }
    }
    for (const auto& [id, node] : r.nodes) {
      if (!id.is_relation() || !vocabulary_.contains(node.relation)) continue;
      auto [nuc, sat] = nuclearity[id];
      const bool multi = vocabulary_.is_multinuclear(node.relation);
      const bool ok = multi ? (nuc >= 2 && sat == 0) : (nuc == 1 && sat >= 1);
      if (!ok)
        error(L, codes::kNuclearityViolation, "/rst/nodes/" + id.str(),
              "'" + node.relation + "' has " + std::to_string(nuc) +
                  " nuclei and " + std::to_string(sat) + " satellites; " +
                  (multi ? "multinuclear relations need >= 2 nuclei and no "
                           "satellites"
                         : "mononuclear relations need exactly 1 nucleus and "
                           ">= 1 satellite"));
    }
    std::size_t roots = 0;
    for (const auto& [id, node] : r.nodes)
      if (!parents.count(id)) ++roots;
    if (roots > 1)
      warning(L, codes::kRstMultipleRoots, "/rst",
              std::to_string(roots) + " unattached subtrees");
  }

  void check_unused() {
    std::set<ElementId> used = d_.grouping.nodes;
    for (const auto& id : d_.connectivity.all_nodes()) used.insert(id);
    for (const auto& [id, node] : d_.rst.nodes) used.insert(id.base());
    for (const auto& e : d_.layout.elements) {
      if (e.kind == ElementKind::kArrowhead ||
          e.kind == ElementKind::kImageConstant)
        continue;
      if (!used.count(e.id))
        warning(Layer::kLayout, codes::kUnusedElement,
                "/layout/elements/" + e.id.str(),
                "element appears in no annotation layer");
    }
  }

  const Diagram& d_;
  const RelationVocabulary& vocabulary_;
  std::vector<Finding> findings_;
};

}  // namespace

ValidationReport validate_diagram(const Diagram& d,
                                  const RelationVocabulary& vocabulary) {
  return {d.diagram_id, Checker(d, vocabulary).run()};
}

CorpusValidation validate_corpus(const std::vector<Diagram>& corpus,
                                 const RelationVocabulary& vocabulary) {
  CorpusValidation out;
  for (const auto& d : corpus) {
    out.reports.push_back(validate_diagram(d, vocabulary));
    for (const auto& f : out.reports.back().findings) {
      ++out.counts_by_code[f.code];
      (f.severity == Severity::kError ? out.error_count : out.warning_count) += 1;
    }
  }
  return out;
}

std::string report_to_json(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["diagram"] = report.diagram_id;
  doc["valid"] = !report.has_errors();
  doc["findings"] = nlohmann::ordered_json::array();
  for (const auto& f : report.findings)
    doc["findings"].push_back({{"severity", severity_name(f.severity)},
                               {"layer", layer_name(f.layer)},
                               {"code", f.code},
                               {"path", f.path},
                               {"message", f.message}});
  return doc.dump();
}

std::string report_to_text(const ValidationReport& report) {
  std::ostringstream out;
  if (report.findings.empty()) {
    out << report.diagram_id << ": ok\n";
    return out.str();
  }
  for (const auto& f : report.findings)
    out << report.diagram_id << ": " << severity_name(f.severity) << ' '
        << f.code << ' ' << f.path << ": " << f.message << '\n';
  return out.str();
}

}  // namespace diagraph
