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

#include "diagraph/graph_ops.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "diagraph/error.hpp"

namespace diagraph {
namespace {

using Prefix = ElementId::Prefix;

template <typename Range>
std::uint32_t smallest_unused_index(const Range& ids, Prefix prefix) {
  std::set<std::uint32_t> used;
  for (const ElementId& id : ids)
    if (id.prefix() == prefix && !id.is_split()) used.insert(id.index());
  std::uint32_t k = 0;
  while (used.count(k)) ++k;
  return k;
}

std::map<ElementId, ElementId> parent_map(const GroupingGraph& g) {
  std::map<ElementId, ElementId> parents;
  for (const auto& e : g.edges) parents.emplace(e.child, e.parent);
  return parents;
}

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace

GroupingGraph grouping_skeleton(const LayoutSegmentation& layout) {
  GroupingGraph g;
  g.nodes.insert(root_id());
  for (const auto& e : layout.elements) {
    if (e.kind == ElementKind::kBlob || e.kind == ElementKind::kText ||
        e.kind == ElementKind::kArrow) {
      g.nodes.insert(e.id);
      g.edges.insert({root_id(), e.id});
    }
  }
  return g;
}

WithId<GroupingGraph> add_group(const GroupingGraph& g,
                                std::span<const ElementId> children) {
  if (children.size() < 2)
    fail(ErrorCode::kArityTooSmall, "a group needs at least two children");
  std::set<ElementId> members;
  for (const auto& c : children) {
    if (!g.contains(c)) fail(ErrorCode::kUnknownNode, "unknown node " + c.str());
    if (c.is_root())
      fail(ErrorCode::kWouldBreakTree, "the image constant cannot be grouped");
    if (!members.insert(c).second)
      fail(ErrorCode::kWouldBreakTree, c.str() + " listed twice");
  }

  const auto parents = parent_map(g);
  // Strict ancestors of each child, nearest first.
  std::vector<std::vector<ElementId>> chains;
  for (const auto& c : children) {
    std::vector<ElementId> chain;
    ElementId cur = c;
    for (auto it = parents.find(cur); it != parents.end();
         it = parents.find(cur)) {
      cur = it->second;
      if (members.count(cur))
        fail(ErrorCode::kWouldBreakTree,
             cur.str() + " is an ancestor of " + c.str());
      chain.push_back(cur);
      if (chain.size() > g.nodes.size())
        fail(ErrorCode::kWouldBreakTree, "grouping graph contains a cycle");
    }
    if (chain.empty())
      fail(ErrorCode::kWouldBreakTree, c.str() + " is not attached to the tree");
    chains.push_back(std::move(chain));
  }

  // Lowest common ancestor: first entry of chain 0 present in every chain.
  std::optional<ElementId> lca;
  for (const auto& candidate : chains.front()) {
    bool everywhere = std::all_of(
        chains.begin() + 1, chains.end(), [&](const auto& chain) {
          return std::find(chain.begin(), chain.end(), candidate) != chain.end();
        });
    if (everywhere) {
      lca = candidate;
      break;
    }
  }
  if (!lca) fail(ErrorCode::kWouldBreakTree, "children share no ancestor");

  GroupingGraph out = g;
  const ElementId group(Prefix::kGroup, smallest_unused_index(g.nodes, Prefix::kGroup));
  out.nodes.insert(group);
  std::set<ElementId> old_parents;
  for (const auto& c : children) {
    const ElementId& p = parents.at(c);
    old_parents.insert(p);
    out.edges.erase({p, c});
    out.edges.insert({group, c});
  }
  out.edges.insert({*lca, group});

  for (const auto& p : old_parents) {
    if (p.is_group() && out.children(p).size() < 2)
      fail(ErrorCode::kWouldBreakTree,
           "moving the children would leave " + p.str() +
               " with fewer than two children");
  }
  return {std::move(out), group};
}

GroupingGraph dissolve_group(const GroupingGraph& g, const ElementId& group) {
  if (!g.contains(group)) fail(ErrorCode::kUnknownNode, "unknown node " + group.str());
  if (!group.is_group())
    fail(ErrorCode::kNotAGroupNode, group.str() + " is not a group node");
  auto parent = g.parent(group);
  if (!parent)
    fail(ErrorCode::kWouldBreakTree, group.str() + " has no parent");
  GroupingGraph out = g;
  for (const auto& c : g.children(group)) {
    out.edges.erase({group, c});
    out.edges.insert({*parent, c});
  }
  out.edges.erase({*parent, group});
  out.nodes.erase(group);
  out.macro_labels.erase(group);
  return out;
}

GroupingGraph set_macro_label(const GroupingGraph& g, const ElementId& node,
                              MacroGroup label) {
  if (!g.contains(node)) fail(ErrorCode::kUnknownNode, "unknown node " + node.str());
  if (!node.is_group() && !node.is_root())
    fail(ErrorCode::kNotAGroupNode,
         node.str() + " is neither the image constant nor a group");
  GroupingGraph out = g;
  out.macro_labels[node] = label;
  return out;
}

ConnectivityGraph add_connection(const ConnectivityGraph& c,
                                 const GroupingGraph& grouping,
                                 const ElementId& source,
                                 const ElementId& target, ConnectionKind kind) {
  if (source == target)
    fail(ErrorCode::kSelfLoop, "connection from " + source.str() + " to itself");
  for (const auto& id : {source, target})
    if (!grouping.contains(id))
      fail(ErrorCode::kUnknownNode,
           id.str() + " is not a node of the grouping layer");
  const Connection edge{source, target, kind};
  auto pos = std::lower_bound(c.edges.begin(), c.edges.end(), edge);
  if (pos != c.edges.end() && *pos == edge)
    fail(ErrorCode::kDuplicateEdge, "connection already present");
  ConnectivityGraph out = c;
  out.edges.insert(out.edges.begin() + (pos - c.edges.begin()), edge);
  out.isolated_nodes.erase(source);
  out.isolated_nodes.erase(target);
  return out;
}

ConnectivityGraph remove_connection(const ConnectivityGraph& c,
                                    const ElementId& source,
                                    const ElementId& target,
                                    ConnectionKind kind) {
  const Connection edge{source, target, kind};
  auto pos = std::find(c.edges.begin(), c.edges.end(), edge);
  if (pos == c.edges.end())
    fail(ErrorCode::kUnknownEdge, "no such connection " + source.str() + " -> " +
                                      target.str());
  ConnectivityGraph out = c;
  out.edges.erase(out.edges.begin() + (pos - c.edges.begin()));
  return out;
}

WithId<RstGraph> add_relation(const RstGraph& r, std::string_view name,
                              std::span<const ElementId> nuclei,
                              std::span<const ElementId> satellites,
                              const RelationVocabulary& vocabulary) {
  const bool multinuclear = vocabulary.is_multinuclear(name);
  if (multinuclear) {
    if (nuclei.size() < 2 || !satellites.empty())
      fail(ErrorCode::kNuclearityViolation,
           "'" + std::string(name) +
               "' is multinuclear: it needs at least two nuclei and no "
               "satellites");
  } else if (nuclei.size() != 1 || satellites.empty()) {
    fail(ErrorCode::kNuclearityViolation,
         "'" + std::string(name) +
             "' is mononuclear: it needs exactly one nucleus and at least one "
             "satellite");
  }

  std::set<ElementId> seen;
  auto check = [&](const ElementId& id) {
    if (!seen.insert(id).second)
      fail(ErrorCode::kParticipantAlreadyBound, id.str() + " listed twice");
    const bool present = r.nodes.count(id) != 0;
    if ((id.is_relation() || id.is_split()) && !present)
      fail(ErrorCode::kUnknownNode, "unknown node " + id.str());
    if (present && !r.outgoing(id).empty())
      fail(ErrorCode::kParticipantAlreadyBound,
           id.str() + " already participates in a relation");
  };
  for (const auto& id : nuclei) check(id);
  for (const auto& id : satellites) check(id);

  std::vector<ElementId> existing;
  for (const auto& [id, node] : r.nodes) existing.push_back(id);
  const ElementId relation(Prefix::kRelation,
                           smallest_unused_index(existing, Prefix::kRelation));

  RstGraph out = r;
  out.nodes[relation] = RstNode{relation, std::string(name), std::nullopt};
  auto attach = [&](const ElementId& id, Nuclearity n) {
    out.nodes.try_emplace(id, RstNode{id, {}, std::nullopt});
    out.edges.push_back({id, relation, n});
  };
  for (const auto& id : nuclei) attach(id, Nuclearity::kNucleus);
  for (const auto& id : satellites) attach(id, Nuclearity::kSatellite);
  canonicalize(out);
  return {std::move(out), relation};
}

RstGraph remove_relation(const RstGraph& r, const ElementId& relation) {
  const RstNode* node = r.find(relation);
  if (!node || !relation.is_relation())
    fail(ErrorCode::kUnknownNode, "unknown relation " + relation.str());
  if (!r.outgoing(relation).empty())
    fail(ErrorCode::kRelationInUse,
         relation.str() + " participates in another relation");
  RstGraph out = r;
  std::vector<ElementId> freed;
  std::erase_if(out.edges, [&](const RstEdge& e) {
    if (e.parent != relation) return false;
    freed.push_back(e.child);
    return true;
  });
  out.nodes.erase(relation);
  for (const auto& id : freed) {
    if (id.is_relation() || id.is_split()) continue;
    bool used = std::any_of(out.edges.begin(), out.edges.end(),
                            [&](const RstEdge& e) { return e.child == id; });
    if (!used) out.nodes.erase(id);
  }
  return out;
}

WithId<RstGraph> split_node(const RstGraph& r, const ElementId& id) {
  if (id.is_relation())
    fail(ErrorCode::kCannotSplitRelationNode,
         "relation " + id.str() + " cannot be split");
  const ElementId base = id.base();
  std::set<std::uint32_t> used;
  for (const auto& [nid, node] : r.nodes)
    if (nid.base() == base && nid.split()) used.insert(*nid.split());
  std::uint32_t k = 1;
  while (used.count(k)) ++k;
  const ElementId copy(base.prefix(), base.index(), k);
  RstGraph out = r;
  out.nodes[copy] = RstNode{copy, {}, base};
  return {std::move(out), copy};
}

CollapsedRst collapse_splits(const RstGraph& r) {
  auto original = [&](const ElementId& id) {
    const RstNode* n = r.find(id);
    if (n && n->original_id) return *n->original_id;
    return id.base();
  };
  CollapsedRst out;
  for (const auto& [id, node] : r.nodes) out.nodes.insert(original(id));
  for (const auto& e : r.edges)
    out.edges.push_back({original(e.child), original(e.parent), e.nuclearity});
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

int rst_hop_depth(const RstGraph& r, const ElementId& relation) {
  if (!relation.is_relation() || !r.find(relation))
    fail(ErrorCode::kUnknownNode, "unknown relation " + relation.str());
  std::map<ElementId, std::vector<ElementId>> child_relations;
  for (const auto& e : r.edges)
    if (e.child.is_relation()) child_relations[e.parent].push_back(e.child);

  std::map<ElementId, int> memo;
  std::set<ElementId> active;
  std::function<int(const ElementId&)> depth = [&](const ElementId& id) -> int {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    if (!active.insert(id).second) return 0;  // cycle in an invalid graph
    int best = 0;
    if (auto it = child_relations.find(id); it != child_relations.end())
      for (const auto& c : it->second) best = std::max(best, 1 + depth(c));
    active.erase(id);
    memo[id] = best;
    return best;
  };
  return depth(relation);
}

}  // namespace diagraph
