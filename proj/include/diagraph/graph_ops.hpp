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

// Structural mutations and queries on the annotation layers. Every mutation
// takes its input by const reference and returns a new graph; on error the
// input is untouched and an Error is thrown. New ids take the smallest unused
// index for their prefix.

#ifndef DIAGRAPH_GRAPH_OPS_HPP_
#define DIAGRAPH_GRAPH_OPS_HPP_

#include <span>
#include <utility>

#include "diagraph/model.hpp"

namespace diagraph {

template <typename Graph>
struct WithId {
  Graph graph;
  ElementId id;
};

// -- grouping ---------------------------------------------------------------

/// Star-shaped grouping graph: I0 with every blob, text and arrow as a child.
GroupingGraph grouping_skeleton(const LayoutSegmentation& layout);

/// Inserts a new group node under the lowest common ancestor of `children`
/// and moves the children beneath it.
///
/// Errors: kArityTooSmall (< 2 children), kUnknownNode, kWouldBreakTree (a
/// child is I0, listed twice, an ancestor of another child, or the move would
/// leave an existing group with fewer than two children).
WithId<GroupingGraph> add_group(const GroupingGraph& g,
                                std::span<const ElementId> children);

/// Removes a group and hands its children to its parent. The group's macro
/// label, if any, is dropped.
GroupingGraph dissolve_group(const GroupingGraph& g, const ElementId& group);

/// Errors: kUnknownNode, kNotAGroupNode (node is neither I0 nor a group).
GroupingGraph set_macro_label(const GroupingGraph& g, const ElementId& node,
                              MacroGroup label);

// -- connectivity -----------------------------------------------------------

/// `grouping` resolves the endpoints. Errors: kSelfLoop, kUnknownNode,
/// kDuplicateEdge.
ConnectivityGraph add_connection(const ConnectivityGraph& c,
                                 const GroupingGraph& grouping,
                                 const ElementId& source,
                                 const ElementId& target, ConnectionKind kind);

/// Errors: kUnknownEdge.
ConnectivityGraph remove_connection(const ConnectivityGraph& c,
                                    const ElementId& source,
                                    const ElementId& target,
                                    ConnectionKind kind);

// -- discourse structure ----------------------------------------------------

/// Adds relation `name` over the given participants. Participants that are
/// plain elements or groups are added to the graph on first use; relation
/// nodes and split copies must already exist.
///
/// Errors: kUnknownRelation, kNuclearityViolation, kParticipantAlreadyBound,
/// kUnknownNode.
WithId<RstGraph> add_relation(const RstGraph& r, std::string_view name,
                              std::span<const ElementId> nuclei,
                              std::span<const ElementId> satellites,
                              const RelationVocabulary& vocabulary =
                                  RelationVocabulary::standard());

/// Removes a relation that has no parent. Its participants become free;
/// plain participants left without edges are dropped from the graph.
/// Errors: kUnknownNode, kRelationInUse.
RstGraph remove_relation(const RstGraph& r, const ElementId& relation);

/// Creates the next free split copy `id.k` of a participant. Splitting a
/// copy splits its original. Errors: kCannotSplitRelationNode, kInvalidId.
WithId<RstGraph> split_node(const RstGraph& r, const ElementId& id);

/// Graph obtained by merging every split copy into its original id; the
/// result is generally not a tree. Edges keep their nuclearity.
struct CollapsedRst {
  std::set<ElementId> nodes;
  std::vector<RstEdge> edges;
};
CollapsedRst collapse_splits(const RstGraph& r);

/// Longest number of relation-to-relation hops from `relation` down to a
/// descendant relation; 0 for relations whose children are all participants.
/// Errors: kUnknownNode.
int rst_hop_depth(const RstGraph& r, const ElementId& relation);

}  // namespace diagraph

#endif  // DIAGRAPH_GRAPH_OPS_HPP_
