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

// Value types for a diagram: the layout segmentation carried over from AI2D
// and the three stand-off annotation layers (grouping with macro-group
// labels, connectivity, discourse structure).
//
// All graphs are plain values kept in canonical (sorted) order so that
// equality is structural equality with identical ids. They can hold invalid
// structures; validate_diagram() is the authority on validity and the
// mutation operations in graph_ops.hpp preserve it.

#ifndef DIAGRAPH_MODEL_HPP_
#define DIAGRAPH_MODEL_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "diagraph/ids.hpp"

namespace diagraph {

// ---------------------------------------------------------------------------
// Layout

enum class ElementKind { kBlob, kText, kArrow, kArrowhead, kImageConstant };

inline constexpr std::array<ElementKind, 5> kAllElementKinds = {
    ElementKind::kBlob, ElementKind::kText, ElementKind::kArrow,
    ElementKind::kArrowhead, ElementKind::kImageConstant};

std::string_view element_kind_name(ElementKind kind);
/// Kind implied by an id prefix; nullopt for G and R.
std::optional<ElementKind> element_kind_of(const ElementId& id);

struct Point {
  std::int64_t x = 0;  // pixels, to the right
  std::int64_t y = 0;  // pixels, downwards
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct DiagramElement {
  ElementId id;
  ElementKind kind = ElementKind::kBlob;
  std::vector<Point> outline;
  std::optional<std::string> text;  // text elements only

  friend bool operator==(const DiagramElement&, const DiagramElement&) = default;
};

/// One AI2D diagram-parse-graph relationship, kept opaque.
struct DpgRelationship {
  std::string id;
  std::string category;
  ElementId origin;
  ElementId destination;

  friend bool operator==(const DpgRelationship&, const DpgRelationship&) = default;
};

struct LayoutSegmentation {
  std::string diagram_id;
  std::int64_t image_width = 0;
  std::int64_t image_height = 0;
  std::vector<DiagramElement> elements;  // sorted by id
  std::vector<DpgRelationship> relationships;

  const DiagramElement* find(const ElementId& id) const;
  std::size_t count(ElementKind kind) const;

  friend bool operator==(const LayoutSegmentation&, const LayoutSegmentation&) = default;
};

// ---------------------------------------------------------------------------
// Vocabularies

enum class MacroGroup {
  kNetwork,
  kCycle,
  kCutOut,
  kSlice,
  kHorizontal,
  kVertical,
  kTable,
  kDiagrammatic,
  kIllustration,
  kPhotograph,
};

inline constexpr std::array<MacroGroup, 10> kAllMacroGroups = {
    MacroGroup::kNetwork,    MacroGroup::kCycle,        MacroGroup::kCutOut,
    MacroGroup::kSlice,      MacroGroup::kHorizontal,   MacroGroup::kVertical,
    MacroGroup::kTable,      MacroGroup::kDiagrammatic, MacroGroup::kIllustration,
    MacroGroup::kPhotograph};

std::string_view macro_group_name(MacroGroup group);
/// Accepts the canonical names plus a few spelling aliases ("cut-out").
std::optional<MacroGroup> parse_macro_group(std::string_view name);

enum class ConnectionKind { kUndirected, kDirected, kBidirectional };

inline constexpr std::array<ConnectionKind, 3> kAllConnectionKinds = {
    ConnectionKind::kUndirected, ConnectionKind::kDirected,
    ConnectionKind::kBidirectional};

std::string_view connection_kind_name(ConnectionKind kind);
std::optional<ConnectionKind> parse_connection_kind(std::string_view name);

enum class Nuclearity { kNucleus, kSatellite };

std::string_view nuclearity_name(Nuclearity n);
std::optional<Nuclearity> parse_nuclearity(std::string_view name);

/// The configured set of RST relation names with their nuclearity policy.
class RelationVocabulary {
 public:
  struct Entry {
    std::string name;
    bool multinuclear = false;
  };

  RelationVocabulary() = default;
  explicit RelationVocabulary(std::vector<Entry> entries);

  /// The standard twenty-relation vocabulary.
  static const RelationVocabulary& standard();
  /// Loads `[{"name": ..., "multinuclear": bool}, ...]`.
  static RelationVocabulary from_json(std::string_view json_text);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool contains(std::string_view name) const;
  /// Throws Error(kUnknownRelation) for names outside the vocabulary.
  bool is_multinuclear(std::string_view name) const;
  /// Position of `name` in the vocabulary order.
  std::optional<std::size_t> index_of(std::string_view name) const;

 private:
  std::vector<Entry> entries_;
};

// ---------------------------------------------------------------------------
// Grouping layer

struct GroupingEdge {
  ElementId parent;
  ElementId child;
  friend auto operator<=>(const GroupingEdge&, const GroupingEdge&) = default;
};

/// Undirected tree rooted at I0, stored as parent/child pairs.
struct GroupingGraph {
  std::set<ElementId> nodes;
  std::set<GroupingEdge> edges;
  std::map<ElementId, MacroGroup> macro_labels;

  bool contains(const ElementId& id) const { return nodes.count(id) != 0; }
  std::vector<ElementId> children(const ElementId& id) const;
  std::optional<ElementId> parent(const ElementId& id) const;
  std::vector<ElementId> groups() const;

  friend bool operator==(const GroupingGraph&, const GroupingGraph&) = default;
};

// ---------------------------------------------------------------------------
// Connectivity layer

struct Connection {
  ElementId source;
  ElementId target;
  ConnectionKind kind = ConnectionKind::kDirected;
  friend auto operator<=>(const Connection&, const Connection&) = default;
};

/// Cyclic mixed graph of visually explicit connections.
struct ConnectivityGraph {
  /// Nodes declared without any incident edge. Endpoints of edges are nodes
  /// implicitly; see all_nodes().
  std::set<ElementId> isolated_nodes;
  std::vector<Connection> edges;  // sorted

  std::set<ElementId> all_nodes() const;

  friend bool operator==(const ConnectivityGraph&, const ConnectivityGraph&) = default;
};

// ---------------------------------------------------------------------------
// Discourse structure layer

struct RstNode {
  ElementId id;
  std::string relation;                 // relation nodes only
  std::optional<ElementId> original_id;  // split copies only

  bool is_relation() const { return id.is_relation(); }
  friend bool operator==(const RstNode&, const RstNode&) = default;
};

/// Edge from a participant (or relation) to its parent relation.
struct RstEdge {
  ElementId child;
  ElementId parent;
  Nuclearity nuclearity = Nuclearity::kNucleus;
  friend auto operator<=>(const RstEdge&, const RstEdge&) = default;
};

/// Directed tree of RST relations. Participants are elements, groups or
/// split copies; relation nodes carry the relation name.
struct RstGraph {
  std::map<ElementId, RstNode> nodes;
  std::vector<RstEdge> edges;  // sorted

  const RstNode* find(const ElementId& id) const;
  std::vector<const RstEdge*> incoming(const ElementId& relation) const;
  std::vector<const RstEdge*> outgoing(const ElementId& node) const;
  std::vector<ElementId> relations() const;

  friend bool operator==(const RstGraph&, const RstGraph&) = default;
};

// ---------------------------------------------------------------------------

struct Diagram {
  std::string diagram_id;
  LayoutSegmentation layout;
  GroupingGraph grouping;
  ConnectivityGraph connectivity;
  RstGraph rst;
  std::optional<std::string> semantic_category;

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

/// Re-sorts the edge vectors of a diagram into canonical order.
void canonicalize(Diagram& d);
void canonicalize(ConnectivityGraph& c);
void canonicalize(RstGraph& r);

}  // namespace diagraph

#endif  // DIAGRAPH_MODEL_HPP_
