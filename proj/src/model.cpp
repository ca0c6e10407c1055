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

#include "diagraph/model.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "json.hpp"

#include "diagraph/error.hpp"

namespace diagraph {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidId: return "InvalidId";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kUnknownEdge: return "UnknownEdge";
    case ErrorCode::kArityTooSmall: return "ArityTooSmall";
    case ErrorCode::kWouldBreakTree: return "WouldBreakTree";
    case ErrorCode::kNotAGroupNode: return "NotAGroupNode";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kNuclearityViolation: return "NuclearityViolation";
    case ErrorCode::kParticipantAlreadyBound: return "ParticipantAlreadyBound";
    case ErrorCode::kUnknownRelation: return "UnknownRelation";
    case ErrorCode::kCannotSplitRelationNode: return "CannotSplitRelationNode";
    case ErrorCode::kRelationInUse: return "RelationInUse";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kMissingCoordinates: return "MissingCoordinates";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kManifestNotFound: return "ManifestNotFound";
    case ErrorCode::kInvalidMatrix: return "InvalidMatrix";
    case ErrorCode::kSeedRequired: return "SeedRequired";
    case ErrorCode::kEmptyPopulation: return "EmptyPopulation";
    case ErrorCode::kMissingDepth: return "MissingDepth";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kTooFewVectors: return "TooFewVectors";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// ElementId

namespace {

bool parse_number(std::string_view digits, std::uint32_t& out) {
  if (digits.empty()) return false;
  if (digits.size() > 1 && digits.front() == '0') return false;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), out);
  return ec == std::errc() && ptr == digits.data() + digits.size();
}

}  // namespace

std::optional<ElementId> ElementId::try_parse(std::string_view text) noexcept {
  if (text.size() < 2) return std::nullopt;
  Prefix prefix;
  switch (text.front()) {
    case 'A': prefix = Prefix::kArrow; break;
    case 'B': prefix = Prefix::kBlob; break;
    case 'G': prefix = Prefix::kGroup; break;
    case 'H': prefix = Prefix::kArrowhead; break;
    case 'I': prefix = Prefix::kImageConstant; break;
    case 'R': prefix = Prefix::kRelation; break;
    case 'T': prefix = Prefix::kText; break;
    default: return std::nullopt;
  }
  std::string_view rest = text.substr(1);
  std::optional<std::uint32_t> split;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    std::uint32_t k = 0;
    if (!parse_number(rest.substr(dot + 1), k) || k == 0) return std::nullopt;
    split = k;
    rest = rest.substr(0, dot);
  }
  std::uint32_t index = 0;
  if (!parse_number(rest, index)) return std::nullopt;
  return ElementId(prefix, index, split);
}

ElementId ElementId::parse(std::string_view text) {
  if (auto id = try_parse(text)) return *id;
  throw Error(ErrorCode::kInvalidId,
              "invalid element id '" + std::string(text) + "'");
}

std::string ElementId::str() const {
  std::string out(1, static_cast<char>(prefix_));
  out += std::to_string(index_);
  if (split_) {
    out += '.';
    out += std::to_string(*split_);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Layout

std::string_view element_kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::kBlob: return "blob";
    case ElementKind::kText: return "text";
    case ElementKind::kArrow: return "arrow";
    case ElementKind::kArrowhead: return "arrowhead";
    case ElementKind::kImageConstant: return "imageConstant";
  }
  return "?";
}

std::optional<ElementKind> element_kind_of(const ElementId& id) {
  switch (id.prefix()) {
    case ElementId::Prefix::kBlob: return ElementKind::kBlob;
    case ElementId::Prefix::kText: return ElementKind::kText;
    case ElementId::Prefix::kArrow: return ElementKind::kArrow;
    case ElementId::Prefix::kArrowhead: return ElementKind::kArrowhead;
    case ElementId::Prefix::kImageConstant: return ElementKind::kImageConstant;
    default: return std::nullopt;
  }
}

const DiagramElement* LayoutSegmentation::find(const ElementId& id) const {
  auto it = std::lower_bound(
      elements.begin(), elements.end(), id,
      [](const DiagramElement& e, const ElementId& key) { return e.id < key; });
  if (it != elements.end() && it->id == id) return &*it;
  // Tolerate unsorted input built by hand.
  for (const auto& e : elements)
    if (e.id == id) return &e;
  return nullptr;
}

std::size_t LayoutSegmentation::count(ElementKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      elements.begin(), elements.end(),
      [kind](const DiagramElement& e) { return e.kind == kind; }));
}

// ---------------------------------------------------------------------------
// Vocabularies

std::string_view macro_group_name(MacroGroup group) {
  switch (group) {
    case MacroGroup::kNetwork: return "network";
    case MacroGroup::kCycle: return "cycle";
    case MacroGroup::kCutOut: return "cutOut";
    case MacroGroup::kSlice: return "slice";
    case MacroGroup::kHorizontal: return "horizontal";
    case MacroGroup::kVertical: return "vertical";
    case MacroGroup::kTable: return "table";
    case MacroGroup::kDiagrammatic: return "diagrammatic";
    case MacroGroup::kIllustration: return "illustration";
    case MacroGroup::kPhotograph: return "photograph";
  }
  return "?";
}

std::optional<MacroGroup> parse_macro_group(std::string_view name) {
  for (MacroGroup g : kAllMacroGroups)
    if (macro_group_name(g) == name) return g;
  if (name == "cut-out" || name == "cutout") return MacroGroup::kCutOut;
  return std::nullopt;
}

std::string_view connection_kind_name(ConnectionKind kind) {
  switch (kind) {
    case ConnectionKind::kUndirected: return "undirected";
    case ConnectionKind::kDirected: return "directed";
    case ConnectionKind::kBidirectional: return "bidirectional";
  }
  return "?";
}

std::optional<ConnectionKind> parse_connection_kind(std::string_view name) {
  for (ConnectionKind k : kAllConnectionKinds)
    if (connection_kind_name(k) == name) return k;
  return std::nullopt;
}

std::string_view nuclearity_name(Nuclearity n) {
  return n == Nuclearity::kNucleus ? "nucleus" : "satellite";
}

std::optional<Nuclearity> parse_nuclearity(std::string_view name) {
  if (name == "nucleus") return Nuclearity::kNucleus;
  if (name == "satellite") return Nuclearity::kSatellite;
  return std::nullopt;
}

RelationVocabulary::RelationVocabulary(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  std::set<std::string> seen;
  for (const auto& e : entries_) {
    if (e.name.empty())
      throw Error(ErrorCode::kInvalidArgument, "empty relation name");
    if (!seen.insert(e.name).second)
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate relation name '" + e.name + "'");
  }
}

const RelationVocabulary& RelationVocabulary::standard() {
  // Multinuclear: joint, sequence, cyclic sequence, contrast, conjunction,
  // disjunction, list, connected, restatement. Everything else has one
  // nucleus and at least one satellite.
  static const RelationVocabulary vocab({
      {"cyclic sequence", true},
      {"preparation", false},
      {"property-ascription", false},
      {"joint", true},
      {"identification", false},
      {"connected", true},
      {"sequence", true},
      {"elaboration", false},
      {"circumstance", false},
      {"contrast", true},
      {"class-ascription", false},
      {"conjunction", true},
      {"disjunction", true},
      {"list", true},
      {"nonvolitional cause", false},
      {"nonvolitional result", false},
      {"means", false},
      {"condition", false},
      {"purpose", false},
      {"restatement", true},
  });
  return vocab;
}

RelationVocabulary RelationVocabulary::from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("relation vocabulary: ") + e.what());
  }
  if (!doc.is_array())
    throw Error(ErrorCode::kInvalidArgument,
                "relation vocabulary must be a JSON array");
  std::vector<Entry> entries;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("name") ||
        !item["name"].is_string())
      throw Error(ErrorCode::kInvalidArgument,
                  "relation vocabulary entries need a string 'name'");
    entries.push_back({item["name"].get<std::string>(),
                       item.value("multinuclear", false)});
  }
  return RelationVocabulary(std::move(entries));
}

bool RelationVocabulary::contains(std::string_view name) const {
  return index_of(name).has_value();
}

std::optional<std::size_t> RelationVocabulary::index_of(
    std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].name == name) return i;
  return std::nullopt;
}

bool RelationVocabulary::is_multinuclear(std::string_view name) const {
  auto idx = index_of(name);
  if (!idx)
    throw Error(ErrorCode::kUnknownRelation,
                "unknown relation '" + std::string(name) + "'");
  return entries_[*idx].multinuclear;
}

// ---------------------------------------------------------------------------
// Graph queries

std::vector<ElementId> GroupingGraph::children(const ElementId& id) const {
  std::vector<ElementId> out;
  // A0 is the smallest possible id.
  const ElementId smallest(ElementId::Prefix::kArrow, 0);
  for (auto it = edges.lower_bound(GroupingEdge{id, smallest});
       it != edges.end() && it->parent == id; ++it)
    out.push_back(it->child);
  return out;
}

std::optional<ElementId> GroupingGraph::parent(const ElementId& id) const {
  for (const auto& e : edges)
    if (e.child == id) return e.parent;
  return std::nullopt;
}

std::vector<ElementId> GroupingGraph::groups() const {
  std::vector<ElementId> out;
  for (const auto& n : nodes)
    if (n.is_group()) out.push_back(n);
  return out;
}

std::set<ElementId> ConnectivityGraph::all_nodes() const {
  std::set<ElementId> out = isolated_nodes;
  for (const auto& e : edges) {
    out.insert(e.source);
    out.insert(e.target);
  }
  return out;
}

const RstNode* RstGraph::find(const ElementId& id) const {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

std::vector<const RstEdge*> RstGraph::incoming(const ElementId& relation) const {
  std::vector<const RstEdge*> out;
  for (const auto& e : edges)
    if (e.parent == relation) out.push_back(&e);
  return out;
}

std::vector<const RstEdge*> RstGraph::outgoing(const ElementId& node) const {
  std::vector<const RstEdge*> out;
  for (const auto& e : edges)
    if (e.child == node) out.push_back(&e);
  return out;
}

std::vector<ElementId> RstGraph::relations() const {
  std::vector<ElementId> out;
  for (const auto& [id, node] : nodes)
    if (id.is_relation()) out.push_back(id);
  return out;
}

void canonicalize(ConnectivityGraph& c) {
  std::sort(c.edges.begin(), c.edges.end());
}

void canonicalize(RstGraph& r) { std::sort(r.edges.begin(), r.edges.end()); }

void canonicalize(Diagram& d) {
  std::sort(d.layout.elements.begin(), d.layout.elements.end(),
            [](const DiagramElement& a, const DiagramElement& b) {
              return a.id < b.id;
            });
  canonicalize(d.connectivity);
  canonicalize(d.rst);
}

}  // namespace diagraph
