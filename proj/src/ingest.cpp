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

#include "diagraph/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "diagraph/error.hpp"
#include "diagraph/graph_ops.hpp"
#include "diagraph/validate.hpp"

namespace diagraph {
namespace {

using json = nlohmann::json;

json parse_json(std::string_view bytes, const char* what) {
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedDocument,
                std::string(what) + " is not valid JSON: " + e.what());
  }
}

[[noreturn]] void malformed(const std::string& message) {
  throw Error(ErrorCode::kMalformedDocument, message);
}

// -- AI2D -------------------------------------------------------------------

struct Section {
  const char* key;
  ElementKind kind;
};

constexpr Section kElementSections[] = {
    {"text", ElementKind::kText},
    {"blobs", ElementKind::kBlob},
    {"arrows", ElementKind::kArrow},
    {"arrowHeads", ElementKind::kArrowhead},
    {"imageConsts", ElementKind::kImageConstant},
};

std::int64_t coordinate(const json& v, const std::string& where) {
  if (!v.is_number()) malformed(where + ": coordinate is not a number");
  if (v.is_number_integer()) return v.get<std::int64_t>();
  return static_cast<std::int64_t>(std::llround(v.get<double>()));
}

std::vector<Point> parse_points(const json& pts, const std::string& where) {
  if (!pts.is_array()) malformed(where + ": coordinates must be a list");
  std::vector<Point> out;
  for (const auto& p : pts) {
    if (!p.is_array() || p.size() != 2)
      malformed(where + ": each point must be [x, y]");
    out.push_back({coordinate(p[0], where), coordinate(p[1], where)});
  }
  return out;
}

// Calls fn(id_string, entry) for both the keyed-object and the array form.
template <typename Fn>
void for_each_entry(const json& section, const std::string& name, Fn&& fn) {
  if (section.is_object()) {
    for (auto it = section.begin(); it != section.end(); ++it) {
      if (!it.value().is_object()) malformed(name + "/" + it.key() + " is not an object");
      std::string id = it.value().value("id", it.key());
      if (id != it.key()) malformed(name + "/" + it.key() + " has mismatching id " + id);
      fn(id, it.value());
    }
  } else if (section.is_array()) {
    for (const auto& entry : section) {
      if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string())
        malformed(name + ": entries need a string id");
      fn(entry["id"].get<std::string>(), entry);
    }
  } else {
    malformed(name + " must be an object or a list");
  }
}

ElementId ai2d_id(const std::string& text, const std::string& where) {
  auto id = ElementId::try_parse(text);
  if (!id) malformed(where + ": invalid element id '" + text + "'");
  return *id;
}

std::string diagram_id_from(const json& doc, std::string_view fallback) {
  for (const char* key : {"id", "diagramId"})
    if (doc.contains(key)) {
      const auto& v = doc[key];
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) return std::to_string(v.get<long long>());
    }
  if (doc.contains("imageName") && doc["imageName"].is_string()) {
    std::string name = doc["imageName"].get<std::string>();
    return name.substr(0, name.find('.'));
  }
  return std::string(fallback);
}

// -- annotation documents ---------------------------------------------------

[[noreturn]] void violation(const char* code, const std::string& path,
                            const std::string& message) {
  throw SchemaViolation(code, path, message);
}

const json& section(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_object())
    malformed(std::string("annotation document lacks the '") + key +
              "' section");
  return doc[key];
}

const json* optional_array(const json& obj, const char* key,
                           const std::string& path) {
  if (!obj.contains(key)) return nullptr;
  if (!obj[key].is_array()) malformed(path + "/" + key + " must be a list");
  return &obj[key];
}

std::string string_field(const json& obj, const char* key,
                         const std::string& path) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string())
    malformed(path + " needs a string '" + key + "'");
  return obj[key].get<std::string>();
}

ElementId doc_id(const std::string& text, const std::string& path) {
  auto id = ElementId::try_parse(text);
  if (!id) violation(codes::kBadId, path, "invalid id '" + text + "'");
  return *id;
}

std::string node_kind_name(const ElementId& id) {
  if (id.is_group()) return "group";
  if (id.is_relation()) return "relation";
  return std::string(element_kind_name(*element_kind_of(id)));
}

void check_kind(const ElementId& id, const std::string& kind,
                const std::string& path) {
  if (kind != node_kind_name(id))
    violation(codes::kKindMismatch, path,
              "kind '" + kind + "' does not match id " + id.str());
}

Diagram build_diagram(const json& doc, const LayoutSegmentation& layout,
                      const RelationVocabulary& vocabulary) {
  if (!doc.is_object()) malformed("annotation document must be a JSON object");
  Diagram d;
  d.layout = layout;
  d.diagram_id = doc.contains("id") && doc["id"].is_string()
                     ? doc["id"].get<std::string>()
                     : layout.diagram_id;
  if (!layout.diagram_id.empty() && d.diagram_id != layout.diagram_id)
    malformed("annotation for diagram '" + d.diagram_id +
              "' paired with layout '" + layout.diagram_id + "'");

  // grouping
  const json& g = section(doc, "grouping");
  if (const json* nodes = optional_array(g, "nodes", "/grouping")) {
    for (std::size_t i = 0; i < nodes->size(); ++i) {
      const std::string path = "/grouping/nodes/" + std::to_string(i);
      const ElementId id = doc_id(string_field((*nodes)[i], "id", path), path);
      check_kind(id, string_field((*nodes)[i], "kind", path), path);
      if (!d.grouping.nodes.insert(id).second)
        violation(codes::kDuplicateId, path, "duplicate node " + id.str());
    }
  }
  if (const json* edges = optional_array(g, "edges", "/grouping")) {
    for (std::size_t i = 0; i < edges->size(); ++i) {
      const std::string path = "/grouping/edges/" + std::to_string(i);
      const json& e = (*edges)[i];
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        malformed(path + " must be [parent, child]");
      GroupingEdge edge{doc_id(e[0].get<std::string>(), path),
                        doc_id(e[1].get<std::string>(), path)};
      if (!d.grouping.edges.insert(edge).second)
        violation(codes::kGroupingNotTree, path, "duplicate edge");
    }
  }
  if (const json* macro = optional_array(g, "macro", "/grouping")) {
    for (std::size_t i = 0; i < macro->size(); ++i) {
      const std::string path = "/grouping/macro/" + std::to_string(i);
      const ElementId node = doc_id(string_field((*macro)[i], "node", path), path);
      const std::string label = string_field((*macro)[i], "label", path);
      auto group = parse_macro_group(label);
      if (!group)
        violation(codes::kUnknownMacro, path, "unknown macro-group '" + label + "'");
      if (!d.grouping.macro_labels.emplace(node, *group).second)
        violation(codes::kDuplicateId, path, "second macro label for " + node.str());
    }
  }

  // connectivity
  const json& c = section(doc, "connectivity");
  if (const json* nodes = optional_array(c, "nodes", "/connectivity")) {
    for (std::size_t i = 0; i < nodes->size(); ++i) {
      const std::string path = "/connectivity/nodes/" + std::to_string(i);
      if (!(*nodes)[i].is_string()) malformed(path + " must be an id string");
      d.connectivity.isolated_nodes.insert(
          doc_id((*nodes)[i].get<std::string>(), path));
    }
  }
  if (const json* edges = optional_array(c, "edges", "/connectivity")) {
    for (std::size_t i = 0; i < edges->size(); ++i) {
      const std::string path = "/connectivity/edges/" + std::to_string(i);
      const json& e = (*edges)[i];
      const std::string kind = string_field(e, "kind", path);
      auto parsed = parse_connection_kind(kind);
      if (!parsed)
        violation(codes::kBadConnectionKind, path,
                  "unknown connection kind '" + kind + "'");
      d.connectivity.edges.push_back(
          {doc_id(string_field(e, "source", path), path),
           doc_id(string_field(e, "target", path), path), *parsed});
    }
  }
  for (const auto& e : d.connectivity.edges) {
    d.connectivity.isolated_nodes.erase(e.source);
    d.connectivity.isolated_nodes.erase(e.target);
  }

  // rst
  const json& r = section(doc, "rst");
  if (const json* nodes = optional_array(r, "nodes", "/rst")) {
    for (std::size_t i = 0; i < nodes->size(); ++i) {
      const std::string path = "/rst/nodes/" + std::to_string(i);
      const json& n = (*nodes)[i];
      RstNode node;
      node.id = doc_id(string_field(n, "id", path), path);
      check_kind(node.id, string_field(n, "kind", path), path);
      if (node.id.is_relation()) {
        if (!n.contains("name") || !n["name"].is_string())
          violation(codes::kUnknownRelation, path, "relation node without a name");
        node.relation = n["name"].get<std::string>();
        if (!vocabulary.contains(node.relation))
          violation(codes::kUnknownRelation, path,
                    "unknown relation '" + node.relation + "'");
      } else if (n.contains("name")) {
        violation(codes::kKindMismatch, path, "only relation nodes carry a name");
      }
      if (n.contains("originalId"))
        node.original_id = doc_id(string_field(n, "originalId", path), path);
      if (!d.rst.nodes.emplace(node.id, node).second)
        violation(codes::kDuplicateId, path, "duplicate node " + node.id.str());
    }
  }
  if (const json* edges = optional_array(r, "edges", "/rst")) {
    for (std::size_t i = 0; i < edges->size(); ++i) {
      const std::string path = "/rst/edges/" + std::to_string(i);
      const json& e = (*edges)[i];
      const std::string nuc = string_field(e, "nuclearity", path);
      auto parsed = parse_nuclearity(nuc);
      if (!parsed)
        violation(codes::kNuclearityViolation, path,
                  "nuclearity must be 'nucleus' or 'satellite', got '" + nuc + "'");
      d.rst.edges.push_back({doc_id(string_field(e, "child", path), path),
                             doc_id(string_field(e, "parent", path), path),
                             *parsed});
    }
  }
  canonicalize(d);
  return d;
}

void reject_if_invalid(const Diagram& d, const RelationVocabulary& vocabulary) {
  const ValidationReport report = validate_diagram(d, vocabulary);
  if (const Finding* f = report.first_error())
    throw SchemaViolation(f->code, f->path, f->message);
}

}  // namespace

// ---------------------------------------------------------------------------

LayoutSegmentation parse_ai2d(std::string_view bytes,
                              std::vector<std::string>* warnings,
                              std::string_view fallback_id) {
  const json doc = parse_json(bytes, "AI2D document");
  if (!doc.is_object()) malformed("AI2D document must be a JSON object");

  static const std::set<std::string> kKnown = {
      "text", "blobs", "arrows", "arrowHeads", "imageConsts", "relationships",
      "imageName", "imageWidth", "imageHeight", "id", "diagramId"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!kKnown.count(it.key()) && warnings)
      warnings->push_back("ignoring unknown field '" + it.key() + "'");

  LayoutSegmentation layout;
  layout.diagram_id = diagram_id_from(doc, fallback_id);
  if (doc.contains("imageWidth"))
    layout.image_width = coordinate(doc["imageWidth"], "imageWidth");
  if (doc.contains("imageHeight"))
    layout.image_height = coordinate(doc["imageHeight"], "imageHeight");

  std::set<ElementId> ids;
  for (const Section& s : kElementSections) {
    if (!doc.contains(s.key)) continue;
    for_each_entry(doc[s.key], s.key, [&](const std::string& text, const json& entry) {
      const std::string where = std::string(s.key) + "/" + text;
      DiagramElement e;
      e.id = ai2d_id(text, where);
      e.kind = s.kind;
      if (element_kind_of(e.id) != s.kind || e.id.is_split())
        malformed(where + ": id does not denote a " +
                  std::string(element_kind_name(s.kind)));
      if (entry.contains("polygon"))
        e.outline = parse_points(entry["polygon"], where);
      else if (entry.contains("rectangle"))
        e.outline = parse_points(entry["rectangle"], where);
      else if (s.kind == ElementKind::kImageConstant) {
        if (layout.image_width > 0 && layout.image_height > 0)
          e.outline = {{0, 0}, {layout.image_width, layout.image_height}};
      } else {
        throw Error(ErrorCode::kMissingCoordinates,
                    where + " has neither polygon nor rectangle");
      }
      const std::size_t needed =
          (s.kind == ElementKind::kBlob || s.kind == ElementKind::kArrow) ? 3
          : s.kind == ElementKind::kImageConstant                        ? 0
                                                                          : 2;
      if (e.outline.size() < needed)
        throw Error(ErrorCode::kMissingCoordinates,
                    where + " needs at least " + std::to_string(needed) +
                        " points");
      if (s.kind == ElementKind::kText && entry.contains("value") &&
          entry["value"].is_string())
        e.text = entry["value"].get<std::string>();
      if (!ids.insert(e.id).second)
        throw Error(ErrorCode::kDuplicateId, "duplicate element id " + e.id.str());
      layout.elements.push_back(std::move(e));
    });
  }
  std::sort(layout.elements.begin(), layout.elements.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  if (doc.contains("relationships")) {
    for_each_entry(doc["relationships"], "relationships",
                   [&](const std::string& text, const json& entry) {
      const std::string where = "relationships/" + text;
      DpgRelationship rel;
      rel.id = text;
      rel.category = entry.value("category", "");
      if (!entry.contains("origin") || !entry.contains("destination") ||
          !entry["origin"].is_string() || !entry["destination"].is_string())
        malformed(where + " needs string origin and destination");
      for (const char* end : {"origin", "destination"}) {
        const std::string ref = entry[end].get<std::string>();
        auto id = ElementId::try_parse(ref);
        if (!id || !ids.count(*id))
          malformed(where + ": " + end + " '" + ref + "' is not an element");
        (std::string_view(end) == "origin" ? rel.origin : rel.destination) = *id;
      }
      layout.relationships.push_back(std::move(rel));
    });
  }
  return layout;
}

Diagram parse_ai2drst_unchecked(std::string_view bytes,
                                const LayoutSegmentation& layout,
                                const RelationVocabulary& vocabulary) {
  return build_diagram(parse_json(bytes, "annotation document"), layout,
                       vocabulary);
}

Diagram parse_ai2drst(std::string_view bytes, const LayoutSegmentation& layout,
                      const RelationVocabulary& vocabulary) {
  Diagram d = parse_ai2drst_unchecked(bytes, layout, vocabulary);
  reject_if_invalid(d, vocabulary);
  return d;
}

std::string serialize(const Diagram& d) {
  // nlohmann::json objects are std::map backed, so keys come out sorted.
  json grouping = json::object();
  grouping["nodes"] = json::array();
  for (const auto& id : d.grouping.nodes)
    grouping["nodes"].push_back({{"id", id.str()}, {"kind", node_kind_name(id)}});
  grouping["edges"] = json::array();
  for (const auto& e : d.grouping.edges)
    grouping["edges"].push_back({e.parent.str(), e.child.str()});
  grouping["macro"] = json::array();
  for (const auto& [node, label] : d.grouping.macro_labels)
    grouping["macro"].push_back(
        {{"node", node.str()}, {"label", macro_group_name(label)}});

  ConnectivityGraph conn = d.connectivity;
  canonicalize(conn);
  json connectivity = json::object();
  connectivity["edges"] = json::array();
  for (const auto& e : conn.edges)
    connectivity["edges"].push_back({{"source", e.source.str()},
                                     {"target", e.target.str()},
                                     {"kind", connection_kind_name(e.kind)}});
  std::set<ElementId> isolated = conn.isolated_nodes;
  for (const auto& e : conn.edges) {
    isolated.erase(e.source);
    isolated.erase(e.target);
  }
  if (!isolated.empty()) {
    connectivity["nodes"] = json::array();
    for (const auto& id : isolated) connectivity["nodes"].push_back(id.str());
  }

  RstGraph rst_graph = d.rst;
  canonicalize(rst_graph);
  json rst = json::object();
  rst["nodes"] = json::array();
  for (const auto& [id, node] : rst_graph.nodes) {
    json n = {{"id", id.str()}, {"kind", node_kind_name(id)}};
    if (id.is_relation()) n["name"] = node.relation;
    if (node.original_id) n["originalId"] = node.original_id->str();
    rst["nodes"].push_back(std::move(n));
  }
  rst["edges"] = json::array();
  for (const auto& e : rst_graph.edges)
    rst["edges"].push_back({{"child", e.child.str()},
                            {"parent", e.parent.str()},
                            {"nuclearity", nuclearity_name(e.nuclearity)}});

  json doc = {{"id", d.diagram_id},
              {"grouping", std::move(grouping)},
              {"connectivity", std::move(connectivity)},
              {"rst", std::move(rst)}};
  return doc.dump(2) + "\n";
}

Diagram skeleton_diagram(const LayoutSegmentation& layout) {
  Diagram d;
  d.diagram_id = layout.diagram_id;
  d.layout = layout;
  d.grouping = grouping_skeleton(layout);
  return d;
}

// ---------------------------------------------------------------------------
// Published node-link layout

namespace {

const json* links_of(const json& graph) {
  for (const char* key : {"links", "edges"})
    if (graph.contains(key) && graph[key].is_array()) return &graph[key];
  return nullptr;
}

std::string link_end(const json& link, const char* key) {
  const auto& v = link.at(key);
  if (v.is_string()) return v.get<std::string>();
  malformed(std::string("link ") + key + " must be an id string");
}

std::optional<std::string> first_string(const json& obj,
                                        std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (obj.contains(k) && obj[k].is_string()) return obj[k].get<std::string>();
  return std::nullopt;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<std::string> map_relation(std::string name,
                                        const RelationVocabulary& vocabulary) {
  name = lower(name);
  if (vocabulary.contains(name)) return name;
  std::string spaced = name, hyphened = name;
  std::replace(spaced.begin(), spaced.end(), '_', ' ');
  std::replace(hyphened.begin(), hyphened.end(), '_', '-');
  if (vocabulary.contains(spaced)) return spaced;
  if (vocabulary.contains(hyphened)) return hyphened;
  if (name == "cyclic") return std::string("cyclic sequence");
  return std::nullopt;
}

}  // namespace

Diagram convert_published(std::string_view bytes,
                          const LayoutSegmentation& layout,
                          const RelationVocabulary& vocabulary) {
  const json doc = parse_json(bytes, "published annotation");
  if (!doc.is_object()) malformed("published annotation must be an object");
  Diagram d = skeleton_diagram(layout);
  d.grouping = {};
  if (auto id = first_string(doc, {"id", "diagram_id"})) d.diagram_id = *id;

  // Grouping: undirected links, oriented away from I0.
  if (doc.contains("grouping")) {
    const json& g = doc["grouping"];
    std::map<ElementId, std::vector<ElementId>> adjacent;
    if (g.contains("nodes"))
      for (const auto& n : g["nodes"]) {
        const ElementId id = doc_id(link_end(n, "id"), "/grouping/nodes");
        d.grouping.nodes.insert(id);
        if (auto label = first_string(n, {"macro_group", "macro"})) {
          auto group = parse_macro_group(*label);
          if (!group) group = parse_macro_group(lower(*label));
          if (!group)
            violation(codes::kUnknownMacro, "/grouping/nodes/" + id.str(),
                      "unknown macro-group '" + *label + "'");
          d.grouping.macro_labels[id] = *group;
        }
      }
    if (const json* links = links_of(g))
      for (const auto& l : *links) {
        ElementId a = doc_id(link_end(l, "source"), "/grouping/links");
        ElementId b = doc_id(link_end(l, "target"), "/grouping/links");
        adjacent[a].push_back(b);
        adjacent[b].push_back(a);
      }
    std::set<ElementId> seen{root_id()};
    std::deque<ElementId> queue{root_id()};
    while (!queue.empty()) {
      ElementId cur = queue.front();
      queue.pop_front();
      for (const auto& next : adjacent[cur])
        if (seen.insert(next).second) {
          d.grouping.edges.insert({cur, next});
          queue.push_back(next);
        }
    }
  }

  if (doc.contains("connectivity")) {
    if (const json* links = links_of(doc["connectivity"]))
      for (const auto& l : *links) {
        std::string kind = lower(first_string(l, {"kind", "type"}).value_or("directed"));
        if (kind == "directional") kind = "directed";
        if (kind == "undirectional") kind = "undirected";
        auto parsed = parse_connection_kind(kind);
        if (!parsed)
          violation(codes::kBadConnectionKind, "/connectivity/links",
                    "unknown connection kind '" + kind + "'");
        d.connectivity.edges.push_back(
            {doc_id(link_end(l, "source"), "/connectivity/links"),
             doc_id(link_end(l, "target"), "/connectivity/links"), *parsed});
      }
  }

  if (doc.contains("rst")) {
    const json& r = doc["rst"];
    if (r.contains("nodes"))
      for (const auto& n : r["nodes"]) {
        RstNode node;
        node.id = doc_id(link_end(n, "id"), "/rst/nodes");
        if (node.id.is_relation()) {
          auto name = first_string(n, {"rel_name", "name", "relation"});
          auto mapped = name ? map_relation(*name, vocabulary) : std::nullopt;
          if (!mapped)
            violation(codes::kUnknownRelation, "/rst/nodes/" + node.id.str(),
                      "unknown relation '" + name.value_or("") + "'");
          node.relation = *mapped;
        }
        if (node.id.is_split()) {
          auto orig = first_string(n, {"originalId", "original_id", "copy_of"});
          node.original_id = orig ? doc_id(*orig, "/rst/nodes") : node.id.base();
        }
        d.rst.nodes[node.id] = node;
      }
    if (const json* links = links_of(r)) {
      // Orientation: if any link runs participant -> relation the file uses
      // child -> parent; otherwise parent -> child.
      bool child_first = false;
      for (const auto& l : *links) {
        auto s = ElementId::try_parse(link_end(l, "source"));
        auto t = ElementId::try_parse(link_end(l, "target"));
        if (s && t && !s->is_relation() && t->is_relation()) child_first = true;
      }
      for (const auto& l : *links) {
        ElementId s = doc_id(link_end(l, "source"), "/rst/links");
        ElementId t = doc_id(link_end(l, "target"), "/rst/links");
        if (!child_first) std::swap(s, t);
        std::string nuc = lower(first_string(l, {"nuclearity", "kind"}).value_or(""));
        if (nuc == "n") nuc = "nucleus";
        if (nuc == "s") nuc = "satellite";
        auto parsed = parse_nuclearity(nuc);
        if (!parsed)
          violation(codes::kNuclearityViolation, "/rst/links",
                    "unknown nuclearity '" + nuc + "'");
        d.rst.nodes.try_emplace(s, RstNode{s, {}, std::nullopt});
        d.rst.edges.push_back({s, t, *parsed});
      }
    }
  }
  canonicalize(d);
  reject_if_invalid(d, vocabulary);
  return d;
}

// ---------------------------------------------------------------------------
// Corpus

const ManifestEntry* CorpusManifest::find(std::string_view id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path(), ec);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw Error(ErrorCode::kIoError,
                "cannot move " + tmp.string() + " to " + path.string());
}

CorpusManifest load_manifest(const std::filesystem::path& root) {
  const auto file = root / "manifest.json";
  if (!std::filesystem::is_regular_file(file))
    throw Error(ErrorCode::kManifestNotFound, "no manifest at " + file.string());
  const json doc = parse_json(read_file(file), "manifest");
  if (!doc.is_object() || !doc.contains("diagrams") || !doc["diagrams"].is_array())
    malformed("manifest needs a 'diagrams' list");
  CorpusManifest m;
  m.root = root;
  if (doc.contains("schemaVersion") && doc["schemaVersion"].is_string())
    m.schema_version = doc["schemaVersion"].get<std::string>();
  std::set<std::string> ids;
  for (const auto& entry : doc["diagrams"]) {
    ManifestEntry e;
    e.id = string_field(entry, "id", "manifest entry");
    e.ai2d = string_field(entry, "ai2d", "manifest entry " + e.id);
    if (auto v = first_string(entry, {"annotation"})) e.annotation = *v;
    if (auto v = first_string(entry, {"image"})) e.image = *v;
    if (auto v = first_string(entry, {"category"})) e.category = *v;
    if (!ids.insert(e.id).second)
      throw Error(ErrorCode::kDuplicateId, "manifest lists " + e.id + " twice");
    m.entries.push_back(std::move(e));
  }
  return m;
}

void write_manifest(const CorpusManifest& manifest) {
  json doc;
  doc["schemaVersion"] = manifest.schema_version;
  doc["diagrams"] = json::array();
  for (const auto& e : manifest.entries) {
    json entry = {{"id", e.id}, {"ai2d", e.ai2d.generic_string()}};
    if (e.annotation) entry["annotation"] = e.annotation->generic_string();
    if (e.image) entry["image"] = e.image->generic_string();
    if (e.category) entry["category"] = *e.category;
    doc["diagrams"].push_back(std::move(entry));
  }
  write_file_atomic(manifest.root / "manifest.json", doc.dump(2) + "\n");
}

std::optional<std::filesystem::path> default_corpus_root() {
  if (const char* v = std::getenv(kCorpusRootEnv); v && *v)
    return std::filesystem::path(v);
  return std::nullopt;
}

Diagram load_diagram(const CorpusManifest& manifest, const ManifestEntry& entry,
                     bool checked, const RelationVocabulary& vocabulary) {
  LayoutSegmentation layout =
      parse_ai2d(read_file(manifest.resolve(entry.ai2d)), nullptr, entry.id);
  layout.diagram_id = entry.id;
  Diagram d;
  if (!entry.annotation) {
    d = skeleton_diagram(layout);
  } else {
    const std::string bytes = read_file(manifest.resolve(*entry.annotation));
    d = checked ? parse_ai2drst(bytes, layout, vocabulary)
                : parse_ai2drst_unchecked(bytes, layout, vocabulary);
  }
  d.semantic_category = entry.category;
  return d;
}

LoadedCorpus load_corpus(const CorpusManifest& manifest,
                         const RelationVocabulary& vocabulary) {
  LoadedCorpus out;
  for (const auto& entry : manifest.entries) {
    try {
      out.diagrams.push_back(load_diagram(manifest, entry, true, vocabulary));
    } catch (const SchemaViolation& e) {
      out.failures.push_back({entry.id, manifest.resolve(*entry.annotation),
                              e.schema_code(), e.what()});
    } catch (const Error& e) {
      out.failures.push_back({entry.id, manifest.resolve(entry.ai2d),
                              std::string(e.code_name()), e.what()});
    }
  }
  return out;
}

}  // namespace diagraph
