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

#include "diagraph/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <utility>

#include <Eigen/Dense>

#include "diagraph/csv.hpp"
#include "diagraph/error.hpp"

namespace diagraph {

std::string relation_dimension(std::string_view relation_name) {
  std::string out = "relation.";
  for (char c : relation_name) out += c == ' ' ? '_' : c;
  return out;
}

FeatureSchema::FeatureSchema(const RelationVocabulary& vocabulary)
    : vocabulary_(vocabulary) {
  for (ElementKind kind : kAllElementKinds)
    dimensions_.push_back("elements." + std::string(element_kind_name(kind)));
  for (MacroGroup g : kAllMacroGroups)
    dimensions_.push_back("macro." + std::string(macro_group_name(g)));
  for (const auto& entry : vocabulary_.entries())
    dimensions_.push_back(relation_dimension(entry.name));
  dimensions_.push_back("nucleusCount");
  dimensions_.push_back("satelliteCount");
  for (ConnectionKind kind : kAllConnectionKinds)
    dimensions_.push_back("connection." + std::string(connection_kind_name(kind)));
  dimensions_.push_back("density");

  std::set<std::string> unique(dimensions_.begin(), dimensions_.end());
  if (unique.size() != dimensions_.size())
    throw Error(ErrorCode::kInvalidArgument,
                "relation vocabulary yields duplicate feature dimensions");

  // FNV-1a over the relation names.
  std::uint32_t h = 2166136261u;
  for (const auto& entry : vocabulary_.entries()) {
    for (unsigned char c : entry.name + '\n') {
      h ^= c;
      h *= 16777619u;
    }
  }
  char digest[9];
  std::snprintf(digest, sizeof digest, "%08x", h);
  version_ = "1-r" + std::to_string(vocabulary_.size()) + "-" + digest;
}

std::size_t FeatureSchema::index_of(std::string_view dimension) const {
  auto it = std::find(dimensions_.begin(), dimensions_.end(), dimension);
  return static_cast<std::size_t>(it - dimensions_.begin());
}

FeatureVector extract_features(const Diagram& d, const FeatureSchema& schema) {
  FeatureVector fv;
  fv.diagram_id = d.diagram_id;
  fv.raw.assign(schema.size(), 0.0);
  for (const DiagramElement& e : d.layout.elements)
    fv.raw[schema.element_offset() + static_cast<std::size_t>(e.kind)] += 1.0;
  for (const auto& [node, label] : d.grouping.macro_labels)
    fv.raw[schema.macro_offset() + static_cast<std::size_t>(label)] += 1.0;
  for (const auto& [id, node] : d.rst.nodes) {
    if (!node.is_relation()) continue;
    const auto index = schema.vocabulary().index_of(node.relation);
    if (!index)
      throw Error(ErrorCode::kSchemaMismatch,
                  "relation '" + node.relation + "' in " + d.diagram_id +
                      " is not in feature schema " + schema.version());
    fv.raw[schema.relation_offset() + *index] += 1.0;
  }
  for (const RstEdge& e : d.rst.edges)
    fv.raw[e.nuclearity == Nuclearity::kNucleus ? schema.nucleus_index()
                                                : schema.satellite_index()] += 1.0;
  for (const Connection& c : d.connectivity.edges)
    fv.raw[schema.connection_offset() + static_cast<std::size_t>(c.kind)] += 1.0;
  fv.raw[schema.density_index()] = connectivity_density(d.connectivity);
  return fv;
}

double connectivity_density(const ConnectivityGraph& c) {
  const std::size_t n = c.all_nodes().size();
  if (n < 2) return 0.0;
  std::set<std::pair<ElementId, ElementId>> pairs;
  for (const Connection& e : c.edges) {
    if (e.source == e.target) continue;
    pairs.emplace(e.source, e.target);
    if (e.kind != ConnectionKind::kDirected) pairs.emplace(e.target, e.source);
  }
  return static_cast<double>(pairs.size()) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

namespace {

std::size_t check_rows(const Matrix& m) {
  if (m.size() < 2)
    throw Error(ErrorCode::kTooFewVectors, "need at least two feature vectors");
  const std::size_t d = m.front().size();
  for (const auto& row : m)
    if (row.size() != d)
      throw Error(ErrorCode::kInvalidArgument, "feature rows differ in length");
  return d;
}

}  // namespace

Matrix zscore_normalize(const Matrix& raw) {
  const std::size_t d = check_rows(raw);
  const double N = static_cast<double>(raw.size());
  Matrix out(raw.size(), std::vector<double>(d, 0.0));
  for (std::size_t c = 0; c < d; ++c) {
    bool constant = true;
    for (const auto& row : raw) constant &= row[c] == raw.front()[c];
    if (constant) continue;
    double mean = 0.0;
    for (const auto& row : raw) mean += row[c];
    mean /= N;
    double var = 0.0;
    for (const auto& row : raw) var += (row[c] - mean) * (row[c] - mean);
    const double sd = std::sqrt(var / N);
    for (std::size_t r = 0; r < raw.size(); ++r)
      out[r][c] = (raw[r][c] - mean) / sd;
  }
  return out;
}

namespace {

FrequencyTable make_table(std::vector<std::string> categories,
                          const std::map<std::string, std::size_t>& counts) {
  FrequencyTable t;
  std::set<std::string> known(categories.begin(), categories.end());
  for (const auto& [name, count] : counts)
    if (!known.count(name)) categories.push_back(name);
  t.categories = std::move(categories);
  for (const auto& name : t.categories) {
    auto it = counts.find(name);
    const std::size_t c = it == counts.end() ? 0 : it->second;
    t.counts.push_back(c);
    t.total += c;
  }
  for (std::size_t c : t.counts)
    t.frequencies.push_back(
        t.total ? static_cast<double>(c) / static_cast<double>(t.total) : 0.0);
  return t;
}

}  // namespace

CorpusFrequencies corpus_frequencies(const std::vector<Diagram>& corpus,
                                     const RelationVocabulary& vocabulary) {
  std::map<std::string, std::size_t> macro, relations, connections;
  for (const Diagram& d : corpus) {
    for (const auto& [node, label] : d.grouping.macro_labels)
      ++macro[std::string(macro_group_name(label))];
    for (const auto& [id, node] : d.rst.nodes)
      if (node.is_relation()) ++relations[node.relation];
    for (const Connection& c : d.connectivity.edges)
      ++connections[std::string(connection_kind_name(c.kind))];
  }
  std::vector<std::string> macro_names, relation_names, connection_names;
  for (MacroGroup g : kAllMacroGroups) macro_names.emplace_back(macro_group_name(g));
  for (const auto& e : vocabulary.entries()) relation_names.push_back(e.name);
  for (ConnectionKind k : kAllConnectionKinds)
    connection_names.emplace_back(connection_kind_name(k));
  return {make_table(std::move(macro_names), macro),
          make_table(std::move(relation_names), relations),
          make_table(std::move(connection_names), connections)};
}

Projection project_pca(const Matrix& normalized) {
  const std::size_t d = check_rows(normalized);
  const std::size_t N = normalized.size();
  if (d < 2)
    throw Error(ErrorCode::kRankDeficient, "need at least two dimensions");

  // Accumulate in sorted row order so every permutation of the input yields
  // bit-identical statistics.
  std::vector<std::size_t> order(N);
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return normalized[a] < normalized[b];
  });

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t i : order)
    for (std::size_t c = 0; c < d; ++c)
      mean[static_cast<Eigen::Index>(c)] += normalized[i][c];
  mean /= static_cast<double>(N);

  Eigen::MatrixXd centered(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < d; ++c)
      centered(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          normalized[order[r]][c] - mean[static_cast<Eigen::Index>(c)];
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(N);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::kRankDeficient, "eigendecomposition failed");
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const auto top = static_cast<Eigen::Index>(d - 1);
  const double l1 = values[top], l2 = values[top - 1];
  const double tol = 1e-12 * std::max(1.0, std::fabs(l1)) * static_cast<double>(d);
  if (!(l1 > tol) || !(l2 > tol))
    throw Error(ErrorCode::kRankDeficient,
                "data span fewer than two dimensions");

  Projection p;
  p.mean.assign(mean.data(), mean.data() + d);
  p.eigenvalues = {l1, l2};
  for (Eigen::Index col : {top, top - 1}) {
    Eigen::VectorXd v = solver.eigenvectors().col(col);
    Eigen::Index arg = 0;
    for (Eigen::Index c = 1; c < v.size(); ++c)
      if (std::fabs(v[c]) > std::fabs(v[arg]) + 1e-12) arg = c;
    if (v[arg] < 0) v = -v;
    p.components.emplace_back(v.data(), v.data() + v.size());
  }
  p.coords.assign(N, std::vector<double>(2, 0.0));
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t k = 0; k < 2; ++k) {
      double dot = 0.0;
      for (std::size_t c = 0; c < d; ++c)
        dot += (normalized[r][c] - p.mean[c]) * p.components[k][c];
      p.coords[r][k] = dot;
    }
  return p;
}

namespace {

double parse_double(const std::string& s, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
    throw Error(ErrorCode::kMalformedDocument,
                "embedding line " + std::to_string(line) + ": bad number '" + s + "'");
  return value;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

Matrix project_external(const std::vector<std::string>& diagram_ids,
                        std::string_view sidecar_csv) {
  const auto rows = csv::parse(sidecar_csv);
  if (rows.empty() || rows.front() != csv::Row{"diagram", "x", "y"})
    throw Error(ErrorCode::kMalformedDocument,
                "embedding file must start with the header diagram,x,y");
  std::map<std::string, std::vector<double>> coords;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 3)
      throw Error(ErrorCode::kMalformedDocument,
                  "embedding line " + std::to_string(r + 1) + " needs 3 fields");
    coords[rows[r][0]] = {parse_double(rows[r][1], r + 1),
                          parse_double(rows[r][2], r + 1)};
  }
  Matrix out;
  for (const auto& id : diagram_ids) {
    auto it = coords.find(id);
    if (it == coords.end())
      throw Error(ErrorCode::kMalformedDocument,
                  "embedding file has no coordinates for " + id);
    out.push_back(it->second);
  }
  return out;
}

std::string features_to_csv(const FeatureSchema& schema, const Matrix& rows) {
  std::string out = csv::format_row(schema.dimensions());
  for (const auto& row : rows) {
    csv::Row fields;
    for (double v : row) fields.push_back(format_double(v));
    out += csv::format_row(fields);
  }
  return out;
}

std::string coords_to_csv(const std::vector<std::string>& diagram_ids,
                          const Matrix& coords) {
  std::string out = csv::format_row({"diagram", "x", "y"});
  for (std::size_t i = 0; i < diagram_ids.size() && i < coords.size(); ++i)
    out += csv::format_row({diagram_ids[i], format_double(coords[i][0]),
                            format_double(coords[i][1])});
  return out;
}

std::string frequencies_to_csv(const FrequencyTable& table) {
  std::string out = csv::format_row({"category", "count", "frequency"});
  for (std::size_t i = 0; i < table.categories.size(); ++i)
    out += csv::format_row({table.categories[i], std::to_string(table.counts[i]),
                            format_double(table.frequencies[i])});
  return out;
}

}  // namespace diagraph
