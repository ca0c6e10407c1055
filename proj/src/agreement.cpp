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

#include "diagraph/agreement.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "diagraph/csv.hpp"
#include "diagraph/error.hpp"

namespace diagraph {

AnnotationMatrix::AnnotationMatrix(std::vector<std::string> categories,
                                   std::vector<std::string> annotators,
                                   std::vector<std::vector<int>> labels,
                                   std::vector<std::string> item_ids,
                                   std::vector<ItemMeta> meta)
    : categories_(std::move(categories)),
      annotators_(std::move(annotators)),
      labels_(std::move(labels)),
      item_ids_(std::move(item_ids)),
      meta_(std::move(meta)) {
  if (categories_.size() < 2)
    throw Error(ErrorCode::kInvalidMatrix, "need at least two categories");
  if (annotators_.size() < 2)
    throw Error(ErrorCode::kInvalidMatrix, "need at least two annotators");
  const int k = static_cast<int>(categories_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].size() != annotators_.size())
      throw Error(ErrorCode::kInvalidMatrix,
                  "item " + std::to_string(i) + " is missing labels");
    for (int label : labels_[i])
      if (label < 0 || label >= k)
        throw Error(ErrorCode::kInvalidMatrix,
                    "item " + std::to_string(i) + " has an undeclared category");
  }
  if (item_ids_.empty())
    for (std::size_t i = 0; i < labels_.size(); ++i)
      item_ids_.push_back(std::to_string(i));
  if (item_ids_.size() != labels_.size())
    throw Error(ErrorCode::kInvalidMatrix, "item id count mismatch");
  if (meta_.empty()) meta_.resize(labels_.size());
  if (meta_.size() != labels_.size())
    throw Error(ErrorCode::kInvalidMatrix, "item metadata count mismatch");
}

AnnotationMatrix AnnotationMatrix::from_counts(
    const std::vector<std::vector<int>>& counts,
    std::vector<std::string> categories) {
  if (counts.empty())
    throw Error(ErrorCode::kInvalidMatrix, "no items");
  const std::size_t k = counts.front().size();
  if (categories.empty())
    for (std::size_t j = 0; j < k; ++j) categories.push_back("c" + std::to_string(j));
  int raters = -1;
  std::vector<std::vector<int>> labels;
  for (const auto& row : counts) {
    if (row.size() != k)
      throw Error(ErrorCode::kInvalidMatrix, "ragged count table");
    std::vector<int> item;
    for (std::size_t j = 0; j < k; ++j) {
      if (row[j] < 0) throw Error(ErrorCode::kInvalidMatrix, "negative count");
      item.insert(item.end(), static_cast<std::size_t>(row[j]), static_cast<int>(j));
    }
    if (raters >= 0 && static_cast<int>(item.size()) != raters)
      throw Error(ErrorCode::kInvalidMatrix, "rows sum to different rater counts");
    raters = static_cast<int>(item.size());
    labels.push_back(std::move(item));
  }
  std::vector<std::string> annotators;
  for (int j = 0; j < raters; ++j) annotators.push_back("annotator_" + std::to_string(j + 1));
  return AnnotationMatrix(std::move(categories), std::move(annotators),
                          std::move(labels));
}

std::vector<std::vector<int>> AnnotationMatrix::counts() const {
  std::vector<std::vector<int>> out(labels_.size(),
                                    std::vector<int>(categories_.size(), 0));
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (int label : labels_[i]) ++out[i][static_cast<std::size_t>(label)];
  return out;
}

AnnotationMatrix AnnotationMatrix::subset(
    const std::vector<std::size_t>& items) const {
  std::vector<std::vector<int>> labels;
  std::vector<std::string> ids;
  std::vector<ItemMeta> meta;
  for (std::size_t i : items) {
    labels.push_back(labels_.at(i));
    ids.push_back(item_ids_.at(i));
    meta.push_back(meta_.at(i));
  }
  return AnnotationMatrix(categories_, annotators_, std::move(labels),
                          std::move(ids), std::move(meta));
}

// ---------------------------------------------------------------------------

double two_tailed_p(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

double classwise_null_se(std::size_t items, std::size_t annotators) {
  const double N = static_cast<double>(items);
  const double n = static_cast<double>(annotators);
  return std::sqrt(2.0 / (N * n * (n - 1.0)));
}

std::string format_p(double p) {
  if (p < 0.001) return "<0.001";
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << p;
  return out.str();
}

namespace {

struct Tallies {
  double N = 0, n = 0;
  double pbar = 0;
  std::vector<double> marginals;
};

Tallies tally(const AnnotationMatrix& m) {
  if (m.item_count() == 0)
    throw Error(ErrorCode::kInvalidMatrix, "no items");
  Tallies t;
  t.N = static_cast<double>(m.item_count());
  t.n = static_cast<double>(m.annotator_count());
  t.marginals.assign(m.category_count(), 0.0);
  const auto counts = m.counts();
  double agreement_sum = 0.0;
  for (const auto& row : counts) {
    double pairs = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      pairs += static_cast<double>(row[j]) * (row[j] - 1);
      t.marginals[j] += row[j];
    }
    agreement_sum += pairs / (t.n * (t.n - 1.0));
  }
  t.pbar = agreement_sum / t.N;
  for (double& p : t.marginals) p /= t.N * t.n;
  return t;
}

// Null variance of overall kappa for the given expected category shares.
double overall_null_variance(const Tallies& t, const std::vector<double>& shares) {
  double pq = 0.0, pq_qp = 0.0;
  for (double p : shares) {
    const double q = 1.0 - p;
    pq += p * q;
    pq_qp += p * q * (q - p);
  }
  return 2.0 / (t.N * t.n * (t.n - 1.0)) * (pq * pq - pq_qp) / (pq * pq);
}

KappaResult finish(KappaVariant variant, const Tallies& t, double expected,
                   const std::vector<double>& shares) {
  KappaResult r;
  r.variant = variant;
  r.observed = t.pbar;
  r.expected = expected;
  if (1.0 - expected <= 0.0) {
    r.defined = false;
    r.kappa = std::nan("");
    r.z = std::nan("");
    r.p = std::nan("");
    return r;
  }
  r.kappa = (t.pbar - expected) / (1.0 - expected);
  const double var = overall_null_variance(t, shares);
  if (var > 0.0) {
    r.z = r.kappa / std::sqrt(var);
    r.p = two_tailed_p(r.z);
  } else {
    r.z = std::nan("");
    r.p = std::nan("");
  }
  return r;
}

}  // namespace

KappaResult fleiss_kappa(const AnnotationMatrix& m) {
  const Tallies t = tally(m);
  double expected = 0.0;
  for (double p : t.marginals) expected += p * p;
  return finish(KappaVariant::kMarginal, t, expected, t.marginals);
}

KappaResult randolph_kappa(const AnnotationMatrix& m) {
  const Tallies t = tally(m);
  const double k = static_cast<double>(m.category_count());
  return finish(KappaVariant::kUniform, t, 1.0 / k,
                std::vector<double>(m.category_count(), 1.0 / k));
}

std::vector<CategoryKappa> classwise_kappa(const AnnotationMatrix& m) {
  const Tallies t = tally(m);
  const auto counts = m.counts();
  const double se = classwise_null_se(m.item_count(), m.annotator_count());
  std::vector<CategoryKappa> out;
  for (std::size_t j = 0; j < m.category_count(); ++j) {
    CategoryKappa c;
    c.category = m.categories()[j];
    const double p = t.marginals[j];
    if (p <= 0.0 || p >= 1.0) {
      c.defined = false;
      c.kappa = c.z = c.p = std::nan("");
      out.push_back(c);
      continue;
    }
    double disagreement = 0.0;
    for (const auto& row : counts)
      disagreement += static_cast<double>(row[j]) * (t.n - row[j]);
    c.kappa = 1.0 - disagreement / (t.N * t.n * (t.n - 1.0) * p * (1.0 - p));
    c.z = c.kappa / se;
    c.p = two_tailed_p(c.z);
    out.push_back(c);
  }
  return out;
}

std::vector<HopStratum> kappa_by_hop(const AnnotationMatrix& m) {
  std::map<int, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < m.item_count(); ++i) {
    const auto& hop = m.meta()[i].hop;
    if (!hop)
      throw Error(ErrorCode::kMissingDepth,
                  "item " + m.item_ids()[i] + " has no hop depth");
    strata[*hop].push_back(i);
  }
  std::vector<HopStratum> out;
  for (const auto& [hop, items] : strata) {
    HopStratum s;
    s.hop = hop;
    s.items = items.size();
    s.sufficient = items.size() >= 2;
    const AnnotationMatrix sub = m.subset(items);
    s.marginal = fleiss_kappa(sub);
    s.uniform = randolph_kappa(sub);
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

AnnotationMatrix read_annotation_csv(
    std::string_view text, const std::vector<std::string>& declared_categories) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw Error(ErrorCode::kMalformedDocument, "empty CSV");
  const csv::Row& header = rows.front();
  if (header.empty() || header.front() != "item")
    throw Error(ErrorCode::kMalformedDocument,
                "CSV header must start with an 'item' column");

  // Trailing metadata columns, in order.
  std::size_t end = header.size();
  int layer_col = -1, diagram_col = -1, hop_col = -1;
  for (int* col : {&hop_col, &diagram_col, &layer_col}) {
    const char* name = col == &hop_col       ? "hop"
                       : col == &diagram_col ? "diagram"
                                             : "layer";
    if (end > 1 && header[end - 1] == name) *col = static_cast<int>(--end);
  }
  std::vector<std::string> annotators(header.begin() + 1,
                                      header.begin() + static_cast<long>(end));
  if (annotators.size() < 2)
    throw Error(ErrorCode::kMalformedDocument,
                "CSV needs at least two annotator columns");

  std::set<std::string> labels(declared_categories.begin(),
                               declared_categories.end());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size())
      throw Error(ErrorCode::kMalformedDocument,
                  "CSV row " + std::to_string(r + 1) + " has " +
                      std::to_string(rows[r].size()) + " fields, expected " +
                      std::to_string(header.size()));
    for (std::size_t c = 1; c < end; ++c) {
      if (rows[r][c].empty())
        throw Error(ErrorCode::kInvalidMatrix,
                    "CSV row " + std::to_string(r + 1) + " has a missing label");
      labels.insert(rows[r][c]);
    }
  }
  std::vector<std::string> categories(labels.begin(), labels.end());
  std::map<std::string, int> index;
  for (std::size_t j = 0; j < categories.size(); ++j)
    index[categories[j]] = static_cast<int>(j);

  std::vector<std::vector<int>> matrix;
  std::vector<std::string> ids;
  std::vector<ItemMeta> meta;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    ids.push_back(row[0]);
    std::vector<int> item;
    for (std::size_t c = 1; c < end; ++c) item.push_back(index.at(row[c]));
    matrix.push_back(std::move(item));
    ItemMeta m;
    if (layer_col >= 0) m.layer = row[static_cast<std::size_t>(layer_col)];
    if (diagram_col >= 0) m.diagram = row[static_cast<std::size_t>(diagram_col)];
    if (hop_col >= 0 && !row[static_cast<std::size_t>(hop_col)].empty()) {
      const std::string& h = row[static_cast<std::size_t>(hop_col)];
      int value = 0;
      auto [ptr, ec] = std::from_chars(h.data(), h.data() + h.size(), value);
      if (ec != std::errc() || ptr != h.data() + h.size() || value < 0)
        throw Error(ErrorCode::kMalformedDocument,
                    "CSV row " + std::to_string(r + 1) + ": bad hop '" + h + "'");
      m.hop = value;
    }
    meta.push_back(std::move(m));
  }
  return AnnotationMatrix(std::move(categories), std::move(annotators),
                          std::move(matrix), std::move(ids), std::move(meta));
}

std::string write_annotation_csv(const AnnotationMatrix& m) {
  bool has_layer = false, has_diagram = false, has_hop = false;
  for (const auto& meta : m.meta()) {
    has_layer |= !meta.layer.empty();
    has_diagram |= !meta.diagram.empty();
    has_hop |= meta.hop.has_value();
  }
  csv::Row header{"item"};
  header.insert(header.end(), m.annotators().begin(), m.annotators().end());
  if (has_layer) header.push_back("layer");
  if (has_diagram) header.push_back("diagram");
  if (has_hop) header.push_back("hop");
  std::string out = csv::format_row(header);
  for (std::size_t i = 0; i < m.item_count(); ++i) {
    csv::Row row{m.item_ids()[i]};
    for (int label : m.labels()[i])
      row.push_back(m.categories()[static_cast<std::size_t>(label)]);
    const ItemMeta& meta = m.meta()[i];
    if (has_layer) row.push_back(meta.layer);
    if (has_diagram) row.push_back(meta.diagram);
    if (has_hop) row.push_back(meta.hop ? std::to_string(*meta.hop) : "");
    out += csv::format_row(row);
  }
  return out;
}

}  // namespace diagraph
