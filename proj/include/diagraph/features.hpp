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

// Count-based diagram features, corpus normalisation and 2-D projection.

#ifndef DIAGRAPH_FEATURES_HPP_
#define DIAGRAPH_FEATURES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "diagraph/model.hpp"

namespace diagraph {

/// Ordered feature dimensions:
///   elements.<kind>        5  layout element counts
///   macro.<label>         10  macro-group labels
///   relation.<name>        |vocabulary|, spaces written as '_'
///   nucleusCount, satelliteCount
///   connection.<kind>      3
///   density                1
/// With the standard 20-relation vocabulary that is 41 dimensions.
class FeatureSchema {
 public:
  explicit FeatureSchema(
      const RelationVocabulary& vocabulary = RelationVocabulary::standard());

  /// Identifies the layout: format revision plus a digest of the relation
  /// vocabulary, e.g. "1-r20-8c3f07a2".
  const std::string& version() const noexcept { return version_; }
  const std::vector<std::string>& dimensions() const noexcept { return dimensions_; }
  std::size_t size() const noexcept { return dimensions_.size(); }
  const RelationVocabulary& vocabulary() const noexcept { return vocabulary_; }

  /// Column of a dimension name; size() when absent.
  std::size_t index_of(std::string_view dimension) const;

  std::size_t element_offset() const noexcept { return 0; }
  std::size_t macro_offset() const noexcept { return 5; }
  std::size_t relation_offset() const noexcept { return 15; }
  std::size_t nucleus_index() const noexcept { return 15 + vocabulary_.size(); }
  std::size_t satellite_index() const noexcept { return nucleus_index() + 1; }
  std::size_t connection_offset() const noexcept { return nucleus_index() + 2; }
  std::size_t density_index() const noexcept { return nucleus_index() + 5; }

 private:
  RelationVocabulary vocabulary_;
  std::string version_;
  std::vector<std::string> dimensions_;
};

std::string relation_dimension(std::string_view relation_name);

struct FeatureVector {
  std::string diagram_id;
  std::vector<double> raw;
};

/// Errors: kSchemaMismatch when a relation is missing from the schema.
FeatureVector extract_features(const Diagram& d, const FeatureSchema& schema);

/// Distinct ordered pairs realised by the edges over n (n - 1), where
/// undirected and bidirectional edges realise both orientations and n counts
/// every endpoint plus declared isolated nodes. 0 when n < 2.
double connectivity_density(const ConnectivityGraph& c);

using Matrix = std::vector<std::vector<double>>;

/// Column-wise (x - mean) / sd with the population standard deviation;
/// constant columns become 0. Errors: kTooFewVectors (< 2 rows),
/// kInvalidArgument (ragged rows).
Matrix zscore_normalize(const Matrix& raw);

struct FrequencyTable {
  std::vector<std::string> categories;
  std::vector<std::size_t> counts;
  std::vector<double> frequencies;  // counts / total; all 0 when total is 0
  std::size_t total = 0;
};

struct CorpusFrequencies {
  FrequencyTable macro_groups;
  FrequencyTable relations;
  FrequencyTable connections;
};

/// Category shares across the corpus. Relation names outside `vocabulary`
/// are appended after it.
CorpusFrequencies corpus_frequencies(
    const std::vector<Diagram>& corpus,
    const RelationVocabulary& vocabulary = RelationVocabulary::standard());

struct Projection {
  Matrix coords;      // rows x 2
  Matrix components;  // 2 x dimensions, unit length
  std::vector<double> mean;
  std::vector<double> eigenvalues;  // variance along each component
};

/// Principal-component projection onto the top two components. Each
/// component is oriented so that its largest-magnitude loading is positive.
/// The result does not depend on row order beyond permuting `coords`.
/// Errors: kTooFewVectors, kInvalidArgument, kRankDeficient (the data span
/// fewer than two dimensions).
Projection project_pca(const Matrix& normalized);

/// Reads coordinates for `diagram_ids` from a `diagram,x,y` sidecar CSV.
/// Errors: kMalformedDocument (bad header, bad number, missing diagram).
Matrix project_external(const std::vector<std::string>& diagram_ids,
                        std::string_view sidecar_csv);

/// Feature matrix CSV: header is the schema dimensions, one row per vector.
std::string features_to_csv(const FeatureSchema& schema, const Matrix& rows);
/// `diagram,x,y` rows.
std::string coords_to_csv(const std::vector<std::string>& diagram_ids,
                          const Matrix& coords);
std::string frequencies_to_csv(const FrequencyTable& table);

}  // namespace diagraph

#endif  // DIAGRAPH_FEATURES_HPP_
