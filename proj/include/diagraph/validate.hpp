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

#ifndef DIAGRAPH_VALIDATE_HPP_
#define DIAGRAPH_VALIDATE_HPP_

#include <map>
#include <string>
#include <vector>

#include "diagraph/model.hpp"

namespace diagraph {

/// Finding codes. Error-severity unless noted.
namespace codes {
inline constexpr const char* kGroupingNotTree = "GROUPING_NOT_TREE";
inline constexpr const char* kGroupArity = "GROUP_ARITY";
inline constexpr const char* kArrowheadInGrouping = "ARROWHEAD_IN_GROUPING";
inline constexpr const char* kUnknownMacro = "UNKNOWN_MACRO";
inline constexpr const char* kMacroOnLeaf = "MACRO_ON_LEAF";
inline constexpr const char* kBadConnectionKind = "BAD_CONNECTION_KIND";
inline constexpr const char* kSelfLoop = "SELF_LOOP";
inline constexpr const char* kDuplicateEdge = "DUPLICATE_EDGE";
inline constexpr const char* kDuplicatePair = "DUPLICATE_PAIR";  // warning
inline constexpr const char* kRstNotTree = "RST_NOT_TREE";
inline constexpr const char* kRstMultipleRoots = "RST_MULTIPLE_ROOTS";  // warning
inline constexpr const char* kNuclearityViolation = "NUCLEARITY_VIOLATION";
inline constexpr const char* kUnknownRelation = "UNKNOWN_RELATION";
inline constexpr const char* kSplitOutsideRst = "SPLIT_OUTSIDE_RST";
inline constexpr const char* kSplitOriginalMismatch = "SPLIT_ORIGINAL_MISMATCH";
inline constexpr const char* kDanglingId = "DANGLING_ID";
inline constexpr const char* kKindMismatch = "KIND_MISMATCH";
inline constexpr const char* kDuplicateId = "DUPLICATE_ID";
inline constexpr const char* kBadOutline = "BAD_OUTLINE";
inline constexpr const char* kBadId = "BAD_ID";
inline constexpr const char* kUnusedElement = "UNUSED_ELEMENT";  // warning
}  // namespace codes

enum class Severity { kError, kWarning };
enum class Layer { kLayout, kGrouping, kConnectivity, kRst };

std::string_view severity_name(Severity s);
std::string_view layer_name(Layer l);

struct Finding {
  Severity severity = Severity::kError;
  Layer layer = Layer::kLayout;
  std::string code;
  std::string path;  // e.g. "/rst/nodes/T3", "/connectivity/edges/2"
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::string diagram_id;
  std::vector<Finding> findings;  // ordered by (layer, code, path)

  bool has_errors() const;
  std::size_t error_count() const;
  /// First error-severity finding in report order, if any.
  const Finding* first_error() const;
};

/// Re-checks every structural invariant of the layout and the three layers,
/// plus cross-layer id resolution. Never throws; findings are the result.
ValidationReport validate_diagram(
    const Diagram& d,
    const RelationVocabulary& vocabulary = RelationVocabulary::standard());

struct CorpusValidation {
  std::vector<ValidationReport> reports;
  std::map<std::string, std::size_t> counts_by_code;
  std::size_t error_count = 0;
  std::size_t warning_count = 0;
};

CorpusValidation validate_corpus(
    const std::vector<Diagram>& corpus,
    const RelationVocabulary& vocabulary = RelationVocabulary::standard());

std::string report_to_json(const ValidationReport& report);
std::string report_to_text(const ValidationReport& report);

}  // namespace diagraph

#endif  // DIAGRAPH_VALIDATE_HPP_
