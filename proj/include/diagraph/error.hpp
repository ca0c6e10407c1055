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

#ifndef DIAGRAPH_ERROR_HPP_
#define DIAGRAPH_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace diagraph {

enum class ErrorCode {
  // core-model mutations
  kInvalidId,
  kUnknownNode,
  kUnknownEdge,
  kArityTooSmall,
  kWouldBreakTree,
  kNotAGroupNode,
  kSelfLoop,
  kDuplicateEdge,
  kNuclearityViolation,
  kParticipantAlreadyBound,
  kUnknownRelation,
  kCannotSplitRelationNode,
  kRelationInUse,
  // ingest
  kMalformedDocument,
  kMissingCoordinates,
  kDuplicateId,
  kSchemaViolation,
  kManifestNotFound,
  // agreement
  kInvalidMatrix,
  kSeedRequired,
  kEmptyPopulation,
  kMissingDepth,
  // features
  kSchemaMismatch,
  kTooFewVectors,
  kRankDeficient,
  // general
  kInvalidArgument,
  kIoError,
};

/// Stable, CamelCase name of an error code, e.g. "NuclearityViolation".
std::string_view error_code_name(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

/// Raised by the annotation-document parser when a structural invariant is
/// violated. `schema_code` is one of the validation finding codes
/// (GROUPING_NOT_TREE, NUCLEARITY_VIOLATION, ...) and `path` locates the
/// offending part of the document.
class SchemaViolation : public Error {
 public:
  SchemaViolation(std::string schema_code, std::string path,
                  const std::string& message)
      : Error(ErrorCode::kSchemaViolation,
              schema_code + " at " + path + ": " + message),
        schema_code_(std::move(schema_code)),
        path_(std::move(path)) {}

  const std::string& schema_code() const noexcept { return schema_code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::string schema_code_;
  std::string path_;
};

}  // namespace diagraph

#endif  // DIAGRAPH_ERROR_HPP_
