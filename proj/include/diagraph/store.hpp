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

// Versioned, validate-on-write annotation store backing the HTTP service.
//
// Every diagram has an integer version, 1 after mounting. A mutation names
// the version it was computed against; it is rejected with 409 when another
// write got there first. Accepted writes are persisted in canonical form
// before the new version becomes visible.

#ifndef DIAGRAPH_STORE_HPP_
#define DIAGRAPH_STORE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "diagraph/ingest.hpp"
#include "diagraph/sampling.hpp"
#include "diagraph/validate.hpp"

namespace diagraph {

struct DiagramSummary {
  std::string id;
  std::optional<std::string> category;
  std::string status;  // "ok" or "error"
  std::int64_t version = 0;
  std::size_t errors = 0;
  std::size_t warnings = 0;
};

struct DiagramSnapshot {
  std::string id;
  std::int64_t version = 0;
  std::int64_t last_modified_ms = 0;
  std::optional<Diagram> diagram;  // absent when the files failed to load
  std::string load_error;          // error code when `diagram` is absent
  std::string load_message;
  ValidationReport report;
  std::optional<std::filesystem::path> image;
};

/// Outcome of a mutation, with HTTP-style status: 200 accepted, 400 bad
/// request, 404 unknown diagram, 409 version conflict, 422 rejected by the
/// model or the validator.
struct MutationOutcome {
  int status = 200;
  std::string code;  // error code on rejection
  std::string message;
  std::int64_t version = 0;         // current version after the call
  std::optional<ElementId> created;  // id of a new group, relation or copy
  ValidationReport report;
};

/// One step of an agreement-experiment task feed.
struct TaskOutcome {
  int status = 200;  // 200, 400, 404 or 410 when the session is done
  std::string message;
  nlohmann::json payload;
};

/// Label set offered for each task layer. Grouping answers are either a
/// grouping principle or "No-group".
std::vector<std::string> task_choices(TaskLayer layer,
                                      const RelationVocabulary& vocabulary);
inline constexpr const char* kNoGroup = "No-group";
inline constexpr const char* kNoConnection = "none";

class AnnotationStore {
 public:
  AnnotationStore() = default;
  AnnotationStore(const AnnotationStore&) = delete;
  AnnotationStore& operator=(const AnnotationStore&) = delete;

  /// Loads the corpus at `root`, replacing any previous mount. Files that
  /// fail to parse or validate stay listed with status "error".
  /// Errors: kManifestNotFound, kMalformedDocument.
  void mount(const std::filesystem::path& root,
             RelationVocabulary vocabulary = RelationVocabulary::standard());
  bool mounted() const;
  std::filesystem::path root() const;
  const RelationVocabulary& vocabulary() const { return vocabulary_; }

  /// Sorted by id. Empty when nothing is mounted.
  std::vector<DiagramSummary> list() const;
  std::optional<DiagramSnapshot> get(std::string_view id) const;

  /// Applies `action` (addGroup, dissolveGroup, setMacro, addConnection,
  /// removeConnection, addRelation, removeRelation, splitNode) with JSON
  /// `args` if `expected_version` is current and the result validates.
  MutationOutcome mutate(std::string_view id, std::int64_t expected_version,
                         std::string_view action, const nlohmann::json& args);

  /// Next task of the sample (layer, fraction, seed) that `session` has not
  /// answered yet.
  TaskOutcome next_task(std::string_view session, TaskLayer layer,
                        double fraction, std::uint64_t seed);
  /// Records an answer and rewrites the sample's response CSV under
  /// `<root>/responses/`. `answer` holds "label", or for grouping tasks
  /// "valid" plus "principle".
  TaskOutcome record_response(std::string_view session, TaskLayer layer,
                              double fraction, std::uint64_t seed,
                              std::string_view key, const nlohmann::json& answer);

  static std::string responses_file_name(TaskLayer layer, double fraction,
                                         std::uint64_t seed);

 private:
  struct Slot {
    mutable std::mutex mutex;
    ManifestEntry entry;
    DiagramSnapshot snapshot;
  };
  struct Sample {
    std::vector<AgreementTask> tasks;
    std::map<std::string, std::size_t> index;  // task key -> position
    // key -> session -> label
    std::map<std::string, std::map<std::string, std::string>> answers;
    std::vector<std::string> sessions;  // in order of first answer
  };

  Sample& sample_for(TaskLayer layer, double fraction, std::uint64_t seed);
  void persist_manifest_locked();
  void write_responses(TaskLayer layer, double fraction, std::uint64_t seed,
                       const Sample& sample) const;

  mutable std::shared_mutex mount_mutex_;
  bool mounted_ = false;
  CorpusManifest manifest_;
  RelationVocabulary vocabulary_ = RelationVocabulary::standard();
  std::map<std::string, std::unique_ptr<Slot>, std::less<>> slots_;

  std::mutex manifest_mutex_;
  std::mutex task_mutex_;
  std::map<std::string, Sample> samples_;
};

}  // namespace diagraph

#endif  // DIAGRAPH_STORE_HPP_
