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

// Reading and writing corpus files.
//
// Annotation documents use one canonical JSON form:
//
//   {
//     "connectivity": {"edges": [{"kind", "source", "target"}, ...],
//                      "nodes": [...]  // only isolated nodes, only if any
//                     },
//     "grouping": {"edges": [[parent, child], ...],
//                  "macro": [{"label", "node"}, ...],
//                  "nodes": [{"id", "kind"}, ...]},
//     "id": "<diagram id>",
//     "rst": {"edges": [{"child", "nuclearity", "parent"}, ...],
//             "nodes": [{"id", "kind", "name"?, "originalId"?}, ...]}
//   }
//
// Keys are sorted, lists are sorted by id (natural id order), output is
// UTF-8 with two-space indentation and a trailing newline.

#ifndef DIAGRAPH_INGEST_HPP_
#define DIAGRAPH_INGEST_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diagraph/model.hpp"

namespace diagraph {

/// Parses an AI2D layout-segmentation document. Element sections are
/// `text`, `blobs`, `arrows`, `arrowHeads` and `imageConsts`, each either an
/// object keyed by id or an array; `relationships` holds the parse-graph
/// edges. Unknown top-level keys are reported through `warnings`.
///
/// Errors: kMalformedDocument, kMissingCoordinates, kDuplicateId.
LayoutSegmentation parse_ai2d(std::string_view bytes,
                              std::vector<std::string>* warnings = nullptr,
                              std::string_view fallback_id = {});

/// Parses an annotation document against its layout and rejects it with a
/// SchemaViolation on the first violated invariant (in validation-report
/// order). A returned Diagram always validates without errors.
Diagram parse_ai2drst(std::string_view bytes, const LayoutSegmentation& layout,
                      const RelationVocabulary& vocabulary =
                          RelationVocabulary::standard());

/// Syntax-level parse only: vocabulary, id and kind checks, no structural
/// invariants. Used to report every finding of a broken file.
Diagram parse_ai2drst_unchecked(std::string_view bytes,
                                const LayoutSegmentation& layout,
                                const RelationVocabulary& vocabulary =
                                    RelationVocabulary::standard());

std::string serialize(const Diagram& d);

/// Diagram with the grouping star over the layout and empty connectivity and
/// discourse layers.
Diagram skeleton_diagram(const LayoutSegmentation& layout);

/// Best-effort import of the node-link JSON layout used by the published
/// corpus release (one graph per layer, networkx attribute names). See
/// README for the field mapping.
Diagram convert_published(std::string_view bytes,
                          const LayoutSegmentation& layout,
                          const RelationVocabulary& vocabulary =
                              RelationVocabulary::standard());

// ---------------------------------------------------------------------------
// Corpus

/// Name of the environment variable giving the default corpus root.
inline constexpr const char* kCorpusRootEnv = "DIAGRAPH_CORPUS_ROOT";

struct ManifestEntry {
  std::string id;
  std::filesystem::path ai2d;                       // relative to root
  std::optional<std::filesystem::path> annotation;  // absent: not annotated
  std::optional<std::filesystem::path> image;
  std::optional<std::string> category;
};

/// `manifest.json` at the corpus root:
/// {"schemaVersion": "1", "diagrams": [{"id", "ai2d", "annotation"?,
/// "image"?, "category"?}, ...]}
struct CorpusManifest {
  std::filesystem::path root;
  std::string schema_version = "1";
  std::vector<ManifestEntry> entries;

  std::filesystem::path resolve(const std::filesystem::path& p) const {
    return p.is_absolute() ? p : root / p;
  }
  const ManifestEntry* find(std::string_view id) const;
};

/// Errors: kManifestNotFound, kMalformedDocument, kDuplicateId.
CorpusManifest load_manifest(const std::filesystem::path& root);
void write_manifest(const CorpusManifest& manifest);
/// `$DIAGRAPH_CORPUS_ROOT`, or nullopt when unset.
std::optional<std::filesystem::path> default_corpus_root();

struct LoadFailure {
  std::string diagram_id;
  std::filesystem::path path;
  std::string code;  // error code or schema finding code
  std::string message;
};

struct LoadedCorpus {
  std::vector<Diagram> diagrams;  // manifest order
  std::vector<LoadFailure> failures;
};

/// Loads one entry. Entries without an annotation file load as skeletons.
/// `checked` selects parse_ai2drst over parse_ai2drst_unchecked.
Diagram load_diagram(const CorpusManifest& manifest, const ManifestEntry& entry,
                     bool checked = true,
                     const RelationVocabulary& vocabulary =
                         RelationVocabulary::standard());

/// Loads every diagram; per-file failures are collected, never thrown.
LoadedCorpus load_corpus(const CorpusManifest& manifest,
                         const RelationVocabulary& vocabulary =
                             RelationVocabulary::standard());

/// Errors: kIoError.
std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary file and rename. Errors: kIoError.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

}  // namespace diagraph

#endif  // DIAGRAPH_INGEST_HPP_
