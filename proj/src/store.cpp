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

#include "diagraph/store.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>

#include "diagraph/agreement.hpp"
#include "diagraph/csv.hpp"
#include "diagraph/error.hpp"
#include "diagraph/graph_ops.hpp"

namespace diagraph {

using nlohmann::json;

namespace {

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

// Grouping principles offered as follow-up choices.
const std::vector<std::string>& grouping_principles() {
  static const std::vector<std::string> kPrinciples = {
      "Guideline",  "Proximity",     "Closure",  "Similarity",
      "Continuity", "Connectedness", "Symmetry"};
  return kPrinciples;
}

std::string format_fraction(double f) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, f);
  return std::string(buf, ptr);
}

struct BadArgs : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ElementId parse_arg_id(const std::string& text, const char* name) {
  auto id = ElementId::try_parse(text);
  if (!id) throw BadArgs(std::string("argument '") + name + "': invalid id '" + text + "'");
  return *id;
}

ElementId id_arg(const json& args, const char* name) {
  if (!args.contains(name) || !args[name].is_string())
    throw BadArgs(std::string("missing string argument '") + name + "'");
  return parse_arg_id(args[name].get<std::string>(), name);
}

std::vector<ElementId> ids_arg(const json& args, const char* name,
                               bool required = true) {
  std::vector<ElementId> out;
  if (!args.contains(name)) {
    if (required) throw BadArgs(std::string("missing list argument '") + name + "'");
    return out;
  }
  if (!args[name].is_array())
    throw BadArgs(std::string("argument '") + name + "' must be a list of ids");
  for (const auto& v : args[name]) {
    if (!v.is_string())
      throw BadArgs(std::string("argument '") + name + "' must be a list of ids");
    out.push_back(parse_arg_id(v.get<std::string>(), name));
  }
  return out;
}

std::string string_arg(const json& args, const char* name) {
  if (!args.contains(name) || !args[name].is_string())
    throw BadArgs(std::string("missing string argument '") + name + "'");
  return args[name].get<std::string>();
}

ConnectionKind kind_arg(const json& args) {
  const std::string name = string_arg(args, "kind");
  auto kind = parse_connection_kind(name);
  if (!kind) throw BadArgs("unknown connection kind '" + name + "'");
  return *kind;
}

// Applies one action to a copy of `d`; returns the id it created, if any.
std::optional<ElementId> apply(Diagram& d, std::string_view action,
                               const json& args,
                               const RelationVocabulary& vocabulary) {
  if (!args.is_object()) throw BadArgs("args must be an object");
  if (action == "addGroup") {
    const auto children = ids_arg(args, "children");
    auto r = add_group(d.grouping, children);
    d.grouping = std::move(r.graph);
    return r.id;
  }
  if (action == "dissolveGroup") {
    d.grouping = dissolve_group(d.grouping, id_arg(args, "group"));
    return std::nullopt;
  }
  if (action == "setMacro") {
    const std::string label = string_arg(args, "label");
    auto group = parse_macro_group(label);
    if (!group)
      throw Error(ErrorCode::kInvalidArgument, "unknown macro-group '" + label + "'");
    d.grouping = set_macro_label(d.grouping, id_arg(args, "node"), *group);
    return std::nullopt;
  }
  if (action == "addConnection") {
    d.connectivity = add_connection(d.connectivity, d.grouping,
                                    id_arg(args, "source"),
                                    id_arg(args, "target"), kind_arg(args));
    return std::nullopt;
  }
  if (action == "removeConnection") {
    d.connectivity = remove_connection(d.connectivity, id_arg(args, "source"),
                                       id_arg(args, "target"), kind_arg(args));
    return std::nullopt;
  }
  if (action == "addRelation") {
    const auto nuclei = ids_arg(args, "nuclei");
    const auto satellites = ids_arg(args, "satellites", false);
    auto r = add_relation(d.rst, string_arg(args, "name"), nuclei, satellites,
                          vocabulary);
    d.rst = std::move(r.graph);
    return r.id;
  }
  if (action == "removeRelation") {
    d.rst = remove_relation(d.rst, id_arg(args, "relation"));
    return std::nullopt;
  }
  if (action == "splitNode") {
    auto r = split_node(d.rst, id_arg(args, "node"));
    d.rst = std::move(r.graph);
    return r.id;
  }
  throw BadArgs("unknown action '" + std::string(action) + "'");
}

}  // namespace

std::vector<std::string> task_choices(TaskLayer layer,
                                      const RelationVocabulary& vocabulary) {
  std::vector<std::string> out;
  switch (layer) {
    case TaskLayer::kGrouping:
      out = grouping_principles();
      out.push_back(kNoGroup);
      break;
    case TaskLayer::kMacro:
      for (MacroGroup g : kAllMacroGroups) out.emplace_back(macro_group_name(g));
      break;
    case TaskLayer::kConnectivity:
      for (ConnectionKind k : kAllConnectionKinds)
        out.emplace_back(connection_kind_name(k));
      out.push_back(kNoConnection);
      break;
    case TaskLayer::kRst:
      for (const auto& e : vocabulary.entries()) out.push_back(e.name);
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------

void AnnotationStore::mount(const std::filesystem::path& root,
                            RelationVocabulary vocabulary) {
  CorpusManifest manifest = load_manifest(root);
  std::map<std::string, std::unique_ptr<Slot>, std::less<>> slots;
  for (const ManifestEntry& entry : manifest.entries) {
    auto slot = std::make_unique<Slot>();
    slot->entry = entry;
    DiagramSnapshot& s = slot->snapshot;
    s.id = entry.id;
    s.version = 1;
    s.last_modified_ms = now_ms();
    if (entry.image) s.image = manifest.resolve(*entry.image);
    s.report.diagram_id = entry.id;
    try {
      s.diagram = load_diagram(manifest, entry, false, vocabulary);
      s.report = validate_diagram(*s.diagram, vocabulary);
    } catch (const SchemaViolation& e) {
      s.load_error = e.schema_code();
      s.load_message = e.what();
    } catch (const Error& e) {
      s.load_error = std::string(e.code_name());
      s.load_message = e.what();
    }
    slots[entry.id] = std::move(slot);
  }

  std::unique_lock lock(mount_mutex_);
  manifest_ = std::move(manifest);
  vocabulary_ = std::move(vocabulary);
  slots_ = std::move(slots);
  mounted_ = true;
  std::lock_guard tasks(task_mutex_);
  samples_.clear();
}

bool AnnotationStore::mounted() const {
  std::shared_lock lock(mount_mutex_);
  return mounted_;
}

std::filesystem::path AnnotationStore::root() const {
  std::shared_lock lock(mount_mutex_);
  return manifest_.root;
}

std::vector<DiagramSummary> AnnotationStore::list() const {
  std::shared_lock lock(mount_mutex_);
  std::vector<DiagramSummary> out;
  for (const auto& [id, slot] : slots_) {
    std::lock_guard guard(slot->mutex);
    const DiagramSnapshot& s = slot->snapshot;
    DiagramSummary summary;
    summary.id = id;
    summary.category = slot->entry.category;
    summary.version = s.version;
    summary.errors = s.report.error_count();
    summary.warnings = s.report.findings.size() - summary.errors;
    if (!s.diagram) summary.errors = std::max<std::size_t>(summary.errors, 1);
    summary.status = summary.errors ? "error" : "ok";
    out.push_back(std::move(summary));
  }
  return out;
}

std::optional<DiagramSnapshot> AnnotationStore::get(std::string_view id) const {
  std::shared_lock lock(mount_mutex_);
  auto it = slots_.find(id);
  if (it == slots_.end()) return std::nullopt;
  std::lock_guard guard(it->second->mutex);
  return it->second->snapshot;
}

MutationOutcome AnnotationStore::mutate(std::string_view id,
                                        std::int64_t expected_version,
                                        std::string_view action,
                                        const json& args) {
  std::shared_lock lock(mount_mutex_);
  MutationOutcome out;
  auto it = slots_.find(id);
  if (it == slots_.end()) {
    out.status = 404;
    out.code = "UnknownDiagram";
    out.message = "no diagram '" + std::string(id) + "'";
    return out;
  }
  Slot& slot = *it->second;
  std::unique_lock guard(slot.mutex);
  DiagramSnapshot& s = slot.snapshot;
  out.version = s.version;
  out.report = s.report;
  if (expected_version != s.version) {
    out.status = 409;
    out.code = "VersionConflict";
    out.message = "expected version " + std::to_string(expected_version) +
                  ", current version is " + std::to_string(s.version);
    return out;
  }
  if (!s.diagram) {
    out.status = 422;
    out.code = s.load_error;
    out.message = s.load_message;
    return out;
  }

  Diagram next = *s.diagram;
  try {
    out.created = apply(next, action, args, vocabulary_);
  } catch (const BadArgs& e) {
    out.status = 400;
    out.code = "InvalidArgument";
    out.message = e.what();
    out.created.reset();
    return out;
  } catch (const Error& e) {
    out.status = 422;
    out.code = std::string(e.code_name());
    out.message = e.what();
    out.created.reset();
    return out;
  }

  ValidationReport report = validate_diagram(next, vocabulary_);
  if (const Finding* f = report.first_error()) {
    out.status = 422;
    out.code = f->code;
    out.message = f->path + ": " + f->message;
    out.report = std::move(report);
    out.created.reset();
    return out;
  }

  // Persist before publishing the new version.
  ManifestEntry& entry = slot.entry;
  const bool new_file = !entry.annotation.has_value();
  if (new_file) entry.annotation = std::filesystem::path("annotations") / (entry.id + ".json");
  try {
    write_file_atomic(manifest_.resolve(*entry.annotation), serialize(next));
    if (new_file) {
      std::lock_guard m(manifest_mutex_);
      for (ManifestEntry& e : manifest_.entries)
        if (e.id == entry.id) e.annotation = entry.annotation;
      write_manifest(manifest_);
    }
  } catch (const Error& e) {
    if (new_file) entry.annotation.reset();
    out.status = 500;
    out.code = std::string(e.code_name());
    out.message = e.what();
    out.created.reset();
    return out;
  }

  s.diagram = std::move(next);
  s.report = report;
  s.version += 1;
  s.last_modified_ms = now_ms();
  out.version = s.version;
  out.report = std::move(report);
  return out;
}

// ---------------------------------------------------------------------------
// Task feed

std::string AnnotationStore::responses_file_name(TaskLayer layer, double fraction,
                                                 std::uint64_t seed) {
  return std::string(task_layer_name(layer)) + "-f" + format_fraction(fraction) +
         "-s" + std::to_string(seed) + ".csv";
}

AnnotationStore::Sample& AnnotationStore::sample_for(TaskLayer layer,
                                                     double fraction,
                                                     std::uint64_t seed) {
  const std::string key = responses_file_name(layer, fraction, seed);
  auto it = samples_.find(key);
  if (it != samples_.end()) return it->second;

  std::vector<Diagram> corpus;
  for (const auto& [id, slot] : slots_) {
    std::lock_guard guard(slot->mutex);
    if (slot->snapshot.diagram && !slot->snapshot.report.has_errors())
      corpus.push_back(*slot->snapshot.diagram);
  }
  Sample sample;
  sample.tasks = sample_agreement_tasks(corpus, layer, fraction, seed);
  for (std::size_t i = 0; i < sample.tasks.size(); ++i)
    sample.index[sample.tasks[i].key()] = i;
  return samples_.emplace(key, std::move(sample)).first->second;
}

TaskOutcome AnnotationStore::next_task(std::string_view session, TaskLayer layer,
                                       double fraction, std::uint64_t seed) {
  std::shared_lock lock(mount_mutex_);
  std::lock_guard tasks(task_mutex_);
  TaskOutcome out;
  Sample* sample = nullptr;
  try {
    sample = &sample_for(layer, fraction, seed);
  } catch (const Error& e) {
    out.status = e.code() == ErrorCode::kEmptyPopulation ? 410 : 400;
    out.message = e.what();
    return out;
  }
  std::size_t answered = 0;
  const AgreementTask* next = nullptr;
  std::size_t position = 0;
  for (std::size_t i = 0; i < sample->tasks.size(); ++i) {
    const auto& answers = sample->answers[sample->tasks[i].key()];
    if (answers.count(std::string(session))) {
      ++answered;
    } else if (!next) {
      next = &sample->tasks[i];
      position = i;
    }
  }
  if (!next) {
    out.status = 410;
    out.message = "all " + std::to_string(sample->tasks.size()) +
                  " tasks answered by session '" + std::string(session) + "'";
    return out;
  }

  json highlight = json::array();
  for (const ElementId& h : next->highlight) highlight.push_back(h.str());
  json p = {{"layer", task_layer_name(layer)},
            {"key", next->key()},
            {"diagram", next->diagram_id},
            {"unit", next->unit},
            {"highlight", highlight},
            {"position", position},
            {"total", sample->tasks.size()},
            {"answered", answered},
            {"fraction", fraction},
            {"seed", seed}};
  switch (layer) {
    case TaskLayer::kGrouping:
      p["question"] = "Do the highlighted elements form a visual group?";
      p["choices"] = {"yes", "no"};
      p["followUp"] = {
          {"question", "Which grouping principle or guideline justifies the group?"},
          {"choices", grouping_principles()}};
      break;
    case TaskLayer::kMacro:
      p["question"] = "Which macro-group describes the highlighted node?";
      p["choices"] = task_choices(layer, vocabulary_);
      break;
    case TaskLayer::kConnectivity:
      p["question"] = "How are the highlighted source and target connected?";
      p["choices"] = task_choices(layer, vocabulary_);
      break;
    case TaskLayer::kRst:
      p["question"] = "Which relation holds at the highlighted relation node?";
      p["choices"] = task_choices(layer, vocabulary_);
      if (next->hop_depth) p["hop"] = *next->hop_depth;
      break;
  }
  out.payload = std::move(p);
  return out;
}

TaskOutcome AnnotationStore::record_response(std::string_view session,
                                             TaskLayer layer, double fraction,
                                             std::uint64_t seed,
                                             std::string_view key,
                                             const json& answer) {
  std::shared_lock lock(mount_mutex_);
  std::lock_guard tasks(task_mutex_);
  TaskOutcome out;
  if (session.empty()) {
    out.status = 400;
    out.message = "session is required";
    return out;
  }
  Sample* sample = nullptr;
  try {
    sample = &sample_for(layer, fraction, seed);
  } catch (const Error& e) {
    out.status = e.code() == ErrorCode::kEmptyPopulation ? 410 : 400;
    out.message = e.what();
    return out;
  }
  if (!sample->index.count(std::string(key))) {
    out.status = 404;
    out.message = "task '" + std::string(key) + "' is not part of this sample";
    return out;
  }

  std::string label;
  if (layer == TaskLayer::kGrouping && answer.contains("valid")) {
    if (!answer["valid"].is_boolean()) {
      out.status = 400;
      out.message = "'valid' must be a boolean";
      return out;
    }
    if (!answer["valid"].get<bool>()) {
      label = kNoGroup;
    } else if (answer.contains("principle") && answer["principle"].is_string()) {
      label = answer["principle"].get<std::string>();
    } else {
      out.status = 400;
      out.message = "a valid group needs a 'principle'";
      return out;
    }
  } else if (answer.contains("label") && answer["label"].is_string()) {
    label = answer["label"].get<std::string>();
  } else {
    out.status = 400;
    out.message = "response needs a 'label'";
    return out;
  }
  const auto choices = task_choices(layer, vocabulary_);
  if (std::find(choices.begin(), choices.end(), label) == choices.end()) {
    out.status = 400;
    out.message = "'" + label + "' is not a choice for " +
                  std::string(task_layer_name(layer)) + " tasks";
    return out;
  }

  auto& answers = sample->answers[std::string(key)];
  answers[std::string(session)] = label;
  if (std::find(sample->sessions.begin(), sample->sessions.end(), session) ==
      sample->sessions.end())
    sample->sessions.emplace_back(session);
  try {
    write_responses(layer, fraction, seed, *sample);
  } catch (const Error& e) {
    out.status = 500;
    out.message = e.what();
    return out;
  }
  std::size_t answered = 0;
  for (const auto& t : sample->tasks)
    if (sample->answers[t.key()].count(std::string(session))) ++answered;
  out.payload = {{"recorded", true},
                 {"label", label},
                 {"answered", answered},
                 {"total", sample->tasks.size()},
                 {"file", "responses/" + responses_file_name(layer, fraction, seed)}};
  return out;
}

void AnnotationStore::write_responses(TaskLayer layer, double fraction,
                                      std::uint64_t seed,
                                      const Sample& sample) const {
  // Only items answered by every session so far form complete rows.
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> rows;
  std::vector<ItemMeta> meta;
  for (const AgreementTask& t : sample.tasks) {
    auto it = sample.answers.find(t.key());
    if (it == sample.answers.end()) continue;
    std::vector<std::string> row;
    for (const auto& s : sample.sessions) {
      auto a = it->second.find(s);
      if (a == it->second.end()) break;
      row.push_back(a->second);
    }
    if (row.size() != sample.sessions.size()) continue;
    ids.push_back(t.key());
    rows.push_back(std::move(row));
    meta.push_back({std::string(task_layer_name(layer)), t.diagram_id, t.hop_depth});
  }

  csv::Row header{"item"};
  header.insert(header.end(), sample.sessions.begin(), sample.sessions.end());
  header.insert(header.end(), {"layer", "diagram"});
  if (layer == TaskLayer::kRst) header.push_back("hop");
  std::string text = csv::format_row(header);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv::Row row{ids[i]};
    row.insert(row.end(), rows[i].begin(), rows[i].end());
    row.push_back(meta[i].layer);
    row.push_back(meta[i].diagram);
    if (layer == TaskLayer::kRst)
      row.push_back(meta[i].hop ? std::to_string(*meta[i].hop) : "");
    text += csv::format_row(row);
  }
  write_file_atomic(manifest_.root / "responses" /
                        responses_file_name(layer, fraction, seed),
                    text);
}

}  // namespace diagraph
