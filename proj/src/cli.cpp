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

#include "diagraph/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "diagraph/agreement.hpp"
#include "diagraph/csv.hpp"
#include "diagraph/error.hpp"
#include "diagraph/features.hpp"
#include "diagraph/ingest.hpp"
#include "diagraph/mace.hpp"
#include "diagraph/sampling.hpp"
#include "diagraph/server.hpp"
#include "diagraph/store.hpp"
#include "diagraph/validate.hpp"

namespace diagraph {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string fixed(double v, int digits = 3) {
  if (std::isnan(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json number_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string lpad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kIoError:
    case ErrorCode::kManifestNotFound:
      return kExitIo;
    default:
      return kExitUsage;
  }
}

struct Common {
  std::string relations_file;
  RelationVocabulary vocabulary = RelationVocabulary::standard();

  void load() {
    if (!relations_file.empty())
      vocabulary = RelationVocabulary::from_json(read_file(relations_file));
  }
};

std::optional<fs::path> corpus_root(const std::string& given) {
  if (!given.empty()) return fs::path(given);
  return default_corpus_root();
}

// -- validate ---------------------------------------------------------------

struct ValidateOptions {
  std::string path;
  std::string layout;
  std::string format = "text";
};

int cmd_validate(const ValidateOptions& o, const Common& c, std::ostream& out,
                 std::ostream& err) {
  std::vector<ValidationReport> reports;
  auto failure_report = [](const std::string& id, const std::string& code,
                           const std::string& message) {
    ValidationReport r;
    r.diagram_id = id;
    r.findings.push_back({Severity::kError, Layer::kLayout, code, "/", message});
    return r;
  };

  std::error_code ec;
  if (!fs::exists(o.path, ec)) {
    err << "diagraph: no such file or directory: " << o.path << "\n";
    return kExitIo;
  }
  if (fs::is_directory(o.path)) {
    const CorpusManifest manifest = load_manifest(o.path);
    for (const ManifestEntry& entry : manifest.entries) {
      try {
        Diagram d = load_diagram(manifest, entry, false, c.vocabulary);
        reports.push_back(validate_diagram(d, c.vocabulary));
      } catch (const SchemaViolation& e) {
        ValidationReport r = failure_report(entry.id, e.schema_code(), e.what());
        r.findings.front().path = e.path();
        reports.push_back(std::move(r));
      } catch (const Error& e) {
        reports.push_back(failure_report(entry.id, std::string(e.code_name()), e.what()));
      }
    }
  } else {
    if (o.layout.empty()) {
      err << "diagraph validate: --layout is required for a single annotation file\n";
      return kExitUsage;
    }
    const std::string bytes = read_file(o.path);
    const LayoutSegmentation layout =
        parse_ai2d(read_file(o.layout), nullptr, fs::path(o.layout).stem().string());
    try {
      Diagram d = parse_ai2drst_unchecked(bytes, layout, c.vocabulary);
      reports.push_back(validate_diagram(d, c.vocabulary));
    } catch (const SchemaViolation& e) {
      ValidationReport r = failure_report(layout.diagram_id, e.schema_code(), e.what());
      r.findings.front().path = e.path();
      reports.push_back(std::move(r));
    } catch (const Error& e) {
      reports.push_back(
          failure_report(layout.diagram_id, std::string(e.code_name()), e.what()));
    }
  }

  const CorpusValidation summary = [&] {
    CorpusValidation s;
    for (const auto& r : reports)
      for (const auto& f : r.findings) {
        ++s.counts_by_code[f.code];
        (f.severity == Severity::kError ? s.error_count : s.warning_count) += 1;
      }
    return s;
  }();

  if (o.format == "json") {
    ordered_json doc;
    doc["reports"] = ordered_json::array();
    for (const auto& r : reports) doc["reports"].push_back(ordered_json::parse(report_to_json(r)));
    doc["summary"] = {{"diagrams", reports.size()},
                      {"errors", summary.error_count},
                      {"warnings", summary.warning_count},
                      {"byCode", summary.counts_by_code}};
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& r : reports)
      if (!r.findings.empty()) out << report_to_text(r);
    out << reports.size() << " diagram(s), " << summary.error_count << " error(s), "
        << summary.warning_count << " warning(s)\n";
  }
  return summary.error_count ? kExitFindings : kExitOk;
}

// -- agree ------------------------------------------------------------------

struct AgreeOptions {
  std::string csv;
  bool mace = false;
  bool by_hop = false;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> categories;
  int restarts = 10;
  int iterations = 50;
  std::optional<double> smoothing;
  std::string format = "text";
};

ordered_json kappa_json(const KappaResult& k) {
  return {{"kappa", number_or_null(k.kappa)},
          {"z", number_or_null(k.z)},
          {"p", number_or_null(k.p)},
          {"observed", k.observed},
          {"expected", k.expected}};
}

int cmd_agree(const AgreeOptions& o, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_file(o.csv);
  } catch (const Error& e) {
    err << "diagraph agree: " << e.what() << "\n";
    return kExitIo;
  }
  const AnnotationMatrix m = read_annotation_csv(text, o.categories);
  const KappaResult marginal = fleiss_kappa(m);
  const KappaResult uniform = randolph_kappa(m);
  const auto classes = classwise_kappa(m);
  std::vector<HopStratum> strata;
  if (o.by_hop) strata = kappa_by_hop(m);
  std::optional<MaceResult> mace_result;
  if (o.mace) {
    MaceConfig config;
    config.restarts = o.restarts;
    config.iterations = o.iterations;
    config.smoothing = o.smoothing;
    config.seed = o.seed;
    mace_result = mace(m, config);
  }

  if (o.format == "json") {
    ordered_json doc;
    doc["items"] = m.item_count();
    doc["annotators"] = m.annotator_count();
    doc["categories"] = m.categories();
    doc["marginal"] = kappa_json(marginal);
    doc["uniform"] = kappa_json(uniform);
    doc["classwise"] = ordered_json::array();
    for (const auto& c : classes)
      doc["classwise"].push_back({{"category", c.category},
                                  {"defined", c.defined},
                                  {"kappa", number_or_null(c.kappa)},
                                  {"z", number_or_null(c.z)},
                                  {"p", number_or_null(c.p)}});
    if (o.by_hop) {
      doc["byHop"] = ordered_json::array();
      for (const auto& s : strata)
        doc["byHop"].push_back({{"hop", s.hop},
                                {"items", s.items},
                                {"sufficient", s.sufficient},
                                {"marginal", kappa_json(s.marginal)},
                                {"uniform", kappa_json(s.uniform)}});
    }
    if (mace_result) {
      const MaceResult& r = *mace_result;
      ordered_json competence = ordered_json::object();
      for (std::size_t j = 0; j < m.annotator_count(); ++j)
        competence[m.annotators()[j]] = r.competence[j];
      doc["mace"] = {{"competence", competence},
                     {"logPosterior", r.log_likelihood},
                     {"bestRestart", r.best_restart},
                     {"config", {{"restarts", r.restarts},
                                 {"iterations", r.iterations},
                                 {"smoothing", r.smoothing},
                                 {"seed", r.seed}}}};
    }
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  out << "items " << m.item_count() << ", annotators " << m.annotator_count()
      << ", categories " << m.category_count() << "\n\n";
  out << pad("", 10) << lpad("kappa", 8) << lpad("z", 10) << lpad("p", 10) << "\n";
  for (const auto* k : {&marginal, &uniform})
    out << pad(k == &marginal ? "marginal" : "uniform", 10) << lpad(fixed(k->kappa), 8)
        << lpad(fixed(k->z), 10) << lpad(format_p(k->p), 10) << "\n";

  std::size_t width = 8;
  for (const auto& c : classes) width = std::max(width, c.category.size() + 2);
  out << "\n" << pad("category", width) << lpad("kappa", 8) << lpad("z", 10)
      << lpad("p", 10) << "\n";
  for (const auto& c : classes) {
    out << pad(c.category, width);
    if (!c.defined) {
      out << lpad("undefined", 8) << "\n";
      continue;
    }
    out << lpad(fixed(c.kappa), 8) << lpad(fixed(c.z), 10) << lpad(format_p(c.p), 10)
        << "\n";
  }

  if (o.by_hop) {
    out << "\n" << pad("hop", 6) << lpad("items", 7) << lpad("marginal", 10)
        << lpad("uniform", 10) << "\n";
    for (const auto& s : strata)
      out << pad(std::to_string(s.hop), 6) << lpad(std::to_string(s.items), 7)
          << lpad(fixed(s.marginal.kappa), 10) << lpad(fixed(s.uniform.kappa), 10)
          << (s.sufficient ? "" : "  (insufficient)") << "\n";
  }
  if (mace_result) {
    const MaceResult& r = *mace_result;
    out << "\nMACE competence (restarts " << r.restarts << ", iterations "
        << r.iterations << ", smoothing " << fixed(r.smoothing, 4) << ", seed "
        << r.seed << ")\n";
    for (std::size_t j = 0; j < m.annotator_count(); ++j)
      out << pad(m.annotators()[j], width) << lpad(fixed(r.competence[j], 4), 8) << "\n";
  }
  return kExitOk;
}

// -- features ---------------------------------------------------------------

struct FeaturesOptions {
  std::string root;
  std::string out_dir = "features";
  std::string embed;
  std::string embedding_file;
};

int cmd_features(const FeaturesOptions& o, const Common& c, std::ostream& out,
                 std::ostream& err) {
  const auto root = corpus_root(o.root);
  if (!root) {
    err << "diagraph features: give a corpus root or set " << kCorpusRootEnv << "\n";
    return kExitUsage;
  }
  const LoadedCorpus corpus = load_corpus(load_manifest(*root), c.vocabulary);
  for (const auto& f : corpus.failures)
    err << "diagraph features: skipping " << f.diagram_id << ": " << f.code << " "
        << f.message << "\n";
  const FeatureSchema schema(c.vocabulary);
  Matrix raw;
  std::vector<std::string> ids;
  for (const Diagram& d : corpus.diagrams) {
    raw.push_back(extract_features(d, schema).raw);
    ids.push_back(d.diagram_id);
  }

  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec || !fs::is_directory(o.out_dir)) {
    err << "diagraph features: cannot create " << o.out_dir << "\n";
    return kExitIo;
  }
  const fs::path dir(o.out_dir);
  std::string index = csv::format_row({"row", "diagram"});
  for (std::size_t i = 0; i < ids.size(); ++i)
    index += csv::format_row({std::to_string(i), ids[i]});
  write_file_atomic(dir / "index.csv", index);
  write_file_atomic(dir / "raw.csv", features_to_csv(schema, raw));
  write_file_atomic(dir / "schema.json",
                    json({{"version", schema.version()},
                          {"dimensions", schema.dimensions()}})
                            .dump(2) +
                        "\n");
  const CorpusFrequencies freq = corpus_frequencies(corpus.diagrams, c.vocabulary);
  write_file_atomic(dir / "frequencies-macro.csv", frequencies_to_csv(freq.macro_groups));
  write_file_atomic(dir / "frequencies-relations.csv", frequencies_to_csv(freq.relations));
  write_file_atomic(dir / "frequencies-connections.csv",
                    frequencies_to_csv(freq.connections));

  Matrix normalized;
  if (raw.size() >= 2) {
    normalized = zscore_normalize(raw);
    write_file_atomic(dir / "normalized.csv", features_to_csv(schema, normalized));
  } else {
    err << "diagraph features: fewer than two diagrams, skipping normalisation\n";
  }

  out << "diagrams " << raw.size() << ", dimensions " << schema.size()
      << ", schema " << schema.version() << "\n";
  out << "wrote " << dir.string() << "\n";

  if (o.embed.empty()) return corpus.failures.empty() ? kExitOk : kExitFindings;
  Matrix coords;
  if (o.embed == "pca") {
    try {
      coords = project_pca(normalized).coords;
    } catch (const Error& e) {
      err << "diagraph features: " << e.code_name() << ": " << e.what() << "\n";
      return kExitFindings;
    }
  } else {
    if (o.embedding_file.empty()) {
      err << "diagraph features: --embed external needs --embedding-file\n";
      return kExitUsage;
    }
    coords = project_external(ids, read_file(o.embedding_file));
  }
  write_file_atomic(dir / "embedding.csv", coords_to_csv(ids, coords));
  return corpus.failures.empty() ? kExitOk : kExitFindings;
}

// -- sample -----------------------------------------------------------------

struct SampleOptions {
  std::string root;
  std::string layer = "grouping";
  double fraction = 0.1;
  std::uint64_t seed = 0;
  std::string format = "csv";
};

int cmd_sample(const SampleOptions& o, const Common& c, std::ostream& out,
               std::ostream& err) {
  const auto layer = parse_task_layer(o.layer);
  if (!layer) {
    err << "diagraph sample: unknown layer " << o.layer << "\n";
    return kExitUsage;
  }
  const auto root = corpus_root(o.root);
  if (!root) {
    err << "diagraph sample: give a corpus root or set " << kCorpusRootEnv << "\n";
    return kExitUsage;
  }
  const LoadedCorpus corpus = load_corpus(load_manifest(*root), c.vocabulary);
  const auto population = task_population(corpus.diagrams, *layer);
  std::vector<AgreementTask> tasks;
  try {
    tasks = sample_agreement_tasks(corpus.diagrams, *layer, o.fraction, o.seed);
  } catch (const Error& e) {
    err << "diagraph sample: " << e.code_name() << ": " << e.what() << "\n";
    return kExitFindings;
  }
  if (o.format == "json") {
    ordered_json doc;
    doc["layer"] = task_layer_name(*layer);
    doc["population"] = population.size();
    doc["fraction"] = o.fraction;
    doc["seed"] = o.seed;
    doc["tasks"] = ordered_json::array();
    for (const auto& t : tasks) {
      ordered_json h = ordered_json::array();
      for (const auto& id : t.highlight) h.push_back(id.str());
      ordered_json item = {{"key", t.key()}, {"diagram", t.diagram_id},
                           {"unit", t.unit}, {"highlight", h},
                           {"reference", t.reference_label}};
      if (t.hop_depth) item["hop"] = *t.hop_depth;
      doc["tasks"].push_back(std::move(item));
    }
    out << doc.dump(2) << "\n";
  } else {
    out << csv::format_row({"item", "diagram", "unit", "highlight", "reference", "hop"});
    for (const auto& t : tasks) {
      std::string h;
      for (const auto& id : t.highlight) h += (h.empty() ? "" : " ") + id.str();
      out << csv::format_row({t.key(), t.diagram_id, t.unit, h, t.reference_label,
                              t.hop_depth ? std::to_string(*t.hop_depth) : ""});
    }
  }
  err << "sampled " << tasks.size() << " of " << population.size() << " "
      << task_layer_name(*layer) << " units\n";
  return kExitOk;
}

// -- convert ----------------------------------------------------------------

struct ConvertOptions {
  std::string ai2d;
  std::string published;
  std::string out_file;
  std::string id;
};

int cmd_convert(const ConvertOptions& o, const Common& c, std::ostream& out,
                std::ostream& err) {
  std::vector<std::string> warnings;
  const std::string fallback = o.id.empty() ? fs::path(o.ai2d).stem().string() : o.id;
  LayoutSegmentation layout = parse_ai2d(read_file(o.ai2d), &warnings, fallback);
  if (!o.id.empty()) layout.diagram_id = o.id;
  for (const auto& w : warnings) err << "diagraph convert: warning: " << w << "\n";
  const Diagram d = o.published.empty()
                        ? skeleton_diagram(layout)
                        : convert_published(read_file(o.published), layout, c.vocabulary);
  const std::string doc = serialize(d);
  if (o.out_file.empty()) {
    out << doc;
  } else {
    write_file_atomic(o.out_file, doc);
  }
  return kExitOk;
}

// -- serve ------------------------------------------------------------------

struct ServeOptions {
  std::string root;
  std::string host = "127.0.0.1";
  int port = 8080;
};

int cmd_serve(const ServeOptions& o, const Common& c, std::ostream& out,
              std::ostream& err) {
  AnnotationStore store;
  if (const auto root = corpus_root(o.root)) {
    store.mount(*root, c.vocabulary);
  } else {
    err << "diagraph serve: no corpus root given; serving unmounted\n";
  }
  AnnotationServer server(store);
  const int port = server.bind(o.host, o.port);
  if (port < 0) {
    err << "diagraph serve: cannot bind " << o.host << ":" << o.port << "\n";
    return kExitIo;
  }
  out << "listening on http://" << o.host << ":" << port << std::endl;
  return server.listen() ? kExitOk : kExitIo;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-layer diagram annotation toolkit", "diagraph"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--relations", common.relations_file,
                 "JSON relation vocabulary replacing the standard one")
      ->check(CLI::ExistingFile);

  ValidateOptions vo;
  auto* validate = app.add_subcommand("validate", "Validate a diagram file or corpus");
  validate->add_option("path", vo.path, "Annotation file or corpus root")->required();
  validate->add_option("--layout", vo.layout, "AI2D layout file for a single annotation");
  validate->add_option("--format", vo.format)->check(CLI::IsMember({"text", "json"}));

  AgreeOptions ao;
  auto* agree = app.add_subcommand("agree", "Agreement statistics for a raw annotation CSV");
  agree->add_option("csv", ao.csv, "Raw annotation CSV")->required();
  agree->add_flag("--mace", ao.mace, "Estimate annotator competence");
  agree->add_flag("--by-hop", ao.by_hop, "Agreement per discourse hop depth");
  agree->add_option("--seed", ao.seed, "Seed for MACE restarts");
  agree->add_option("--categories", ao.categories, "Declared category set")->delimiter(',');
  agree->add_option("--restarts", ao.restarts)->check(CLI::PositiveNumber);
  agree->add_option("--iterations", ao.iterations)->check(CLI::NonNegativeNumber);
  agree->add_option("--smoothing", ao.smoothing)->check(CLI::NonNegativeNumber);
  agree->add_option("--format", ao.format)->check(CLI::IsMember({"text", "json"}));

  FeaturesOptions fo;
  auto* features = app.add_subcommand("features", "Feature matrices and frequencies");
  features->add_option("root", fo.root, "Corpus root (default $DIAGRAPH_CORPUS_ROOT)");
  features->add_option("--out", fo.out_dir, "Output directory");
  features->add_option("--embed", fo.embed)->check(CLI::IsMember({"pca", "external"}));
  features->add_option("--embedding-file", fo.embedding_file, "diagram,x,y sidecar CSV");

  SampleOptions so;
  auto* sample = app.add_subcommand("sample", "Sample units for an agreement experiment");
  sample->add_option("root", so.root, "Corpus root (default $DIAGRAPH_CORPUS_ROOT)");
  sample->add_option("--layer", so.layer)
      ->check(CLI::IsMember({"grouping", "macro", "connectivity", "rst", "discourse"}));
  sample->add_option("--fraction", so.fraction)->check(CLI::Range(0.0, 1.0));
  sample->add_option("--seed", so.seed);
  sample->add_option("--format", so.format)->check(CLI::IsMember({"csv", "json"}));

  ConvertOptions co;
  auto* convert = app.add_subcommand("convert", "AI2D layout to an annotation document");
  convert->add_option("ai2d", co.ai2d, "AI2D layout file")->required();
  convert->add_option("--published", co.published, "Published node-link annotation to import");
  convert->add_option("--out", co.out_file, "Output file (default stdout)");
  convert->add_option("--id", co.id, "Diagram id");

  ServeOptions sv;
  auto* serve = app.add_subcommand("serve", "Run the annotation server");
  serve->add_option("--root", sv.root, "Corpus root (default $DIAGRAPH_CORPUS_ROOT)");
  serve->add_option("--host", sv.host);
  serve->add_option("--port", sv.port)->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    common.load();
    if (*validate) return cmd_validate(vo, common, out, err);
    if (*agree) return cmd_agree(ao, out, err);
    if (*features) return cmd_features(fo, common, out, err);
    if (*sample) return cmd_sample(so, common, out, err);
    if (*convert) return cmd_convert(co, common, out, err);
    if (*serve) return cmd_serve(sv, common, out, err);
  } catch (const Error& e) {
    err << "diagraph: " << e.code_name() << ": " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "diagraph: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace diagraph
