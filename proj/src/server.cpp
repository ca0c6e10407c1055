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

#include "diagraph/server.hpp"

#include <charconv>

#include "httplib.h"
#include "json.hpp"

#include "diagraph/error.hpp"

namespace diagraph {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", kJson);
}

void send_error(httplib::Response& res, int status, std::string code,
                std::string message) {
  send(res, status, {{"error", {{"code", std::move(code)}, {"message", std::move(message)}}}});
}

bool require_mount(const AnnotationStore& store, httplib::Response& res) {
  if (store.mounted()) return true;
  send_error(res, 503, "NotMounted", "no corpus is mounted");
  return false;
}

std::optional<TaskLayer> layer_param(const httplib::Request& req,
                                     httplib::Response& res) {
  auto layer = parse_task_layer(req.path_params.at("layer"));
  if (!layer)
    send_error(res, 404, "UnknownLayer",
               "no task layer '" + req.path_params.at("layer") + "'");
  return layer;
}

double default_fraction(TaskLayer layer) {
  return layer == TaskLayer::kMacro ? 0.33 : 0.1;
}

// Reads fraction and seed from query parameters or a JSON body.
bool sample_params(const httplib::Request& req, const json* body, TaskLayer layer,
                   double& fraction, std::uint64_t& seed, httplib::Response& res) {
  fraction = default_fraction(layer);
  seed = 0;
  try {
    if (body && body->contains("fraction")) fraction = (*body)["fraction"].get<double>();
    else if (req.has_param("fraction")) fraction = std::stod(req.get_param_value("fraction"));
    if (body && body->contains("seed")) seed = (*body)["seed"].get<std::uint64_t>();
    else if (req.has_param("seed")) seed = std::stoull(req.get_param_value("seed"));
  } catch (const std::exception&) {
    send_error(res, 400, "InvalidArgument", "fraction and seed must be numbers");
    return false;
  }
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    send_error(res, 400, "InvalidArgument", "fraction must lie in (0, 1]");
    return false;
  }
  return true;
}

json outcome_body(const TaskOutcome& o) {
  if (o.status == 200) return o.payload;
  return {{"error", {{"code", o.status == 410 ? "Exhausted" : "TaskError"},
                     {"message", o.message}}}};
}

std::string content_type_for(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".gif") return "image/gif";
  if (ext == ".svg") return "image/svg+xml";
  return "application/octet-stream";
}

void register_routes(httplib::Server& svr, AnnotationStore& store) {
  svr.Get("/diagrams", [&](const httplib::Request&, httplib::Response& res) {
    if (!require_mount(store, res)) return;
    json list = json::array();
    for (const DiagramSummary& s : store.list()) {
      list.push_back({{"id", s.id},
                      {"category", s.category ? json(*s.category) : json(nullptr)},
                      {"status", s.status},
                      {"version", s.version},
                      {"errors", s.errors},
                      {"warnings", s.warnings}});
    }
    send(res, 200, {{"diagrams", list}});
  });

  svr.Get("/diagrams/:id", [&](const httplib::Request& req, httplib::Response& res) {
    if (!require_mount(store, res)) return;
    auto snap = store.get(req.path_params.at("id"));
    if (!snap) {
      send_error(res, 404, "UnknownDiagram", "no diagram '" + req.path_params.at("id") + "'");
      return;
    }
    res.set_header("ETag", "\"" + std::to_string(snap->version) + "\"");
    if (!snap->diagram) {
      send_error(res, 422, snap->load_error, snap->load_message);
      return;
    }
    json body = {{"id", snap->id},
                 {"version", snap->version},
                 {"lastModified", snap->last_modified_ms},
                 {"image", snap->image ? json(snap->image->generic_string()) : json(nullptr)},
                 {"document", json::parse(serialize(*snap->diagram))},
                 {"report", json::parse(report_to_json(snap->report))}};
    send(res, 200, body);
  });

  svr.Get("/diagrams/:id/image", [&](const httplib::Request& req, httplib::Response& res) {
    if (!require_mount(store, res)) return;
    auto snap = store.get(req.path_params.at("id"));
    if (!snap || !snap->image) {
      send_error(res, 404, "NoImage", "no image for '" + req.path_params.at("id") + "'");
      return;
    }
    try {
      res.set_content(read_file(*snap->image), content_type_for(*snap->image));
    } catch (const Error& e) {
      send_error(res, 404, std::string(e.code_name()), e.what());
    }
  });

  svr.Post("/diagrams/:id/mutations", [&](const httplib::Request& req, httplib::Response& res) {
    if (!require_mount(store, res)) return;
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("expectedVersion") ||
        !body["expectedVersion"].is_number_integer() || !body.contains("action") ||
        !body["action"].is_string()) {
      send_error(res, 400, "InvalidArgument",
                 "body must be {expectedVersion: int, action: string, args: object}");
      return;
    }
    const json args = body.value("args", json::object());
    MutationOutcome o = store.mutate(req.path_params.at("id"),
                                     body["expectedVersion"].get<std::int64_t>(),
                                     body["action"].get<std::string>(), args);
    json out = {{"version", o.version},
                {"report", json::parse(report_to_json(o.report))}};
    if (o.created) out["created"] = o.created->str();
    if (o.status != 200) out["error"] = {{"code", o.code}, {"message", o.message}};
    res.set_header("ETag", "\"" + std::to_string(o.version) + "\"");
    send(res, o.status, out);
  });

  svr.Get("/tasks/:layer", [&](const httplib::Request& req, httplib::Response& res) {
    if (!require_mount(store, res)) return;
    auto layer = layer_param(req, res);
    if (!layer) return;
    double fraction;
    std::uint64_t seed;
    if (!sample_params(req, nullptr, *layer, fraction, seed, res)) return;
    const std::string session =
        req.has_param("session") ? req.get_param_value("session") : "default";
    TaskOutcome o = store.next_task(session, *layer, fraction, seed);
    send(res, o.status, outcome_body(o));
  });

  svr.Post("/tasks/:layer/responses", [&](const httplib::Request& req, httplib::Response& res) {
    if (!require_mount(store, res)) return;
    auto layer = layer_param(req, res);
    if (!layer) return;
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("key") ||
        !body["key"].is_string()) {
      send_error(res, 400, "InvalidArgument", "body must be an object with a task 'key'");
      return;
    }
    double fraction;
    std::uint64_t seed;
    if (!sample_params(req, &body, *layer, fraction, seed, res)) return;
    const std::string session = body.value("session", std::string("default"));
    TaskOutcome o = store.record_response(session, *layer, fraction, seed,
                                          body["key"].get<std::string>(), body);
    send(res, o.status, outcome_body(o));
  });

  svr.Get("/vocabulary", [&](const httplib::Request&, httplib::Response& res) {
    const RelationVocabulary& vocab = store.vocabulary();
    json relations = json::array();
    for (const auto& e : vocab.entries())
      relations.push_back({{"name", e.name}, {"multinuclear", e.multinuclear}});
    json macro = json::array(), kinds = json::array(), choices = json::object();
    for (MacroGroup g : kAllMacroGroups) macro.push_back(macro_group_name(g));
    for (ConnectionKind k : kAllConnectionKinds) kinds.push_back(connection_kind_name(k));
    for (TaskLayer l : {TaskLayer::kGrouping, TaskLayer::kMacro,
                        TaskLayer::kConnectivity, TaskLayer::kRst})
      choices[std::string(task_layer_name(l))] = task_choices(l, vocab);
    send(res, 200, {{"relations", relations},
                    {"macroGroups", macro},
                    {"connectionKinds", kinds},
                    {"taskChoices", choices}});
  });

  svr.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                               std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      send_error(res, 400, std::string(e.code_name()), e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "Internal", e.what());
    } catch (...) {
      send_error(res, 500, "Internal", "unknown error");
    }
  });
}

}  // namespace

struct AnnotationServer::Impl {
  httplib::Server server;
};

AnnotationServer::AnnotationServer(AnnotationStore& store)
    : impl_(std::make_unique<Impl>()) {
  register_routes(impl_->server, store);
}

AnnotationServer::~AnnotationServer() { stop(); }

int AnnotationServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool AnnotationServer::listen() { return impl_->server.listen_after_bind(); }

void AnnotationServer::stop() {
  if (impl_) impl_->server.stop();
}

void AnnotationServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace diagraph
