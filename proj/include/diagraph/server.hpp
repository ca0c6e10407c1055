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

// HTTP+JSON front end of the annotation store.
//
//   GET  /diagrams                      summaries, 503 when nothing is mounted
//   GET  /diagrams/{id}                 document, report, version (ETag)
//   GET  /diagrams/{id}/image           image bytes
//   POST /diagrams/{id}/mutations       {expectedVersion, action, args}
//   GET  /tasks/{layer}?fraction&seed&session
//   POST /tasks/{layer}/responses       {session, fraction, seed, key, label}
//   GET  /vocabulary                    relation policy and choice lists

#ifndef DIAGRAPH_SERVER_HPP_
#define DIAGRAPH_SERVER_HPP_

#include <memory>
#include <string>

#include "diagraph/store.hpp"

namespace diagraph {

class AnnotationServer {
 public:
  explicit AnnotationServer(AnnotationStore& store);
  ~AnnotationServer();
  AnnotationServer(const AnnotationServer&) = delete;
  AnnotationServer& operator=(const AnnotationServer&) = delete;

  /// Binds to `port`, or to a free port when `port` is 0. Returns the bound
  /// port, or -1 on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  bool listen();
  void stop();
  /// Blocks until the listener accepts connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace diagraph

#endif  // DIAGRAPH_SERVER_HPP_
