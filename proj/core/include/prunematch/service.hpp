/* Copyright 2026 The prunematch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PRUNEMATCH_SERVICE_HPP
#define PRUNEMATCH_SERVICE_HPP

#include <memory>
#include <string>
#include <string_view>

#include "prunematch/graph.hpp"
#include "prunematch/pipeline.hpp"
#include "prunematch/template.hpp"

namespace prunematch {

struct ServiceResponse {
  int status = 200;
  std::string body;  // JSON
};

/// JSON-over-HTTP front end for sessions and exploratory search:
///
///   POST   /session                 {"template": ...}         -> 201
///   POST   /session/{id}/edge       {"a": 0, "b": 1}
///   DELETE /session/{id}/edge       {"a": 0, "b": 1}
///   GET    /session/{id}/result
///   DELETE /session/{id}
///   POST   /explore                 {"template": ..., "max_k": 2}
///
/// A template is either text ("v 0 1; v 1 2; e 0 1") or an object
/// {"labels": [...], "edges": [[a, b], ...]}. Errors come back as
/// {"error": "..."} with 400 (malformed), 404 (unknown) or 422 (rejected edit).
class QueryService {
 public:
  QueryService(std::shared_ptr<const LabeledGraph> g, PruneConfig cfg = {}, LabelNames names = {});
  ~QueryService();

  QueryService(const QueryService&) = delete;
  QueryService& operator=(const QueryService&) = delete;

  /// Routes one request without any networking. Safe to call concurrently;
  /// requests on the same session are serialized.
  ServiceResponse handle(std::string_view method, std::string_view path, std::string_view body);

  /// Binds an HTTP listener; port 0 picks a free one. Returns the port.
  int bind(const std::string& host, int port = 0);
  /// Serves until stop(); call after bind().
  void serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace prunematch

#endif  // PRUNEMATCH_SERVICE_HPP
