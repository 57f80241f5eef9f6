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

#include "prunematch/service.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "httplib.h"
#include "json.hpp"
#include "prunematch/scenarios.hpp"

namespace prunematch {

namespace {

using nlohmann::json;

class HttpError : public std::runtime_error {
 public:
  HttpError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
  [[nodiscard]] int status() const { return status_; }

 private:
  int status_;
};

ServiceResponse reply(int status, const json& j) { return {status, j.dump()}; }

json template_json(const Template& t) {
  json edges = json::array();
  for (const auto& [a, b] : t.edges()) edges.push_back({a, b});
  return {{"labels", std::vector<Label>(t.labels().begin(), t.labels().end())}, {"edges", edges}};
}

json solution_json(const SolutionSubgraph& s, bool full) {
  json j{{"vertex_count", s.vertex_count()}, {"edge_count", s.edge_count()}};
  if (!full) return j;
  json vs = json::array();
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    std::vector<TemplateVertex> qs;
    s.omega[i].for_each([&](TemplateVertex q) { qs.push_back(q); });
    vs.push_back({{"id", s.vertices[i]}, {"candidates", qs}});
  }
  json es = json::array();
  for (const auto& [u, v] : s.edges) es.push_back({u, v});
  j["vertices"] = std::move(vs);
  j["edges"] = std::move(es);
  return j;
}

json parse_body(std::string_view body) {
  if (body.empty()) return json::object();
  try {
    auto j = json::parse(body);
    if (!j.is_object()) throw HttpError(400, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw HttpError(400, std::string("malformed JSON: ") + e.what());
  }
}

Template template_from(const json& body, const LabelNames& names) {
  if (!body.contains("template")) throw HttpError(400, "missing \"template\"");
  const auto& t = body.at("template");
  try {
    if (t.is_string()) return parse_template_text(t.get<std::string>(), &names);
    if (t.is_object()) {
      auto labels = t.at("labels").get<std::vector<Label>>();
      auto edges = t.at("edges").get<std::vector<std::pair<TemplateVertex, TemplateVertex>>>();
      return Template(std::move(labels), std::move(edges));
    }
  } catch (const TemplateError& e) {
    throw HttpError(422, e.what());
  } catch (const ParseError& e) {
    throw HttpError(400, e.what());
  } catch (const json::exception& e) {
    throw HttpError(400, std::string("bad template object: ") + e.what());
  }
  throw HttpError(400, "\"template\" must be text or an object");
}

TemplateEdge edge_from(const json& body) {
  try {
    return {body.at("a").get<TemplateVertex>(), body.at("b").get<TemplateVertex>()};
  } catch (const json::exception&) {
    throw HttpError(400, "expected {\"a\": <vertex>, \"b\": <vertex>}");
  }
}

std::vector<std::string_view> split_path(std::string_view path) {
  if (const auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    const auto slash = path.find('/');
    parts.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash);
  }
  return parts;
}

}  // namespace

struct QueryService::Impl {
  struct Entry {
    std::mutex m;
    std::unique_ptr<Session> session;
  };

  std::shared_ptr<const LabeledGraph> graph;
  PruneConfig cfg;
  LabelNames names;
  std::mutex sessions_m;
  std::map<std::string, std::shared_ptr<Entry>, std::less<>> sessions;
  std::uint64_t next_id = 1;
  httplib::Server server;

  std::shared_ptr<Entry> find(std::string_view id) {
    std::lock_guard lk(sessions_m);
    const auto it = sessions.find(id);
    if (it == sessions.end()) throw HttpError(404, "unknown session " + std::string(id));
    return it->second;
  }

  static json session_json(const std::string& id, const Session& s, bool full) {
    json j{{"id", id}, {"revision", s.revision()}, {"template", template_json(s.current())}};
    j["result"] = solution_json(s.result(), full);
    j["phases"] = s.last_trail().size();
    const auto& cs = s.cache().stats();
    j["cache"] = {{"entries", s.cache().size()},
                  {"pass_hits", cs.pass_hits},
                  {"fail_hits", cs.fail_hits}};
    return j;
  }

  ServiceResponse route(std::string_view method, std::string_view path, std::string_view body) {
    const auto parts = split_path(path);
    if (parts.size() == 1 && parts[0] == "session") {
      if (method != "POST") throw HttpError(405, "method not allowed");
      auto t = template_from(parse_body(body), names);
      auto entry = std::make_shared<Entry>();
      entry->session = std::make_unique<Session>(graph, std::move(t), cfg);
      std::string id;
      {
        std::lock_guard lk(sessions_m);
        id = "s" + std::to_string(next_id++);
        sessions.emplace(id, entry);
      }
      return reply(201, session_json(id, *entry->session, false));
    }
    if (parts.size() == 1 && parts[0] == "explore") {
      if (method != "POST") throw HttpError(405, "method not allowed");
      const auto j = parse_body(body);
      auto t = template_from(j, names);
      ExploreOptions opt;
      opt.prune = cfg;
      opt.prune.cache = nullptr;
      opt.max_k = j.value("max_k", std::size_t{2});
      const auto r = exploratory_search(graph, t, opt);
      json vars = json::array();
      for (const auto& v : r.variants) {
        json removed = json::array();
        for (const auto& [a, b] : v.removed) removed.push_back({a, b});
        vars.push_back({{"removed", removed}, {"vertex_count", v.vertices}, {"edge_count", v.edges}});
      }
      json out{{"found", r.k.has_value()}, {"variants", vars}, {"variants_tried", r.variants_tried}};
      out["k"] = r.k ? json(*r.k) : json(nullptr);
      out["result"] = solution_json(r.merged, true);
      return reply(200, out);
    }
    if (parts.size() >= 2 && parts[0] == "session") {
      const auto id = parts[1];
      if (parts.size() == 2) {
        if (method != "DELETE") throw HttpError(405, "method not allowed");
        std::lock_guard lk(sessions_m);
        if (sessions.erase(std::string(id)) == 0) {
          throw HttpError(404, "unknown session " + std::string(id));
        }
        return reply(200, json{{"deleted", id}});
      }
      auto entry = find(id);
      std::lock_guard lk(entry->m);
      auto& s = *entry->session;
      if (parts.size() == 3 && parts[2] == "result") {
        if (method != "GET") throw HttpError(405, "method not allowed");
        return reply(200, session_json(std::string(id), s, true));
      }
      if (parts.size() == 3 && parts[2] == "edge") {
        if (method != "POST" && method != "DELETE") throw HttpError(405, "method not allowed");
        const auto [a, b] = edge_from(parse_body(body));
        try {
          if (method == "POST") {
            s.add_edge(a, b);
          } else {
            s.remove_edge(a, b);
          }
        } catch (const TemplateError& e) {
          throw HttpError(422, e.what());
        }
        return reply(200, session_json(std::string(id), s, false));
      }
    }
    throw HttpError(404, "no route for " + std::string(path));
  }
};

QueryService::QueryService(std::shared_ptr<const LabeledGraph> g, PruneConfig cfg, LabelNames names)
    : impl_(std::make_unique<Impl>()) {
  impl_->graph = std::move(g);
  impl_->cfg = std::move(cfg);
  impl_->cfg.observer = nullptr;
  impl_->names = std::move(names);

  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const auto r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  auto& srv = impl_->server;
  srv.Post(R"(/.*)", forward);
  srv.Get(R"(/.*)", forward);
  srv.Delete(R"(/.*)", forward);
}

QueryService::~QueryService() { stop(); }

ServiceResponse QueryService::handle(std::string_view method, std::string_view path,
                                     std::string_view body) {
  try {
    return impl_->route(method, path, body);
  } catch (const HttpError& e) {
    return reply(e.status(), json{{"error", e.what()}});
  } catch (const std::exception& e) {
    return reply(500, json{{"error", e.what()}});
  }
}

int QueryService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  if (!impl_->server.bind_to_port(host, port)) throw std::runtime_error("cannot bind port");
  return port;
}

void QueryService::serve() { impl_->server.listen_after_bind(); }

void QueryService::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace prunematch
