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

#include "prunematch/template.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

namespace prunematch {

namespace {

constexpr std::uint32_t kUnreached = 0xffffffffU;

std::vector<std::uint32_t> bfs(const Template& t, TemplateVertex src) {
  std::vector<std::uint32_t> dist(t.vertex_count(), kUnreached);
  std::deque<TemplateVertex> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    const TemplateVertex v = q.front();
    q.pop_front();
    for (TemplateVertex w : t.neighbors(v)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

std::optional<std::uint64_t> to_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0U);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

class AutomorphismSearch {
 public:
  AutomorphismSearch(const Template& t, std::size_t budget)
      : t_(t), img_(t.vertex_count(), kNoVertex), used_(t.vertex_count(), 0), budget_(budget) {}

  // nullopt when the budget ran out.
  std::optional<bool> run(std::span<const TemplateVertex> from,
                          std::span<const TemplateVertex> to) {
    for (std::size_t i = 0; i < from.size(); ++i) {
      const TemplateVertex a = from[i];
      const TemplateVertex b = to[i];
      if (img_[a] != kNoVertex) {
        if (img_[a] != b) return false;
        continue;
      }
      if (used_[b] != 0 || !compatible(a, b)) return false;
      img_[a] = b;
      used_[b] = 1;
    }
    build_order();
    const bool found = extend(0);
    if (exhausted_) return std::nullopt;
    return found;
  }

 private:
  bool compatible(TemplateVertex a, TemplateVertex b) const {
    if (t_.label(a) != t_.label(b) || t_.degree(a) != t_.degree(b)) return false;
    for (TemplateVertex r = 0; r < t_.vertex_count(); ++r) {
      if (img_[r] == kNoVertex) continue;
      if (t_.has_edge(a, r) != t_.has_edge(b, img_[r])) return false;
    }
    return true;
  }

  // Unassigned vertices, each placed after an assigned neighbor when possible.
  void build_order() {
    const std::size_t n = t_.vertex_count();
    std::vector<std::uint8_t> placed(n, 0);
    std::deque<TemplateVertex> q;
    for (TemplateVertex v = 0; v < n; ++v) {
      if (img_[v] != kNoVertex) {
        placed[v] = 1;
        q.push_back(v);
      }
    }
    for (TemplateVertex seed = 0; seed < n; ++seed) {
      if (placed[seed] == 0 && q.empty()) {
        placed[seed] = 1;
        order_.push_back(seed);
        q.push_back(seed);
      }
      while (!q.empty()) {
        const TemplateVertex v = q.front();
        q.pop_front();
        for (TemplateVertex w : t_.neighbors(v)) {
          if (placed[w] == 0) {
            placed[w] = 1;
            order_.push_back(w);
            q.push_back(w);
          }
        }
      }
    }
  }

  bool extend(std::size_t idx) {
    if (idx == order_.size()) return true;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    const TemplateVertex a = order_[idx];
    TemplateVertex anchor = kNoVertex;
    for (TemplateVertex w : t_.neighbors(a)) {
      if (img_[w] != kNoVertex) {
        anchor = w;
        break;
      }
    }
    auto attempt = [&](TemplateVertex b) {
      if (used_[b] != 0 || !compatible(a, b)) return false;
      img_[a] = b;
      used_[b] = 1;
      if (extend(idx + 1)) return true;
      img_[a] = kNoVertex;
      used_[b] = 0;
      return false;
    };
    if (anchor != kNoVertex) {
      for (TemplateVertex b : t_.neighbors(img_[anchor])) {
        if (attempt(b)) return true;
        if (exhausted_) return false;
      }
    } else {
      for (TemplateVertex b = 0; b < t_.vertex_count(); ++b) {
        if (attempt(b)) return true;
        if (exhausted_) return false;
      }
    }
    return false;
  }

  const Template& t_;
  std::vector<TemplateVertex> img_;
  std::vector<std::uint8_t> used_;
  std::vector<TemplateVertex> order_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

Template::Template(std::vector<Label> labels, std::vector<TemplateEdge> edges)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw TemplateError("template must have at least one vertex");
  if (n > kMaxVertices) {
    throw TemplateError("template has " + std::to_string(n) + " vertices; at most " +
                        std::to_string(kMaxVertices) + " supported");
  }
  for (auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw TemplateError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                          ") references an unknown vertex");
    }
    if (a == b) throw TemplateError("self-edge at template vertex " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  adj_.assign(n, {});
  adj_set_.assign(n, VertexSet{});
  for (const auto& [a, b] : edges_) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
    adj_set_[a].insert(b);
    adj_set_[b].insert(a);
  }
  for (auto& l : adj_) std::sort(l.begin(), l.end());
  const auto dist = bfs(*this, 0);
  if (std::any_of(dist.begin(), dist.end(), [](auto d) { return d == kUnreached; })) {
    throw TemplateError("template must be connected");
  }
}

std::optional<std::size_t> Template::edge_index(TemplateVertex a, TemplateVertex b) const {
  if (a > b) std::swap(a, b);
  const TemplateEdge key{a, b};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<Label> Template::distinct_labels() const {
  std::vector<Label> out(labels_.begin(), labels_.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Template Template::with_edge(TemplateVertex a, TemplateVertex b) const {
  if (a >= vertex_count() || b >= vertex_count()) {
    throw TemplateError("edge references an unknown vertex");
  }
  if (has_edge(a, b)) throw TemplateError("edge already present");
  std::vector<TemplateEdge> e(edges_.begin(), edges_.end());
  e.emplace_back(a, b);
  return {labels_, std::move(e)};
}

Template Template::without_edge(TemplateVertex a, TemplateVertex b) const {
  const auto idx = (a < vertex_count() && b < vertex_count()) ? edge_index(a, b) : std::nullopt;
  if (!idx) throw TemplateError("edge not present");
  std::vector<TemplateEdge> e(edges_.begin(), edges_.end());
  e.erase(e.begin() + static_cast<std::ptrdiff_t>(*idx));
  return {labels_, std::move(e)};
}

Template parse_template_text(std::string_view text, const LabelNames* names) {
  std::vector<std::optional<Label>> labels;
  std::vector<TemplateEdge> edges;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t rpos = 0;
    while (rpos <= line.size()) {
      const std::size_t semi = line.find(';', rpos);
      const auto rec = line.substr(rpos, semi == std::string_view::npos ? line.npos : semi - rpos);
      rpos = (semi == std::string_view::npos) ? line.size() + 1 : semi + 1;
      const auto tok = split_ws(rec);
      if (tok.empty()) continue;
      if (tok.size() != 3 || (tok[0] != "v" && tok[0] != "e")) {
        throw ParseError("expected 'v <id> <label>' or 'e <src> <dst>'", lineno);
      }
      const auto a = to_uint(tok[1]);
      if (!a || *a >= Template::kMaxVertices) throw ParseError("bad vertex id", lineno);
      if (tok[0] == "v") {
        Label l = 0;
        if (const auto num = to_uint(tok[2]); num && *num < kNoVertex) {
          l = static_cast<Label>(*num);
        } else if (names != nullptr) {
          const auto it = names->find(tok[2]);
          if (it == names->end()) {
            throw ParseError("unknown label name '" + std::string(tok[2]) + "'", lineno);
          }
          l = it->second;
        } else {
          throw ParseError("label '" + std::string(tok[2]) +
                               "' is not an integer and no label names were given",
                           lineno);
        }
        if (labels.size() <= *a) labels.resize(*a + 1);
        if (labels[*a]) throw ParseError("vertex " + std::to_string(*a) + " declared twice", lineno);
        labels[*a] = l;
      } else {
        const auto b = to_uint(tok[2]);
        if (!b || *b >= Template::kMaxVertices) throw ParseError("bad vertex id", lineno);
        edges.emplace_back(static_cast<TemplateVertex>(*a), static_cast<TemplateVertex>(*b));
      }
    }
  }
  std::vector<Label> dense;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i]) throw TemplateError("vertex ids must be dense; missing " + std::to_string(i));
    dense.push_back(*labels[i]);
  }
  for (const auto& [a, b] : edges) {
    if (a >= dense.size() || b >= dense.size()) {
      throw TemplateError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                          ") references an unknown vertex");
    }
  }
  return {std::move(dense), std::move(edges)};
}

Template parse_template(const std::filesystem::path& path, const LabelNames* names) {
  std::ifstream in(path);
  if (!in) throw TemplateError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_template_text(ss.str(), names);
}

std::string format_template(const Template& t) {
  std::string out;
  for (TemplateVertex q = 0; q < t.vertex_count(); ++q) {
    out += "v " + std::to_string(q) + " " + std::to_string(t.label(q)) + "\n";
  }
  for (const auto& [a, b] : t.edges()) {
    out += "e " + std::to_string(a) + " " + std::to_string(b) + "\n";
  }
  return out;
}

TemplateAnalysis analyze(const Template& t, std::size_t max_cycles) {
  TemplateAnalysis a;
  const std::size_t n = t.vertex_count();

  // Cycles rooted at their smallest vertex; reflections dropped by requiring
  // path[1] < path.back().
  std::vector<TemplateVertex> path;
  std::vector<std::uint8_t> on_path(n, 0);
  auto dfs = [&](auto&& self, TemplateVertex start, TemplateVertex v) -> void {
    for (TemplateVertex w : t.neighbors(v)) {
      if (w == start && path.size() >= 3 && path[1] < path.back()) {
        a.simple_cycles.push_back(path);
        if (a.simple_cycles.size() > max_cycles) {
          throw TemplateError("template has too many simple cycles to enumerate");
        }
      } else if (w > start && on_path[w] == 0) {
        on_path[w] = 1;
        path.push_back(w);
        self(self, start, w);
        path.pop_back();
        on_path[w] = 0;
      }
    }
  };
  for (TemplateVertex s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path[s] = 1;
    dfs(dfs, s, s);
    on_path[s] = 0;
  }

  a.edge_cycle_degree.assign(t.edge_count(), 0);
  for (const auto& c : a.simple_cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      ++a.edge_cycle_degree[*t.edge_index(c[i], c[(i + 1) % c.size()])];
    }
  }
  for (auto d : a.edge_cycle_degree) a.max_cycle_degree = std::max(a.max_cycle_degree, d);
  a.is_edge_monocyclic = a.max_cycle_degree <= 1;

  std::map<Label, std::vector<TemplateVertex>> groups;
  for (TemplateVertex q = 0; q < n; ++q) groups[t.label(q)].push_back(q);
  for (auto& [l, members] : groups) {
    if (members.size() >= 2) a.repeated_label_groups.emplace(l, members);
  }
  for (TemplateVertex q = 0; q < n; ++q) {
    if (t.degree(q) == 1 && groups[t.label(q)].size() == 1) a.leaf_unique.push_back(q);
  }

  a.distance.reserve(n);
  for (TemplateVertex q = 0; q < n; ++q) {
    a.distance.push_back(bfs(t, q));
    for (auto d : a.distance.back()) a.diameter = std::max<std::size_t>(a.diameter, d);
  }
  return a;
}

VertexSet TemplateSymmetry::close(const VertexSet& s) const {
  VertexSet out;
  s.for_each([&](TemplateVertex q) { out |= vertex_orbit[q]; });
  return out;
}

std::optional<bool> extends_to_automorphism(const Template& t,
                                            std::span<const TemplateVertex> from,
                                            std::span<const TemplateVertex> to,
                                            std::size_t budget) {
  if (from.size() != to.size()) throw TemplateError("partial map size mismatch");
  AutomorphismSearch search(t, budget);
  return search.run(from, to);
}

TemplateSymmetry compute_symmetry(const Template& t, std::size_t budget) {
  const std::size_t n = t.vertex_count();
  TemplateSymmetry sym;
  sym.n0 = n;

  auto trivial = [&] {
    sym.exact = false;
    sym.vertex_orbit.assign(n, VertexSet{});
    for (TemplateVertex q = 0; q < n; ++q) sym.vertex_orbit[q].insert(q);
    sym.pair_orbit.assign(n * n, TemplateSymmetry::kNoOrbit);
    std::uint32_t id = 0;
    for (const auto& [a, b] : t.edges()) {
      sym.pair_orbit[a * n + b] = id++;
      sym.pair_orbit[b * n + a] = id++;
    }
    return sym;
  };

  DisjointSets vs(n);
  for (TemplateVertex a = 0; a < n; ++a) {
    for (TemplateVertex b = a + 1; b < n; ++b) {
      if (t.label(a) != t.label(b) || t.degree(a) != t.degree(b)) continue;
      if (vs.find(a) == vs.find(b)) continue;
      const TemplateVertex from[] = {a};
      const TemplateVertex to[] = {b};
      const auto r = extends_to_automorphism(t, from, to, budget);
      if (!r) return trivial();
      if (*r) vs.unite(a, b);
    }
  }
  sym.vertex_orbit.assign(n, VertexSet{});
  for (TemplateVertex a = 0; a < n; ++a) {
    for (TemplateVertex b = 0; b < n; ++b) {
      if (vs.find(a) == vs.find(b)) sym.vertex_orbit[a].insert(b);
    }
  }

  std::vector<TemplateEdge> oriented;
  for (const auto& [a, b] : t.edges()) {
    oriented.emplace_back(a, b);
    oriented.emplace_back(b, a);
  }
  DisjointSets es(oriented.size());
  for (std::uint32_t i = 0; i < oriented.size(); ++i) {
    for (std::uint32_t j = i + 1; j < oriented.size(); ++j) {
      const auto [a, b] = oriented[i];
      const auto [c, d] = oriented[j];
      if (!sym.vertex_orbit[a].contains(c) || !sym.vertex_orbit[b].contains(d)) continue;
      if (es.find(i) == es.find(j)) continue;
      const TemplateVertex from[] = {a, b};
      const TemplateVertex to[] = {c, d};
      const auto r = extends_to_automorphism(t, from, to, budget);
      if (!r) return trivial();
      if (*r) es.unite(i, j);
    }
  }
  sym.pair_orbit.assign(n * n, TemplateSymmetry::kNoOrbit);
  for (std::uint32_t i = 0; i < oriented.size(); ++i) {
    const auto [a, b] = oriented[i];
    sym.pair_orbit[a * n + b] = es.find(i);
  }
  return sym;
}

}  // namespace prunematch
