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

#include "prunematch/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>

namespace prunematch {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Splits a data line into exactly two unsigned integers.
bool parse_pair(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
  std::uint64_t out[2];
  for (int i = 0; i < 2; ++i) {
    while (!line.empty() && is_space(line.front())) line.remove_prefix(1);
    if (line.empty()) return false;
    const auto* first = line.data();
    const auto* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, out[i]);
    if (ec != std::errc{} || ptr == first) return false;
    if (ptr != last && !is_space(*ptr)) return false;
    line.remove_prefix(static_cast<std::size_t>(ptr - first));
  }
  if (!trim(line).empty()) return false;
  a = out[0];
  b = out[1];
  return true;
}

template <typename Fn>
void for_each_data_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path.string());
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!parse_pair(line, a, b)) {
      throw ParseError("expected two non-negative integers in " + path.string(), lineno);
    }
    fn(a, b, lineno);
  }
}

}  // namespace

LabeledGraph LabeledGraph::from_edges(std::size_t n,
                                      std::span<const std::pair<VertexId, VertexId>> edges,
                                      std::vector<Label> labels) {
  if (n >= kNoVertex) throw GraphError("vertex count exceeds 32-bit id space");
  if (labels.empty()) labels.assign(n, 0);
  if (labels.size() != n) throw GraphError("label array size does not match vertex count");

  std::vector<std::uint64_t> deg(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw GraphError("edge endpoint out of range");
    if (u == v) continue;
    ++deg[u + 1];
    ++deg[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) deg[i + 1] += deg[i];
  std::vector<VertexId> raw(deg[n]);
  std::vector<std::uint64_t> cursor(deg.begin(), deg.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }

  LabeledGraph g;
  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(raw.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(deg[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(deg[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    g.targets_.insert(g.targets_.end(), first, last);
    g.offsets_[v + 1] = g.targets_.size();
  }
  g.labels_ = std::move(labels);
  g.build_reverse();
  return g;
}

void LabeledGraph::build_reverse() {
  reverse_.assign(targets_.size(), 0);
  // Adjacency lists are sorted, so a per-target cursor pairs arcs in order.
  std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (VertexId v = 0; v < labels_.size(); ++v) {
    for (std::uint64_t s = offsets_[v]; s < offsets_[v + 1]; ++s) {
      const VertexId u = targets_[s];
      reverse_[s] = cursor[u]++;
    }
  }
}

LabeledGraph LabeledGraph::from_csr(std::vector<std::uint64_t> offsets,
                                    std::vector<VertexId> targets,
                                    std::vector<Label> labels) {
  LabeledGraph g;
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(targets);
  g.labels_ = std::move(labels);
  g.validate();
  g.build_reverse();
  return g;
}

std::uint64_t LabeledGraph::find_slot(VertexId v, VertexId u) const {
  const auto nbrs = neighbors(v);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), u);
  if (it != nbrs.end() && *it == u) {
    return offsets_[v] + static_cast<std::uint64_t>(it - nbrs.begin());
  }
  return offsets_[v + 1];
}

std::size_t LabeledGraph::label_count() const {
  if (labels_.empty()) return 0;
  return static_cast<std::size_t>(*std::max_element(labels_.begin(), labels_.end())) + 1;
}

LabeledGraph LabeledGraph::with_labels(std::vector<Label> labels) const {
  if (labels.size() != vertex_count()) {
    throw GraphError("label array size does not match vertex count");
  }
  LabeledGraph g = *this;
  g.labels_ = std::move(labels);
  return g;
}

void LabeledGraph::validate() const {
  const std::size_t n = labels_.size();
  if (offsets_.size() != n + 1) throw GraphError("offsets length must be n + 1");
  if (offsets_.front() != 0) throw GraphError("offsets must start at 0");
  if (offsets_.back() != targets_.size()) throw GraphError("offsets[n] must equal arc count");
  for (std::size_t v = 0; v < n; ++v) {
    if (offsets_[v] > offsets_[v + 1]) throw GraphError("offsets not monotone");
  }
  for (VertexId v = 0; v < n; ++v) {
    const auto nbrs = neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId u = nbrs[i];
      if (u >= n) throw GraphError("arc target out of range");
      if (u == v) throw GraphError("self-edge at vertex " + std::to_string(v));
      if (i > 0 && nbrs[i - 1] >= u) {
        throw GraphError("adjacency of vertex " + std::to_string(v) +
                         " unsorted or duplicated");
      }
      if (!has_edge(u, v)) {
        throw GraphError("arc (" + std::to_string(v) + "," + std::to_string(u) +
                         ") has no reverse");
      }
    }
  }
}

EdgeListResult load_edge_list(const std::filesystem::path& path, bool compact) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::unordered_map<std::uint64_t, VertexId> remap;
  std::vector<std::uint64_t> original;
  std::uint64_t max_id = 0;
  bool any = false;
  EdgeListResult result;

  auto map_id = [&](std::uint64_t raw, std::size_t lineno) -> VertexId {
    if (!compact) {
      if (raw >= kNoVertex) throw ParseError("vertex id exceeds 32-bit range", lineno);
      max_id = std::max(max_id, raw);
      return static_cast<VertexId>(raw);
    }
    const auto [it, inserted] = remap.try_emplace(raw, static_cast<VertexId>(original.size()));
    if (inserted) original.push_back(raw);
    return it->second;
  };

  for_each_data_line(path, [&](std::uint64_t a, std::uint64_t b, std::size_t lineno) {
    const VertexId u = map_id(a, lineno);
    const VertexId v = map_id(b, lineno);
    any = true;
    if (u == v) {
      ++result.dropped_self_edges;
      return;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  });
  if (!any) throw GraphError("edge list " + path.string() + " contains no edges");

  const std::size_t n = compact ? original.size() : static_cast<std::size_t>(max_id) + 1;
  const std::size_t before = edges.size();
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  result.dropped_duplicates = before - edges.size();
  result.graph = LabeledGraph::from_edges(n, edges);
  if (compact) result.original_ids = std::move(original);
  return result;
}

LabeledGraph load_labels(const std::filesystem::path& path, const LabeledGraph& g) {
  std::vector<Label> labels(g.vertex_count(), 0);
  std::vector<std::uint8_t> seen(g.vertex_count(), 0);
  for_each_data_line(path, [&](std::uint64_t v, std::uint64_t l, std::size_t lineno) {
    if (v >= g.vertex_count()) {
      throw ParseError("vertex id " + std::to_string(v) + " out of range", lineno);
    }
    if (l >= kNoVertex) throw ParseError("label id exceeds 32-bit range", lineno);
    if (seen[v] != 0) throw ParseError("duplicate label for vertex " + std::to_string(v), lineno);
    seen[v] = 1;
    labels[v] = static_cast<Label>(l);
  });
  return g.with_labels(std::move(labels));
}

void write_edge_list(const std::filesystem::path& path, const LabeledGraph& g) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path.string());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId u : g.neighbors(v)) {
      if (v < u) out << v << ' ' << u << '\n';
    }
  }
}

void write_labels(const std::filesystem::path& path, const LabeledGraph& g) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path.string());
  for (VertexId v = 0; v < g.vertex_count(); ++v) out << v << ' ' << g.label(v) << '\n';
}

GraphStats compute_stats(const LabeledGraph& g) {
  GraphStats s;
  const std::size_t n = g.vertex_count();
  for (VertexId v = 0; v < n; ++v) {
    s.d_max = std::max(s.d_max, g.degree(v));
    ++s.label_freq[g.label(v)];
  }
  if (n == 0) return s;
  s.d_avg = static_cast<double>(g.arc_count()) / static_cast<double>(n);
  double acc = 0.0;
  for (VertexId v = 0; v < n; ++v) {
    const double d = static_cast<double>(g.degree(v)) - s.d_avg;
    acc += d * d;
  }
  s.d_sdev = std::sqrt(acc / static_cast<double>(n));
  return s;
}

InducedGraph induce_subgraph(const LabeledGraph& g,
                             std::span<const std::uint8_t> vertex_active,
                             std::span<const std::uint8_t> arc_live) {
  if (vertex_active.size() != g.vertex_count() || arc_live.size() != g.arc_count()) {
    throw GraphError("state arrays do not match graph");
  }
  InducedGraph out;
  std::vector<VertexId> local(g.vertex_count(), kNoVertex);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (vertex_active[v] != 0) {
      local[v] = static_cast<VertexId>(out.global_ids.size());
      out.global_ids.push_back(v);
    }
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<Label> labels;
  labels.reserve(out.global_ids.size());
  for (VertexId v : out.global_ids) {
    labels.push_back(g.label(v));
    for (std::uint64_t s = g.first_slot(v); s < g.end_slot(v); ++s) {
      const VertexId u = g.slot_target(s);
      if (v >= u || local[u] == kNoVertex || arc_live[s] == 0) continue;
      if (arc_live[g.find_slot(u, v)] == 0) continue;
      edges.emplace_back(local[v], local[u]);
    }
  }
  out.graph = LabeledGraph::from_edges(out.global_ids.size(), edges, std::move(labels));
  return out;
}

}  // namespace prunematch
