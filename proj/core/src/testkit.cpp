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

#include "prunematch/testkit.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

namespace prunematch::testkit {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

class Oracle {
 public:
  Oracle(const LabeledGraph& g, const Template& t, const OracleOptions& opt, OracleResult& out)
      : g_(g), t_(t), opt_(opt), out_(out), n_(g.vertex_count()), adj_(n_ * n_, false),
        phi_(t.vertex_count(), kNoVertex), used_(n_, false) {
    for (VertexId v = 0; v < n_; ++v) {
      for (VertexId u : g.neighbors(v)) adj_[static_cast<std::size_t>(v) * n_ + u] = true;
    }
    out_.roles.assign(n_, VertexSet{});
  }

  void run() { place(0); }

 private:
  bool adjacent(VertexId a, VertexId b) const {
    return adj_[static_cast<std::size_t>(a) * n_ + b];
  }

  void place(TemplateVertex q) {
    if (q == t_.vertex_count()) {
      record();
      return;
    }
    for (VertexId v = 0; v < n_; ++v) {
      if (used_[v] || g_.label(v) != t_.label(q)) continue;
      bool ok = true;
      for (TemplateVertex p : t_.neighbors(q)) {
        if (p < q && !adjacent(phi_[p], v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      phi_[q] = v;
      used_[v] = true;
      place(q + 1);
      used_[v] = false;
    }
    phi_[q] = kNoVertex;
  }

  void record() {
    ++out_.mappings;
    for (TemplateVertex q = 0; q < phi_.size(); ++q) out_.roles[phi_[q]].insert(q);
    for (const auto& [a, b] : t_.edges()) {
      out_.edges.emplace(std::min(phi_[a], phi_[b]), std::max(phi_[a], phi_[b]));
    }
    if (opt_.keep_matches) out_.matches.push_back(phi_);
    if (opt_.on_match) opt_.on_match(phi_);
  }

  const LabeledGraph& g_;
  const Template& t_;
  const OracleOptions& opt_;
  OracleResult& out_;
  std::size_t n_;
  std::vector<bool> adj_;
  std::vector<VertexId> phi_;
  std::vector<bool> used_;
};

}  // namespace

SolutionSubgraph OracleResult::as_solution() const {
  SolutionSubgraph s;
  for (VertexId v = 0; v < roles.size(); ++v) {
    if (roles[v].empty()) continue;
    s.vertices.push_back(v);
    s.omega.push_back(roles[v]);
  }
  s.edges.assign(edges.begin(), edges.end());
  return s;
}

OracleResult oracle_enumerate(const LabeledGraph& g, const Template& t, const OracleOptions& opt) {
  if (g.vertex_count() > kOracleVertexLimit && !opt.allow_large) {
    throw std::length_error("oracle refuses graphs above " + std::to_string(kOracleVertexLimit) +
                            " vertices");
  }
  OracleResult out;
  Oracle o(g, t, opt, out);
  o.run();
  return out;
}

LabeledGraph rmat_generate(const RmatParams& p) {
  if (p.scale == 0 || p.scale > 31) throw std::invalid_argument("R-MAT scale must be in 1..31");
  if (p.a < 0 || p.b < 0 || p.c < 0 || p.a + p.b + p.c > 1.0) {
    throw std::invalid_argument("R-MAT probabilities must be non-negative and sum to at most 1");
  }
  const std::size_t n = std::size_t{1} << p.scale;
  const std::size_t m = n * p.edge_factor;
  std::mt19937_64 rng(p.seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(m);
  for (std::size_t e = 0; e < m; ++e) {
    VertexId u = 0;
    VertexId v = 0;
    for (unsigned bit = 0; bit < p.scale; ++bit) {
      const double r = uniform01(rng);
      u <<= 1;
      v <<= 1;
      if (r < p.a) {
      } else if (r < p.a + p.b) {
        v |= 1;
      } else if (r < p.a + p.b + p.c) {
        u |= 1;
      } else {
        u |= 1;
        v |= 1;
      }
    }
    edges.emplace_back(u, v);
  }
  return LabeledGraph::from_edges(n, edges);
}

std::vector<Label> degree_labels(const LabeledGraph& g) {
  std::vector<Label> out(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out[v] = static_cast<Label>(std::bit_width(g.degree(v)));
  }
  return out;
}

LabeledGraph erdos_renyi(std::size_t n, double p, std::size_t labels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (uniform01(rng) < p) edges.emplace_back(u, v);
    }
  }
  std::vector<Label> lab(n);
  for (auto& l : lab) l = static_cast<Label>(pick(rng, std::max<std::size_t>(labels, 1)));
  return LabeledGraph::from_edges(n, edges, std::move(lab));
}

namespace {

Template random_template(std::size_t k, std::size_t labels, double extra, std::mt19937_64& rng) {
  std::vector<Label> lab(k);
  for (auto& l : lab) l = static_cast<Label>(pick(rng, std::max<std::size_t>(labels, 1)));
  std::vector<TemplateEdge> edges;
  for (TemplateVertex q = 1; q < k; ++q) {
    edges.emplace_back(static_cast<TemplateVertex>(pick(rng, q)), q);
  }
  for (TemplateVertex a = 0; a < k; ++a) {
    for (TemplateVertex b = a + 1; b < k; ++b) {
      if (uniform01(rng) < extra * 0.5) edges.emplace_back(a, b);
    }
  }
  return Template(lab, edges);
}

// Grows a connected vertex set inside g and keeps a random connected subset of
// the induced edges.
std::optional<Template> sample_template(const LabeledGraph& g, std::size_t k, double extra,
                                        std::mt19937_64& rng) {
  std::vector<VertexId> starts;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > 0) starts.push_back(v);
  }
  if (starts.empty()) return std::nullopt;
  std::vector<VertexId> chosen{starts[pick(rng, starts.size())]};
  std::vector<TemplateEdge> tree;
  for (int attempt = 0; chosen.size() < k && attempt < 200; ++attempt) {
    const std::size_t from = pick(rng, chosen.size());
    const auto nb = g.neighbors(chosen[from]);
    const VertexId u = nb[pick(rng, nb.size())];
    if (std::find(chosen.begin(), chosen.end(), u) != chosen.end()) continue;
    tree.emplace_back(static_cast<TemplateVertex>(from), static_cast<TemplateVertex>(chosen.size()));
    chosen.push_back(u);
  }
  if (chosen.size() < k) return std::nullopt;
  std::vector<TemplateEdge> edges = tree;
  for (TemplateVertex a = 0; a < k; ++a) {
    for (TemplateVertex b = a + 1; b < k; ++b) {
      if (!g.has_edge(chosen[a], chosen[b])) continue;
      if (std::find(tree.begin(), tree.end(), TemplateEdge{a, b}) != tree.end()) continue;
      if (uniform01(rng) < extra) edges.emplace_back(a, b);
    }
  }
  std::vector<Label> lab;
  for (VertexId v : chosen) lab.push_back(g.label(v));
  return Template(lab, edges);
}

}  // namespace

Instance random_instance(const InstanceParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    LabeledGraph g;
    if (p.model == GraphModel::erdos_renyi) {
      g = erdos_renyi(p.vertices, p.edge_probability, p.labels, rng());
    } else {
      RmatParams rp;
      rp.scale = p.rmat_scale;
      rp.edge_factor = 4;
      rp.seed = rng();
      g = rmat_generate(rp);
      std::vector<Label> lab(g.vertex_count());
      for (auto& l : lab) l = static_cast<Label>(pick(rng, std::max<std::size_t>(p.labels, 1)));
      g = g.with_labels(std::move(lab));
    }
    if (p.source == TemplateSource::independent) {
      return {std::move(g), random_template(p.template_vertices, p.labels,
                                            p.extra_edge_probability, rng)};
    }
    if (auto t = sample_template(g, p.template_vertices, p.extra_edge_probability, rng)) {
      return {std::move(g), std::move(*t)};
    }
  }
  throw std::runtime_error("could not sample a template");
}

}  // namespace prunematch::testkit
