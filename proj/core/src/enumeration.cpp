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

#include "prunematch/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace prunematch {

namespace {

// The solution as a compact graph over local ids.
struct SolutionIndex {
  std::vector<VertexId> global;
  std::vector<VertexSet> omega;
  std::vector<std::uint64_t> offsets;
  std::vector<VertexId> targets;

  explicit SolutionIndex(const SolutionSubgraph& sol) : global(sol.vertices), omega(sol.omega) {
    const std::size_t n = global.size();
    auto local = [&](VertexId v) {
      const auto it = std::lower_bound(global.begin(), global.end(), v);
      if (it == global.end() || *it != v) throw GraphError("solution edge leaves its vertices");
      return static_cast<VertexId>(it - global.begin());
    };
    std::vector<std::pair<VertexId, VertexId>> arcs;
    arcs.reserve(sol.edges.size() * 2);
    for (const auto& [u, v] : sol.edges) {
      const VertexId a = local(u);
      const VertexId b = local(v);
      arcs.emplace_back(a, b);
      arcs.emplace_back(b, a);
    }
    std::sort(arcs.begin(), arcs.end());
    offsets.assign(n + 1, 0);
    for (const auto& [a, b] : arcs) ++offsets[a + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    targets.reserve(arcs.size());
    for (const auto& [a, b] : arcs) targets.push_back(b);
  }

  [[nodiscard]] std::span<const VertexId> nbrs(VertexId v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
  [[nodiscard]] bool adjacent(VertexId a, VertexId b) const {
    const auto n = nbrs(a);
    return std::binary_search(n.begin(), n.end(), b);
  }
};

struct SearchPlan {
  std::vector<TemplateVertex> order;
  std::vector<TemplateVertex> anchor;            // per order position > 0
  std::vector<std::vector<TemplateVertex>> checks;
  std::vector<VertexId> roots;                   // candidates of order[0]
};

SearchPlan make_plan(const SolutionIndex& idx, const Template& t) {
  const std::size_t n0 = t.vertex_count();
  std::vector<std::size_t> cand(n0, 0);
  for (const auto& om : idx.omega) om.for_each([&](TemplateVertex q) { ++cand[q]; });

  SearchPlan p;
  std::vector<std::uint8_t> placed(n0, 0);
  std::vector<std::size_t> rank(n0, 0);
  TemplateVertex first = 0;
  for (TemplateVertex q = 1; q < n0; ++q) {
    if (cand[q] < cand[first]) first = q;
  }
  p.order.push_back(first);
  placed[first] = 1;
  p.anchor.push_back(first);
  p.checks.emplace_back();
  while (p.order.size() < n0) {
    TemplateVertex best = kNoVertex;
    std::size_t best_links = 0;
    for (TemplateVertex q = 0; q < n0; ++q) {
      if (placed[q] != 0) continue;
      std::size_t links = 0;
      for (TemplateVertex x : t.neighbors(q)) links += placed[x];
      if (links == 0) continue;
      if (best == kNoVertex || links > best_links ||
          (links == best_links && cand[q] < cand[best])) {
        best = q;
        best_links = links;
      }
    }
    rank[best] = p.order.size();
    std::vector<TemplateVertex> back;
    for (TemplateVertex x : t.neighbors(best)) {
      if (placed[x] != 0) back.push_back(x);
    }
    std::sort(back.begin(), back.end(), [&](auto a, auto b) { return rank[a] < rank[b]; });
    p.anchor.push_back(back.front());
    p.checks.emplace_back(back.begin() + 1, back.end());
    p.order.push_back(best);
    placed[best] = 1;
  }
  for (VertexId v = 0; v < idx.global.size(); ++v) {
    if (idx.omega[v].contains(first)) p.roots.push_back(v);
  }
  return p;
}

class Search {
 public:
  Search(const SolutionIndex& idx, const SearchPlan& plan, std::size_t n0)
      : idx_(idx), plan_(plan), phi_(n0, kNoVertex), out_(n0), used_(idx.global.size(), 0) {}

  // fn(local phi) returns false to stop. Returns false if stopped.
  template <typename Fn>
  bool from_root(VertexId root, Fn&& fn) {
    const TemplateVertex q = plan_.order[0];
    phi_[q] = root;
    used_[root] = 1;
    const bool go = extend(1, fn);
    used_[root] = 0;
    phi_[q] = kNoVertex;
    return go;
  }

  [[nodiscard]] std::span<const VertexId> global_phi() {
    for (std::size_t q = 0; q < phi_.size(); ++q) out_[q] = idx_.global[phi_[q]];
    return out_;
  }
  [[nodiscard]] std::span<const VertexId> local_phi() const { return phi_; }

 private:
  template <typename Fn>
  bool extend(std::size_t k, Fn& fn) {
    if (k == plan_.order.size()) return fn(*this);
    const TemplateVertex q = plan_.order[k];
    const auto& checks = plan_.checks[k];
    for (VertexId x : idx_.nbrs(phi_[plan_.anchor[k]])) {
      if (used_[x] != 0 || !idx_.omega[x].contains(q)) continue;
      bool ok = true;
      for (TemplateVertex c : checks) {
        if (!idx_.adjacent(phi_[c], x)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      phi_[q] = x;
      used_[x] = 1;
      const bool go = extend(k + 1, fn);
      used_[x] = 0;
      phi_[q] = kNoVertex;
      if (!go) return false;
    }
    return true;
  }

  const SolutionIndex& idx_;
  const SearchPlan& plan_;
  std::vector<VertexId> phi_;
  std::vector<VertexId> out_;
  std::vector<std::uint8_t> used_;
};

}  // namespace

std::uint64_t enumerate(const SolutionSubgraph& sol, const Template& t, const MatchCallback& emit,
                        std::optional<std::uint64_t> limit) {
  if (sol.empty()) return 0;
  const SolutionIndex idx(sol);
  const auto plan = make_plan(idx, t);
  Search search(idx, plan, t.vertex_count());
  std::uint64_t emitted = 0;
  for (VertexId root : plan.roots) {
    if (limit && emitted >= *limit) break;
    const bool go = search.from_root(root, [&](Search& s) {
      ++emitted;
      if (!emit(s.global_phi())) return false;
      return !(limit && emitted >= *limit);
    });
    if (!go) break;
  }
  return emitted;
}

std::vector<std::vector<VertexId>> enumerate_all(const SolutionSubgraph& sol, const Template& t,
                                                 std::optional<std::uint64_t> limit) {
  std::vector<std::vector<VertexId>> out;
  enumerate(
      sol, t,
      [&](std::span<const VertexId> phi) {
        out.emplace_back(phi.begin(), phi.end());
        return true;
      },
      limit);
  return out;
}

MatchCount count_matches(const SolutionSubgraph& sol, const Template& t, std::size_t workers) {
  MatchCount mc;
  mc.automorphisms = automorphism_order(t);
  mc.participation.assign(sol.vertex_count(), 0);
  if (sol.empty()) return mc;
  const SolutionIndex idx(sol);
  const auto plan = make_plan(idx, t);
  workers = std::max<std::size_t>(1, std::min(workers, plan.roots.size()));

  std::atomic<std::size_t> next{0};
  std::vector<std::uint64_t> totals(workers, 0);
  std::vector<std::vector<std::uint64_t>> part(workers);
  auto work = [&](std::size_t w) {
    Search search(idx, plan, t.vertex_count());
    auto& counts = part[w];
    counts.assign(idx.global.size(), 0);
    std::uint64_t local = 0;
    for (std::size_t i = next.fetch_add(1); i < plan.roots.size(); i = next.fetch_add(1)) {
      search.from_root(plan.roots[i], [&](Search& s) {
        ++local;
        for (VertexId x : s.local_phi()) ++counts[x];
        return true;
      });
    }
    totals[w] = local;
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }
  for (std::size_t w = 0; w < workers; ++w) {
    mc.mappings += totals[w];
    for (std::size_t i = 0; i < part[w].size(); ++i) mc.participation[i] += part[w][i];
  }
  mc.embeddings = mc.mappings / mc.automorphisms;
  return mc;
}

std::uint64_t automorphism_order(const Template& t) {
  // Stabilizer chain: |Aut| is the product of orbit sizes of each vertex
  // under the automorphisms fixing all earlier ones.
  std::uint64_t order = 1;
  std::vector<TemplateVertex> from;
  std::vector<TemplateVertex> to;
  for (TemplateVertex q = 0; q < t.vertex_count(); ++q) {
    std::uint64_t orbit = 0;
    from.push_back(q);
    to.push_back(q);
    for (TemplateVertex p = 0; p < t.vertex_count(); ++p) {
      if (t.label(p) != t.label(q) || t.degree(p) != t.degree(q)) continue;
      if (std::find(to.begin(), to.end() - 1, p) != to.end() - 1) continue;
      to.back() = p;
      const auto ext = extends_to_automorphism(t, from, to, std::size_t{1} << 40);
      if (!ext) throw TemplateError("automorphism search exhausted");
      if (*ext) ++orbit;
    }
    to.back() = q;
    if (orbit != 0 && order > UINT64_MAX / orbit) throw TemplateError("automorphism count overflows");
    order *= std::max<std::uint64_t>(orbit, 1);
  }
  return order;
}

bool verify_match(const LabeledGraph& g, const Template& t, std::span<const VertexId> phi) {
  if (phi.size() != t.vertex_count()) return false;
  std::vector<VertexId> seen(phi.begin(), phi.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  for (TemplateVertex q = 0; q < phi.size(); ++q) {
    if (phi[q] >= g.vertex_count() || g.label(phi[q]) != t.label(q)) return false;
  }
  for (const auto& [a, b] : t.edges()) {
    if (!g.has_edge(phi[a], phi[b])) return false;
  }
  return true;
}

}  // namespace prunematch
