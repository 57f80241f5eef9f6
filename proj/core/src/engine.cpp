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

#include "prunematch/engine.hpp"

#include <queue>
#include <utility>

namespace prunematch {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Partition Partition::hashed(std::size_t n, std::size_t workers) {
  if (workers == 0) throw EngineError("worker count must be at least 1");
  Partition p;
  p.workers_ = workers;
  p.owner_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    p.owner_[v] = static_cast<std::uint32_t>(splitmix64(v) % workers);
  }
  return p;
}

Partition Partition::balanced(const LabeledGraph& g, std::span<const std::uint8_t> active,
                              std::size_t workers) {
  Partition p = hashed(g.vertex_count(), workers);
  std::vector<std::pair<std::uint64_t, VertexId>> items;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (active[v] != 0) items.emplace_back(1 + g.degree(v), v);
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  using Load = std::pair<std::uint64_t, std::uint32_t>;
  std::priority_queue<Load, std::vector<Load>, std::greater<>> bins;
  for (std::uint32_t w = 0; w < workers; ++w) bins.emplace(0, w);
  for (const auto& [weight, v] : items) {
    auto [load, w] = bins.top();
    bins.pop();
    p.owner_[v] = w;
    bins.emplace(load + weight, w);
  }
  return p;
}

}  // namespace prunematch
