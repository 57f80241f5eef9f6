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

#ifndef PRUNEMATCH_STATE_HPP
#define PRUNEMATCH_STATE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prunematch/graph.hpp"
#include "prunematch/template.hpp"
#include "prunematch/types.hpp"

namespace prunematch {

/// Per-vertex pruning state. Arc-indexed arrays follow the graph's CSR slots.
struct VertexStates {
  /// Vertex still a candidate.
  std::vector<std::uint8_t> alpha;
  /// Template vertices each graph vertex may still match.
  std::vector<VertexSet> omega;
  /// Arc still part of the solution (logical; symmetric across directions).
  std::vector<std::uint8_t> edge_live;
  /// Last candidate set received over each arc and the round it arrived in.
  std::vector<VertexSet> nbr_omega;
  std::vector<std::uint32_t> nbr_stamp;
  std::uint32_t stamp = 0;

  [[nodiscard]] std::size_t vertex_count() const { return alpha.size(); }
  [[nodiscard]] std::size_t active_vertex_count() const;
  /// Live arcs leaving active vertices (each undirected edge counts twice).
  [[nodiscard]] std::size_t live_arc_count(const LabeledGraph& g) const;
  [[nodiscard]] std::size_t live_edge_count(const LabeledGraph& g) const;
  [[nodiscard]] std::vector<VertexId> active_vertices() const;

  /// Drops v and all of its arcs in both directions. Returns arcs killed.
  std::size_t deactivate(const LabeledGraph& g, VertexId v);
  /// Kills arc `slot` and its reverse. Returns false if it was already dead.
  bool kill_edge(const LabeledGraph& g, std::uint64_t slot);

  /// Same solution: candidate flags, candidate sets and live arcs agree.
  [[nodiscard]] bool same_solution(const VertexStates& o) const;
};

/// Every vertex whose label occurs in the template starts active with all
/// same-label template vertices as candidates; its arcs start live.
VertexStates init_states(const LabeledGraph& g, const Template& t);

/// Validates array sizes against the graph; throws GraphError.
void check_states(const LabeledGraph& g, const VertexStates& s);

}  // namespace prunematch

#endif  // PRUNEMATCH_STATE_HPP
