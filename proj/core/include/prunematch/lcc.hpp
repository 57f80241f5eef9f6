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

#ifndef PRUNEMATCH_LCC_HPP
#define PRUNEMATCH_LCC_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prunematch/engine.hpp"
#include "prunematch/graph.hpp"
#include "prunematch/state.hpp"
#include "prunematch/template.hpp"

namespace prunematch {

/// Payload of an alive message: the sender's candidate set and the arc index
/// on the receiver's side.
struct AliveMessage {
  VertexSet omega;
  std::uint64_t slot = 0;
  std::uint32_t stamp = 0;
  bool live = false;
};

using LccEngine = Engine<AliveMessage>;

struct LccOptions {
  /// Stop messaging over arcs already known dead.
  bool edge_elimination = true;
};

struct LccIteration {
  std::uint64_t active_vertices = 0;  // at iteration start
  std::uint64_t live_arcs = 0;        // at iteration start
  std::uint64_t alive_messages = 0;
  std::uint64_t vertices_eliminated = 0;
  std::uint64_t candidates_removed = 0;
  std::uint64_t edges_eliminated = 0;

  [[nodiscard]] bool changed() const {
    return vertices_eliminated + candidates_removed + edges_eliminated != 0;
  }
};

struct LccReport {
  /// Iterations run, including the last one that changed nothing.
  std::size_t iterations = 0;
  std::vector<LccIteration> per_iteration;
  DeliveryStats delivery;

  [[nodiscard]] bool changed() const;
  [[nodiscard]] std::uint64_t alive_messages() const;
};

/// Per template vertex: what a candidate must see among its neighbors.
struct LocalRequirement {
  VertexSet adj;
  /// Same-label neighbor groups of size >= 2; each needs that many distinct
  /// neighbors able to play one of its members.
  std::vector<VertexSet> groups;
};

std::vector<LocalRequirement> local_requirements(const Template& t);

/// Template vertices a neighbor with candidates `sender` can match next to a
/// vertex with candidates `receiver`.
VertexSet eta(const Template& t, const VertexSet& sender, const VertexSet& receiver);

/// Iterates local checks until nothing changes.
LccReport lcc_fixed_point(const LabeledGraph& g, const Template& t, VertexStates& s,
                          LccEngine& engine, const LccOptions& opt = {});
LccReport lcc_fixed_point(const LabeledGraph& g, const Template& t, VertexStates& s,
                          const EngineConfig& cfg = {}, const LccOptions& opt = {});

}  // namespace prunematch

#endif  // PRUNEMATCH_LCC_HPP
