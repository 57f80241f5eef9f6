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

#ifndef PRUNEMATCH_ENUMERATION_HPP
#define PRUNEMATCH_ENUMERATION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "prunematch/graph.hpp"
#include "prunematch/pipeline.hpp"
#include "prunematch/template.hpp"

namespace prunematch {

/// Receives each mapping as phi[q] = graph vertex; return false to stop.
using MatchCallback = std::function<bool(std::span<const VertexId>)>;

struct MatchCount {
  /// Injective label- and edge-preserving maps.
  std::uint64_t mappings = 0;
  /// Order of the template's label-preserving automorphism group.
  std::uint64_t automorphisms = 1;
  /// Distinct matched subgraphs: mappings / automorphisms.
  std::uint64_t embeddings = 0;
  /// Parallel to the solution's vertices: mappings each vertex takes part in.
  std::vector<std::uint64_t> participation;
};

/// Backtracking search restricted to the solution's vertices, candidate sets
/// and edges. Returns the number of mappings emitted.
std::uint64_t enumerate(const SolutionSubgraph& sol, const Template& t, const MatchCallback& emit,
                        std::optional<std::uint64_t> limit = std::nullopt);

std::vector<std::vector<VertexId>> enumerate_all(const SolutionSubgraph& sol, const Template& t,
                                                 std::optional<std::uint64_t> limit = std::nullopt);

MatchCount count_matches(const SolutionSubgraph& sol, const Template& t, std::size_t workers = 1);

/// Exact automorphism count; throws TemplateError on overflow.
std::uint64_t automorphism_order(const Template& t);

bool verify_match(const LabeledGraph& g, const Template& t, std::span<const VertexId> phi);

}  // namespace prunematch

#endif  // PRUNEMATCH_ENUMERATION_HPP
