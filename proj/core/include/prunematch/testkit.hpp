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

#ifndef PRUNEMATCH_TESTKIT_HPP
#define PRUNEMATCH_TESTKIT_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <set>
#include <utility>
#include <vector>

#include "prunematch/graph.hpp"
#include "prunematch/pipeline.hpp"
#include "prunematch/template.hpp"

namespace prunematch::testkit {

struct OracleOptions {
  bool keep_matches = true;
  /// Lift the vertex-count guard.
  bool allow_large = false;
  /// Called with every mapping, phi[q] = graph vertex.
  std::function<void(std::span<const VertexId>)> on_match;
};

inline constexpr std::size_t kOracleVertexLimit = 10000;

struct OracleResult {
  std::uint64_t mappings = 0;
  std::vector<std::vector<VertexId>> matches;
  /// Union of all matches: vertices with the template vertices they play, and
  /// edges (u < v) that are the image of some template edge.
  std::vector<VertexSet> roles;
  std::set<std::pair<VertexId, VertexId>> edges;

  [[nodiscard]] SolutionSubgraph as_solution() const;
};

/// Plain backtracking over template vertices in id order, checking edges
/// against a dense adjacency matrix. Deliberately shares nothing with the
/// pruning code. Throws std::length_error above kOracleVertexLimit vertices
/// unless allowed.
OracleResult oracle_enumerate(const LabeledGraph& g, const Template& t,
                              const OracleOptions& opt = {});

struct RmatParams {
  unsigned scale = 10;
  unsigned edge_factor = 16;
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  std::uint64_t seed = 1;
};

/// Recursive-matrix generator; self-edges dropped and duplicates merged.
LabeledGraph rmat_generate(const RmatParams& p);

/// Label each vertex by the bit width of its degree (ceil(log2(d + 1))).
std::vector<Label> degree_labels(const LabeledGraph& g);

LabeledGraph erdos_renyi(std::size_t n, double p, std::size_t labels, std::uint64_t seed);

enum class GraphModel : std::uint8_t { erdos_renyi, rmat };
enum class TemplateSource : std::uint8_t { sampled, independent };

struct InstanceParams {
  GraphModel model = GraphModel::erdos_renyi;
  std::size_t vertices = 40;  // erdos_renyi
  double edge_probability = 0.12;
  unsigned rmat_scale = 6;
  std::size_t labels = 3;
  std::size_t template_vertices = 4;
  /// Chance of keeping each non-tree edge when building or sampling.
  double extra_edge_probability = 0.5;
  TemplateSource source = TemplateSource::sampled;
};

struct Instance {
  LabeledGraph graph;
  Template templ;
};

/// Random background graph plus a connected template, either cut out of the
/// graph (so at least one match exists) or drawn on its own.
Instance random_instance(const InstanceParams& p, std::uint64_t seed);

}  // namespace prunematch::testkit

#endif  // PRUNEMATCH_TESTKIT_HPP
