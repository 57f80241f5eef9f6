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

#ifndef PRUNEMATCH_TEMPLATE_HPP
#define PRUNEMATCH_TEMPLATE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prunematch/types.hpp"

namespace prunematch {

using TemplateEdge = std::pair<TemplateVertex, TemplateVertex>;

/// Optional symbolic label dictionary ("a" -> 0, ...).
using LabelNames = std::map<std::string, Label, std::less<>>;

/// Small connected labeled search pattern. Vertices are 0..n0-1; edges are
/// stored normalized (first < second) and sorted.
class Template {
 public:
  static constexpr std::size_t kMaxVertices = VertexSet::kCapacity;

  Template() = default;
  /// Validates: 1 <= n0 <= 128, endpoints in range, no self-edges, connected.
  /// Duplicate edges collapse.
  Template(std::vector<Label> labels, std::vector<TemplateEdge> edges);

  [[nodiscard]] std::size_t vertex_count() const { return labels_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] Label label(TemplateVertex q) const { return labels_[q]; }
  [[nodiscard]] std::span<const Label> labels() const { return labels_; }
  [[nodiscard]] std::span<const TemplateEdge> edges() const { return edges_; }
  [[nodiscard]] std::span<const TemplateVertex> neighbors(TemplateVertex q) const {
    return adj_[q];
  }
  [[nodiscard]] const VertexSet& adjacency(TemplateVertex q) const { return adj_set_[q]; }
  [[nodiscard]] std::size_t degree(TemplateVertex q) const { return adj_[q].size(); }
  [[nodiscard]] bool has_edge(TemplateVertex a, TemplateVertex b) const {
    return adj_set_[a].contains(b);
  }
  /// Index into edges() of {a, b}, if present.
  [[nodiscard]] std::optional<std::size_t> edge_index(TemplateVertex a, TemplateVertex b) const;
  /// Union of labels, as a sorted list without duplicates.
  [[nodiscard]] std::vector<Label> distinct_labels() const;

  /// Copies with one edge added or removed; throws TemplateError if the result
  /// is invalid (e.g. disconnected).
  [[nodiscard]] Template with_edge(TemplateVertex a, TemplateVertex b) const;
  [[nodiscard]] Template without_edge(TemplateVertex a, TemplateVertex b) const;

  friend bool operator==(const Template& x, const Template& y) {
    return x.labels_ == y.labels_ && x.edges_ == y.edges_;
  }

 private:
  std::vector<Label> labels_;
  std::vector<TemplateEdge> edges_;
  std::vector<std::vector<TemplateVertex>> adj_;
  std::vector<VertexSet> adj_set_;
};

/// Text form: "v <id> <label>" lines then "e <src> <dst>" lines; '#' starts a
/// comment; ';' also separates records. Vertex ids must be 0..n0-1. Labels are
/// integers, or names resolved through `names`.
Template parse_template_text(std::string_view text, const LabelNames* names = nullptr);
Template parse_template(const std::filesystem::path& path, const LabelNames* names = nullptr);
std::string format_template(const Template& t);

struct TemplateAnalysis {
  /// Each cycle starts at its smallest vertex; second vertex < last vertex.
  std::vector<std::vector<TemplateVertex>> simple_cycles;
  /// Parallel to Template::edges(): number of distinct simple cycles per edge.
  std::vector<std::size_t> edge_cycle_degree;
  std::size_t max_cycle_degree = 0;
  bool is_edge_monocyclic = true;
  std::map<Label, std::vector<TemplateVertex>> repeated_label_groups;
  std::vector<TemplateVertex> leaf_unique;
  std::size_t diameter = 0;
  /// Hop distances, distance[a][b].
  std::vector<std::vector<std::uint32_t>> distance;

  [[nodiscard]] bool has_repeated_labels() const { return !repeated_label_groups.empty(); }
};

/// Exhaustive analysis; throws TemplateError if the template has more than
/// `max_cycles` simple cycles.
TemplateAnalysis analyze(const Template& t, std::size_t max_cycles = 200000);

/// Orbits of the label-preserving automorphism group. When the search budget
/// is exhausted the orbits degrade to singletons (exact == false), which every
/// consumer treats as "no known symmetry".
struct TemplateSymmetry {
  bool exact = true;
  /// vertex_orbit[q] = { p : some automorphism maps q to p }.
  std::vector<VertexSet> vertex_orbit;
  /// Orbit id of the oriented template edge (a, b), indexed a * n0 + b;
  /// kNoOrbit for non-edges.
  std::vector<std::uint32_t> pair_orbit;
  std::size_t n0 = 0;

  static constexpr std::uint32_t kNoOrbit = 0xffffffffU;

  [[nodiscard]] std::uint32_t orbit_of(TemplateVertex a, TemplateVertex b) const {
    return pair_orbit[static_cast<std::size_t>(a) * n0 + b];
  }
  /// Closure of a set of template vertices under the orbits.
  [[nodiscard]] VertexSet close(const VertexSet& s) const;
};

TemplateSymmetry compute_symmetry(const Template& t, std::size_t budget = 2000000);

/// True if some label-preserving automorphism extends the partial map
/// from[i] -> to[i]. `budget` bounds search nodes; nullopt if exhausted.
std::optional<bool> extends_to_automorphism(const Template& t,
                                            std::span<const TemplateVertex> from,
                                            std::span<const TemplateVertex> to,
                                            std::size_t budget = 2000000);

}  // namespace prunematch

#endif  // PRUNEMATCH_TEMPLATE_HPP
