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

#ifndef PRUNEMATCH_CONSTRAINTS_HPP
#define PRUNEMATCH_CONSTRAINTS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prunematch/graph.hpp"
#include "prunematch/template.hpp"

namespace prunematch {

enum class ConstraintKind : std::uint8_t { cycle, path, tds };

const char* to_string(ConstraintKind k);

/// One position of a walk.
struct WalkStep {
  TemplateVertex q = 0;
  Label label = 0;
  /// Earlier position this step must land on again, or -1 for a new vertex.
  std::int32_t coincide = -1;
  /// Earlier positions (first occurrences of other template vertices with the
  /// same label) this step must differ from. The immediate predecessor is
  /// omitted: adjacency already makes it distinct.
  std::vector<std::uint32_t> distinct_from;

  friend bool operator==(const WalkStep&, const WalkStep&) = default;
};

/// A walk over template vertices started from steps[0].
struct RootedWalk {
  std::vector<WalkStep> steps;
  bool cyclic = false;

  /// Number of hops.
  [[nodiscard]] std::size_t length() const { return steps.empty() ? 0 : steps.size() - 1; }
  [[nodiscard]] TemplateVertex source() const { return steps.front().q; }
  /// The template vertex reached on the last hop that is confirmed when the
  /// walk completes: steps[L-1] for cyclic walks, steps[L] otherwise.
  [[nodiscard]] TemplateVertex partner() const {
    return cyclic ? steps[steps.size() - 2].q : steps.back().q;
  }
  /// Structural key: identical keys denote interchangeable walks.
  [[nodiscard]] std::string fingerprint() const;

  friend bool operator==(const RootedWalk&, const RootedWalk&) = default;
};

struct NonLocalConstraint {
  ConstraintKind kind = ConstraintKind::cycle;
  /// The final covering walk of the whole template.
  bool mandatory = false;
  /// Walks started concurrently; roots.front() is the canonical walk.
  std::vector<RootedWalk> roots;
  /// Number of template cycles this constraint stands for (cycle kind).
  std::size_t merged = 1;

  [[nodiscard]] const RootedWalk& walk() const { return roots.front(); }
  [[nodiscard]] bool is_cyclic() const { return walk().cyclic; }
  [[nodiscard]] std::size_t length() const { return walk().length(); }
  [[nodiscard]] TemplateVertex source() const { return walk().source(); }
};

struct ConstraintSet {
  std::vector<NonLocalConstraint> constraints;
  TemplateSymmetry symmetry;
  /// True when some constraint covers the template on its own.
  [[nodiscard]] bool has_mandatory() const {
    for (const auto& c : constraints) {
      if (c.mandatory) return true;
    }
    return false;
  }
};

/// Background label frequency used for ordering choices; absent labels count 0.
using LabelFrequency = std::function<std::size_t(Label)>;

LabelFrequency frequency_of(const GraphStats& stats);

ConstraintSet generate_constraints(const Template& t, const TemplateAnalysis& a,
                                   const LabelFrequency& freq);
ConstraintSet generate_constraints(const Template& t, const TemplateAnalysis& a,
                                   const GraphStats& stats);

/// Builds the closed walk used by template-driven search: depth-first over
/// `edges` from `root`, revisiting already placed vertices as soon as they
/// become reachable so every edge is checked once. If `last` is given the walk
/// finishes with the hop last -> root.
RootedWalk closed_cover_walk(const Template& t, std::span<const TemplateEdge> edges,
                             TemplateVertex root, const LabelFrequency& freq,
                             std::optional<TemplateVertex> last = std::nullopt);

/// Fills label, coincide and distinct_from for a sequence of template
/// vertices. Repeated vertices coincide with their first occurrence.
RootedWalk make_walk(const Template& t, std::span<const TemplateVertex> sequence, bool cyclic);

/// "a→b→c→a" rendering. Steps with distinctness checks carry "(distinct)",
/// revisits other than the closing hop carry "(=k)".
std::string walk_to_string(const RootedWalk& w, const LabelNames* names = nullptr);
std::string walk_to_string(const NonLocalConstraint& c, const LabelNames* names = nullptr);
std::string plan_to_string(const ConstraintSet& k, const LabelNames* names = nullptr);

/// Reorders a plan by constraint indices (a permutation or a subset).
ConstraintSet reorder(const ConstraintSet& k, std::span<const std::size_t> order);

}  // namespace prunematch

#endif  // PRUNEMATCH_CONSTRAINTS_HPP
