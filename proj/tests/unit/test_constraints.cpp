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

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "prunematch/constraints.hpp"

namespace pm = prunematch;

namespace {

pm::ConstraintSet plan_for(const pm::Template& t) {
  return pm::generate_constraints(t, pm::analyze(t), [](pm::Label) { return std::size_t{1}; });
}

// Every hop of every walk follows a template edge and labels match.
void expect_walks_follow_template(const pm::Template& t, const pm::ConstraintSet& k) {
  for (const auto& c : k.constraints) {
    for (const auto& w : c.roots) {
      ASSERT_GE(w.steps.size(), 2u);
      for (std::size_t i = 0; i < w.steps.size(); ++i) {
        EXPECT_EQ(w.steps[i].label, t.label(w.steps[i].q));
        if (i > 0) EXPECT_TRUE(t.has_edge(w.steps[i - 1].q, w.steps[i].q));
        if (w.steps[i].coincide >= 0) {
          EXPECT_EQ(w.steps[static_cast<std::size_t>(w.steps[i].coincide)].q, w.steps[i].q);
        }
      }
      if (w.cyclic) EXPECT_EQ(w.steps.back().q, w.steps.front().q);
    }
  }
}

TEST(Constraints, TreeWithUniqueLabelsNeedsNothing) {
  const pm::Template t({0, 1, 2, 3}, {{0, 1}, {1, 2}, {1, 3}});
  EXPECT_TRUE(plan_for(t).constraints.empty());
}

TEST(Constraints, TriangleYieldsOneCycle) {
  const auto t = fixtures::triangle();
  const auto k = plan_for(t);
  ASSERT_EQ(k.constraints.size(), 1u);
  EXPECT_EQ(k.constraints[0].kind, pm::ConstraintKind::cycle);
  EXPECT_EQ(k.constraints[0].length(), 3u);
  expect_walks_follow_template(t, k);
}

TEST(Constraints, RepeatedLabelsYieldPaths) {
  // a-b-c-a path: the end points must land on distinct vertices, which
  // local checks cannot see.
  const pm::Template t({0, 1, 2, 0}, {{0, 1}, {1, 2}, {2, 3}});
  const auto k = plan_for(t);
  ASSERT_FALSE(k.constraints.empty());
  bool path = false;
  for (const auto& c : k.constraints) path = path || c.kind == pm::ConstraintKind::path;
  EXPECT_TRUE(path);
  expect_walks_follow_template(t, k);
}

TEST(Constraints, MultiCycleTemplateGetsMandatoryWalk) {
  const pm::Template t({0, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  const auto k = plan_for(t);
  ASSERT_TRUE(k.has_mandatory());
  const auto& last = k.constraints.back();
  EXPECT_TRUE(last.mandatory);
  EXPECT_EQ(last.kind, pm::ConstraintKind::tds);
  // The covering walk uses every template edge.
  std::set<std::pair<pm::TemplateVertex, pm::TemplateVertex>> used;
  const auto& w = last.walk();
  for (std::size_t i = 1; i < w.steps.size(); ++i) {
    used.emplace(std::min(w.steps[i - 1].q, w.steps[i].q), std::max(w.steps[i - 1].q, w.steps[i].q));
  }
  EXPECT_EQ(used.size(), t.edge_count());
  expect_walks_follow_template(t, k);
}

TEST(Constraints, SymmetricCyclesMerge) {
  // Unlabeled 4-cycle with a chord: the two triangles are interchangeable.
  const pm::Template t({0, 0, 0, 0}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  const auto k = plan_for(t);
  std::size_t merged = 0;
  for (const auto& c : k.constraints) merged = std::max(merged, c.merged);
  EXPECT_GE(merged, 2u);
  expect_walks_follow_template(t, k);
}

TEST(Constraints, ClosedCoverWalkVisitsAllEdges) {
  const auto t = fixtures::clique(4);
  const auto w = pm::closed_cover_walk(t, t.edges(), 0, [](pm::Label) { return std::size_t{1}; });
  std::set<std::pair<pm::TemplateVertex, pm::TemplateVertex>> used;
  for (std::size_t i = 1; i < w.steps.size(); ++i) {
    used.emplace(std::min(w.steps[i - 1].q, w.steps[i].q), std::max(w.steps[i - 1].q, w.steps[i].q));
  }
  EXPECT_EQ(used.size(), 6u);
}

TEST(Constraints, MakeWalkMarksDistinctness) {
  const pm::Template t({0, 1, 0, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const std::vector<pm::TemplateVertex> seq{0, 1, 2, 3, 0};
  const auto w = pm::make_walk(t, seq, true);
  EXPECT_EQ(w.length(), 4u);
  EXPECT_EQ(w.steps[4].coincide, 0);
  EXPECT_EQ(w.steps[2].distinct_from, (std::vector<std::uint32_t>{0}));
  EXPECT_EQ(w.partner(), 3u);
  EXPECT_NE(pm::walk_to_string(w).find("(distinct)"), std::string::npos);
}

TEST(Constraints, ReorderAndPrint) {
  const pm::Template t({0, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  const auto k = plan_for(t);
  ASSERT_GE(k.constraints.size(), 2u);
  std::vector<std::size_t> order{k.constraints.size() - 1};
  const auto r = pm::reorder(k, order);
  ASSERT_EQ(r.constraints.size(), 1u);
  EXPECT_TRUE(r.constraints[0].mandatory);
  const std::vector<std::size_t> bad{99};
  EXPECT_THROW((void)pm::reorder(k, bad), std::exception);
  EXPECT_FALSE(pm::plan_to_string(k).empty());
}

TEST(Constraints, LabelFrequencyPicksRareSource) {
  // Triangle where label 2 is rare: the cycle should start there.
  const auto t = fixtures::triangle();
  const auto k = pm::generate_constraints(
      t, pm::analyze(t), [](pm::Label l) { return l == 2 ? std::size_t{1} : std::size_t{1000}; });
  ASSERT_EQ(k.constraints.size(), 1u);
  EXPECT_EQ(k.constraints[0].source(), 2u);
}

}  // namespace
