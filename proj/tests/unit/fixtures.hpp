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

#ifndef PRUNEMATCH_TESTS_FIXTURES_HPP
#define PRUNEMATCH_TESTS_FIXTURES_HPP

#include <memory>
#include <utility>
#include <vector>

#include "prunematch/graph.hpp"
#include "prunematch/template.hpp"

namespace fixtures {

using Edges = std::vector<std::pair<prunematch::VertexId, prunematch::VertexId>>;

inline prunematch::LabeledGraph graph(std::size_t n, const Edges& e,
                                      std::vector<prunematch::Label> labels = {}) {
  return prunematch::LabeledGraph::from_edges(n, e, std::move(labels));
}

inline std::shared_ptr<const prunematch::LabeledGraph> shared(prunematch::LabeledGraph g) {
  return std::make_shared<const prunematch::LabeledGraph>(std::move(g));
}

inline prunematch::LabeledGraph k4() {
  return graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

// Labels a,b,c repeated around a six-cycle.
inline prunematch::LabeledGraph hexagon() {
  return graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}, {0, 1, 2, 0, 1, 2});
}

inline prunematch::Template triangle(prunematch::Label a = 0, prunematch::Label b = 1,
                                     prunematch::Label c = 2) {
  return prunematch::Template({a, b, c}, {{0, 1}, {1, 2}, {2, 0}});
}

inline prunematch::Template clique(std::size_t k, prunematch::Label l = 0) {
  std::vector<prunematch::TemplateEdge> e;
  for (prunematch::TemplateVertex a = 0; a < k; ++a) {
    for (prunematch::TemplateVertex b = a + 1; b < k; ++b) e.emplace_back(a, b);
  }
  return prunematch::Template(std::vector<prunematch::Label>(k, l), e);
}

}  // namespace fixtures

#endif  // PRUNEMATCH_TESTS_FIXTURES_HPP
