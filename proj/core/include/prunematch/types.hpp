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

#ifndef PRUNEMATCH_TYPES_HPP
#define PRUNEMATCH_TYPES_HPP

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace prunematch {

/// Dense background vertex index in [0, n).
using VertexId = std::uint32_t;
/// Vertex label in [0, n_labels).
using Label = std::uint32_t;
/// Template vertex index in [0, n0).
using TemplateVertex = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Fixed-capacity bit set over template vertices. Backs the per-vertex
/// candidate sets and the cached neighbor candidate sets.
class VertexSet {
 public:
  static constexpr std::size_t kCapacity = 128;

  constexpr VertexSet() = default;

  static VertexSet single(TemplateVertex q) {
    VertexSet s;
    s.insert(q);
    return s;
  }

  void insert(TemplateVertex q) { words_[q >> 6] |= bit(q); }
  void erase(TemplateVertex q) { words_[q >> 6] &= ~bit(q); }
  [[nodiscard]] bool contains(TemplateVertex q) const {
    return (words_[q >> 6] & bit(q)) != 0;
  }
  [[nodiscard]] bool empty() const { return (words_[0] | words_[1]) == 0; }
  [[nodiscard]] std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(words_[0]) +
                                    std::popcount(words_[1]));
  }
  [[nodiscard]] bool intersects(const VertexSet& o) const {
    return ((words_[0] & o.words_[0]) | (words_[1] & o.words_[1])) != 0;
  }
  [[nodiscard]] bool is_subset_of(const VertexSet& o) const {
    return (words_[0] & ~o.words_[0]) == 0 && (words_[1] & ~o.words_[1]) == 0;
  }

  VertexSet& operator|=(const VertexSet& o) {
    words_[0] |= o.words_[0];
    words_[1] |= o.words_[1];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    words_[0] &= o.words_[0];
    words_[1] &= o.words_[1];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    words_[0] &= ~o.words_[0];
    words_[1] &= ~o.words_[1];
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  /// Calls fn(q) for every member in increasing order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        fn(static_cast<TemplateVertex>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  [[nodiscard]] std::uint64_t word(std::size_t i) const { return words_[i]; }
  void set_word(std::size_t i, std::uint64_t w) { words_[i] = w; }

 private:
  static constexpr std::uint64_t bit(TemplateVertex q) {
    return std::uint64_t{1} << (q & 63);
  }
  std::array<std::uint64_t, 2> words_{};
};

/// Input that cannot be parsed (edge lists, label files, templates).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prunematch

#endif  // PRUNEMATCH_TYPES_HPP
