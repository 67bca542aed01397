// Copyright 2026 The pgopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgopt/qubit_set.hpp"

namespace pgopt {

/// Undirected qubit connectivity graph of a device.
///
/// All-pairs hop distances are computed once at construction by a BFS from
/// every qubit, so distance() is a table lookup. Instances are immutable and
/// may be shared freely between concurrent optimisation runs.
class Topology {
 public:
  using Edge = std::pair<Qubit, Qubit>;

  /// Builds a topology from an edge list. Edges are stored normalised as
  /// (min, max) and sorted. Self-loops, duplicates, out-of-range indices and
  /// disconnected graphs are rejected.
  static Topology from_edges(std::size_t num_qubits, std::vector<Edge> edges) {
    return Topology(num_qubits, std::move(edges));
  }

  static Topology line(std::size_t n) {
    std::vector<Edge> edges;
    for (Qubit i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Topology(n, std::move(edges));
  }

  static Topology cycle(std::size_t n) {
    if (n < 3) throw std::invalid_argument("cycle topology needs at least 3 qubits");
    std::vector<Edge> edges;
    for (Qubit i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Topology(n, std::move(edges));
  }

  /// Row-major rectangular grid: qubit index = row * cols + col.
  static Topology grid(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("grid dimensions must be positive");
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const Qubit q = r * cols + c;
        if (c + 1 < cols) edges.emplace_back(q, q + 1);
        if (r + 1 < rows) edges.emplace_back(q, q + cols);
      }
    }
    return Topology(rows * cols, std::move(edges));
  }

  /// Parses `line:N`, `cycle:N` or `grid:RxC`.
  static Topology parse(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("topology shorthand must look like kind:size");
    const auto kind = spec.substr(0, colon);
    const auto rest = spec.substr(colon + 1);
    if (kind == "line") return line(parse_size(rest));
    if (kind == "cycle") return cycle(parse_size(rest));
    if (kind == "grid") {
      const auto x = rest.find_first_of("xX");
      if (x == std::string_view::npos)
        throw std::invalid_argument("grid shorthand must look like grid:RxC");
      return grid(parse_size(rest.substr(0, x)), parse_size(rest.substr(x + 1)));
    }
    throw std::invalid_argument("unknown topology kind '" + std::string(kind) + "'");
  }

  [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<Qubit>& neighbours(Qubit q) const {
    return adjacency_.at(q);
  }

  [[nodiscard]] unsigned distance(Qubit i, Qubit j) const {
    return dist_[i * num_qubits_ + j];
  }

  [[nodiscard]] bool adjacent(Qubit i, Qubit j) const {
    return i != j && distance(i, j) == 1;
  }

  /// Shortest path from i to j, both endpoints included. BFS explores
  /// neighbours in ascending index order, so the result is deterministic.
  [[nodiscard]] std::vector<Qubit> shortest_path(Qubit i, Qubit j) const {
    if (i >= num_qubits_ || j >= num_qubits_) throw std::out_of_range("qubit out of range");
    constexpr auto kNone = std::numeric_limits<Qubit>::max();
    std::vector<Qubit> parent(num_qubits_, kNone);
    std::deque<Qubit> queue{i};
    parent[i] = i;
    while (!queue.empty() && parent[j] == kNone) {
      const Qubit u = queue.front();
      queue.pop_front();
      for (Qubit v : adjacency_[u]) {
        if (parent[v] != kNone) continue;
        parent[v] = u;
        queue.push_back(v);
      }
    }
    std::vector<Qubit> path{j};
    while (path.back() != i) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.num_qubits_ == b.num_qubits_ && a.edges_ == b.edges_;
  }

 private:
  Topology(std::size_t n, std::vector<Edge> edges) : num_qubits_(n) {
    if (n == 0) throw std::invalid_argument("topology needs at least one qubit");
    if (n > QubitSet::kCapacity)
      throw std::invalid_argument("topology exceeds the supported qubit count");
    for (auto& [a, b] : edges) {
      if (a >= n || b >= n) throw std::invalid_argument("edge endpoint out of range");
      if (a == b) throw std::invalid_argument("self-loop in topology");
      if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("duplicate edge in topology");
    edges_ = std::move(edges);

    adjacency_.resize(n);
    for (const auto& [a, b] : edges_) {
      adjacency_[a].push_back(b);
      adjacency_[b].push_back(a);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

    constexpr auto kUnreached = std::numeric_limits<unsigned>::max();
    dist_.assign(n * n, kUnreached);
    for (Qubit s = 0; s < n; ++s) {
      unsigned* row = &dist_[s * n];
      std::deque<Qubit> queue{s};
      row[s] = 0;
      while (!queue.empty()) {
        const Qubit u = queue.front();
        queue.pop_front();
        for (Qubit v : adjacency_[u]) {
          if (row[v] != kUnreached) continue;
          row[v] = row[u] + 1;
          queue.push_back(v);
        }
      }
      if (std::find(row, row + n, kUnreached) != row + n)
        throw std::invalid_argument("topology graph is not connected");
    }
  }

  static std::size_t parse_size(std::string_view s) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      throw std::invalid_argument("bad size '" + std::string(s) + "' in topology shorthand");
    return value;
  }

  std::size_t num_qubits_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Qubit>> adjacency_;
  std::vector<unsigned> dist_;
};

}  // namespace pgopt
