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

#include <cstddef>
#include <limits>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pgopt/circuit.hpp"
#include "pgopt/topology.hpp"

namespace pgopt {

/// Nearest-neighbour CX count of one spanning-tree edge between two legs at
/// graph distance d: a double ladder of 2d-1 gates on each side.
constexpr unsigned edge_weight(unsigned distance) { return 4 * distance - 2; }

struct MstEdge {
  Qubit parent;  ///< endpoint already in the tree (closer to the root)
  Qubit child;
  unsigned distance;

  friend bool operator==(const MstEdge&, const MstEdge&) = default;
};

struct GadgetCost {
  unsigned value = 0;
  Qubit root = 0;
  /// Edges in the order Prim's algorithm added them.
  std::vector<MstEdge> mst_edges;
};

namespace detail {

/// Prim's algorithm on the complete graph over `legs` with weights
/// edge_weight(distance). Starts at the lowest leg; among equal-weight
/// candidate edges picks the lowest child, then the lowest parent.
template <typename OnEdge>
unsigned prim(const QubitSet& legs, const Topology& topo, OnEdge&& on_edge) {
  constexpr unsigned kInf = std::numeric_limits<unsigned>::max();
  // Small fixed-capacity scratch; leg count is bounded by QubitSet capacity.
  Qubit vertex[QubitSet::kCapacity];
  unsigned key[QubitSet::kCapacity];
  Qubit parent[QubitSet::kCapacity];
  std::size_t k = 0;
  legs.for_each([&](Qubit q) { vertex[k++] = q; });
  if (k <= 1) return 0;
  const Qubit root = vertex[0];
  std::size_t remaining = k - 1;
  for (std::size_t i = 1; i < k; ++i) {
    key[i] = edge_weight(topo.distance(root, vertex[i]));
    parent[i] = root;
  }
  unsigned total = 0;
  while (remaining > 0) {
    std::size_t best = 0;
    unsigned best_key = kInf;
    for (std::size_t i = 1; i <= remaining; ++i) {
      if (key[i] < best_key) {
        best_key = key[i];
        best = i;
      }
    }
    const Qubit v = vertex[best];
    total += best_key;
    on_edge(parent[best], v, (best_key + 2) / 4);
    // Keep unvisited vertices packed in [1, remaining] and in ascending order
    // so that the strict < above breaks ties by lowest child index.
    for (std::size_t i = best; i < remaining; ++i) {
      vertex[i] = vertex[i + 1];
      key[i] = key[i + 1];
      parent[i] = parent[i + 1];
    }
    --remaining;
    for (std::size_t i = 1; i <= remaining; ++i) {
      const unsigned w = edge_weight(topo.distance(v, vertex[i]));
      if (w < key[i] || (w == key[i] && v < parent[i])) {
        key[i] = w;
        parent[i] = v;
      }
    }
  }
  return total;
}

}  // namespace detail

/// Nearest-neighbour CX count of a gadget with the given legs.
inline unsigned mst_cost(const QubitSet& legs, const Topology& topo) {
  return detail::prim(legs, topo, [](Qubit, Qubit, unsigned) {});
}

inline GadgetCost gadget_cost(const QubitSet& legs, const Topology& topo) {
  GadgetCost cost;
  if (!legs.empty()) cost.root = legs.front();
  cost.value = detail::prim(legs, topo, [&](Qubit p, Qubit c, unsigned d) {
    cost.mst_edges.push_back({p, c, d});
  });
  return cost;
}

inline GadgetCost gadget_cost(const PhaseGadget& g, const Topology& topo) {
  return gadget_cost(g.legs, topo);
}

inline unsigned circuit_cost(const PhaseCircuit& c, const Topology& topo) {
  unsigned total = 0;
  for (const auto& legs : c.z_legs()) total += mst_cost(legs, topo);
  for (const auto& legs : c.x_legs()) total += mst_cost(legs, topo);
  return total;
}

/// Memoises mst_cost by leg set. Z and X gadgets share entries since the cost
/// does not depend on basis. Not thread-safe; use one per optimisation run.
class GadgetCostCache {
 public:
  explicit GadgetCostCache(const Topology& topo, std::size_t max_entries = 1U << 20)
      : topo_(&topo), max_entries_(max_entries) {}

  unsigned operator()(const QubitSet& legs) {
    if (auto it = table_.find(legs); it != table_.end()) return it->second;
    if (table_.size() >= max_entries_) table_.clear();
    const unsigned v = mst_cost(legs, *topo_);
    table_.emplace(legs, v);
    return v;
  }

  [[nodiscard]] std::size_t size() const { return table_.size(); }
  [[nodiscard]] const Topology& topology() const { return *topo_; }

 private:
  const Topology* topo_;
  std::size_t max_entries_;
  std::unordered_map<QubitSet, unsigned> table_;
};

/// Keeps circuit_cost() of a circuit that is mutated column by column.
///
/// Callers report changed columns through mark(); total() re-costs only
/// those, looking them up in a GadgetCostCache.
class CircuitCostTracker {
 public:
  CircuitCostTracker(const PhaseCircuit& c, const Topology& topo) : cache_(topo) { reset(c); }

  void reset(const PhaseCircuit& c) {
    z_cost_.resize(c.z_legs().size());
    x_cost_.resize(c.x_legs().size());
    z_dirty_.assign(z_cost_.size(), 0);
    x_dirty_.assign(x_cost_.size(), 0);
    dirty_.clear();
    total_ = 0;
    for (std::size_t i = 0; i < z_cost_.size(); ++i) total_ += z_cost_[i] = cache_(c.z_legs()[i]);
    for (std::size_t i = 0; i < x_cost_.size(); ++i) total_ += x_cost_[i] = cache_(c.x_legs()[i]);
  }

  void mark(PhaseCircuit::Column col) {
    auto& flag = col.basis == Basis::Z ? z_dirty_[col.index] : x_dirty_[col.index];
    if (flag == 0) {
      flag = 1;
      dirty_.push_back(col);
    }
  }

  unsigned total(const PhaseCircuit& c) {
    for (const auto& col : dirty_) {
      const bool is_z = col.basis == Basis::Z;
      unsigned& slot = is_z ? z_cost_[col.index] : x_cost_[col.index];
      total_ -= slot;
      slot = cache_(c.legs(col));
      total_ += slot;
      (is_z ? z_dirty_[col.index] : x_dirty_[col.index]) = 0;
    }
    dirty_.clear();
    return total_;
  }

 private:
  GadgetCostCache cache_;
  std::vector<unsigned> z_cost_;
  std::vector<unsigned> x_cost_;
  std::vector<std::uint8_t> z_dirty_;
  std::vector<std::uint8_t> x_dirty_;
  std::vector<PhaseCircuit::Column> dirty_;
  unsigned total_ = 0;
};

/// Single-qubit rotation exp(i * angle * P) with P = Z or X.
struct Rotation {
  Basis basis;
  Angle angle;
  Qubit qubit;

  friend bool operator==(const Rotation&, const Rotation&) = default;
};

using CompiledOp = std::variant<CXGate, Rotation>;

/// Nearest-neighbour gate sequence (in application order) implementing a
/// gadget as V, rotation on the root, V-inverse.
///
/// V accumulates the leg parity onto the root (the lowest leg) along the
/// minimum spanning tree, children before parents. A tree edge from child
/// p_0 to parent p_d along shortest_path is the nested ladder
/// W_d = CX(p_{d-1}, p_d) W_{d-1} CX(p_{d-1}, p_d), W_1 = CX(p_0, p_1),
/// which XORs p_0 into every p_1..p_d. Interior path qubits are never legs
/// (an MST edge cannot be the strict maximum of a triangle), so this
/// pollution does not disturb the parity reaching the root. X gadgets use
/// the same circuit with every CX reversed.
inline std::vector<CompiledOp> compile_gadget(const PhaseGadget& g, const Topology& topo) {
  const GadgetCost cost = gadget_cost(g.legs, topo);
  const bool is_x = g.basis == Basis::X;
  std::vector<CXGate> v;
  const auto emit = [&](Qubit a, Qubit b) {
    v.push_back(is_x ? CXGate{b, a} : CXGate{a, b});
  };
  for (auto it = cost.mst_edges.rbegin(); it != cost.mst_edges.rend(); ++it) {
    const auto path = topo.shortest_path(it->child, it->parent);
    const std::size_t d = path.size() - 1;
    for (std::size_t s = d; s >= 2; --s) emit(path[s - 1], path[s]);
    emit(path[0], path[1]);
    for (std::size_t s = 2; s <= d; ++s) emit(path[s - 1], path[s]);
  }
  std::vector<CompiledOp> ops;
  ops.reserve(2 * v.size() + 1);
  for (const auto& gate : v) ops.emplace_back(gate);
  ops.emplace_back(Rotation{g.basis, g.angle, cost.root});
  for (auto it = v.rbegin(); it != v.rend(); ++it) ops.emplace_back(*it);
  return ops;
}

inline std::size_t cx_count(const std::vector<CompiledOp>& ops) {
  std::size_t n = 0;
  for (const auto& op : ops) n += std::holds_alternative<CXGate>(op) ? 1 : 0;
  return n;
}

}  // namespace pgopt
