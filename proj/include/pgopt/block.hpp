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
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pgopt/circuit.hpp"
#include "pgopt/cost.hpp"
#include "pgopt/topology.hpp"

namespace pgopt {

/// A CX gate placed on a layer of a block.
struct LayeredGate {
  std::size_t layer;
  CXGate gate;

  friend bool operator==(const LayeredGate&, const LayeredGate&) = default;
  friend auto operator<=>(const LayeredGate&, const LayeredGate&) = default;
};

/// Adding or removing one CX gate on one layer.
using GateFlip = LayeredGate;

/// Fixed number of layers of CX gates, each layer a partial matching.
/// Layer 0 is the one adjacent to the phase circuit.
class CXBlock {
 public:
  CXBlock(std::size_t num_qubits, std::size_t num_layers)
      : num_qubits_(num_qubits), slots_(num_layers, std::vector<Slot>(num_qubits)) {
    if (num_layers == 0) throw std::invalid_argument("CX block needs at least one layer");
  }

  [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
  [[nodiscard]] std::size_t num_layers() const { return slots_.size(); }
  [[nodiscard]] std::size_t gate_count() const { return gate_count_; }

  [[nodiscard]] bool occupied(std::size_t layer, Qubit q) const {
    return slots_[layer][q].control != kFree;
  }

  [[nodiscard]] bool contains(std::size_t layer, const CXGate& g) const {
    const Slot& s = slots_[layer][g.control];
    return s.control == static_cast<std::int32_t>(g.control) &&
           s.target == static_cast<std::int32_t>(g.target);
  }

  /// Gates on one layer, ordered by control qubit.
  [[nodiscard]] std::vector<CXGate> gates(std::size_t layer) const {
    std::vector<CXGate> out;
    for_each_gate(layer, [&](const CXGate& g) { out.push_back(g); });
    return out;
  }

  template <typename Fn>
  void for_each_gate(std::size_t layer, Fn&& fn) const {
    const auto& row = slots_[layer];
    for (Qubit q = 0; q < num_qubits_; ++q)
      if (row[q].control == static_cast<std::int32_t>(q))
        fn(CXGate{q, static_cast<Qubit>(row[q].target)});
  }

  /// Adds the gate if absent, removes it if present. Caller guarantees the
  /// flip is valid (see is_valid_flip).
  void toggle(std::size_t layer, const CXGate& g) {
    auto& row = slots_[layer];
    if (contains(layer, g)) {
      row[g.control] = Slot{};
      row[g.target] = Slot{};
      --gate_count_;
    } else {
      const Slot s{static_cast<std::int32_t>(g.control), static_cast<std::int32_t>(g.target)};
      row[g.control] = s;
      row[g.target] = s;
      ++gate_count_;
    }
  }

  friend bool operator==(const CXBlock& a, const CXBlock& b) {
    return a.num_qubits_ == b.num_qubits_ && a.slots_ == b.slots_;
  }

 private:
  static constexpr std::int32_t kFree = -1;
  struct Slot {
    std::int32_t control = kFree;
    std::int32_t target = kFree;
    friend bool operator==(const Slot&, const Slot&) = default;
  };

  std::size_t num_qubits_;
  std::size_t gate_count_ = 0;
  std::vector<std::vector<Slot>> slots_;  // [layer][qubit]
};

inline std::size_t block_gate_count(const CXBlock& b) { return b.gate_count(); }

/// True iff the flip removes the exact gate present at its layer, or adds a
/// gate to a layer where neither qubit is used. A gate with the opposite
/// orientation on the same pair blocks the addition.
inline bool is_valid_flip(const CXBlock& b, const GateFlip& f) {
  const auto& [layer, g] = f;
  if (layer >= b.num_layers() || g.control == g.target || g.control >= b.num_qubits() ||
      g.target >= b.num_qubits())
    return false;
  if (b.contains(layer, g)) return true;
  return !b.occupied(layer, g.control) && !b.occupied(layer, g.target);
}

/// Every valid flip over layers x topology edges x both orientations, in
/// (layer, edge, orientation) order.
inline void enumerate_valid_flips(const CXBlock& b, const Topology& t, std::vector<GateFlip>& out) {
  out.clear();
  for (std::size_t l = 0; l < b.num_layers(); ++l) {
    for (const auto& [u, v] : t.edges()) {
      for (const CXGate g : {CXGate{u, v}, CXGate{v, u}}) {
        if (is_valid_flip(b, {l, g})) out.push_back({l, g});
      }
    }
  }
}

inline std::vector<GateFlip> enumerate_valid_flips(const CXBlock& b, const Topology& t) {
  std::vector<GateFlip> out;
  enumerate_valid_flips(b, t, out);
  return out;
}

/// Gates strictly below `f` in the order generated by
/// (l1; g1) < (l2; g2) iff l1 < l2 and the gates share a qubit.
/// Sweeps layers l-1 down to 0 growing the set of touched qubits; the result
/// is in descending layer order, ascending control within a layer.
inline void past_set(const CXBlock& b, const GateFlip& f, std::vector<LayeredGate>& out) {
  out.clear();
  QubitSet touched{f.gate.control, f.gate.target};
  for (std::size_t l = f.layer; l-- > 0;) {
    const std::size_t first = out.size();
    b.for_each_gate(l, [&](const CXGate& g) {
      if (touched.contains(g.control) || touched.contains(g.target)) out.push_back({l, g});
    });
    for (std::size_t i = first; i < out.size(); ++i) {
      touched.insert(out[i].gate.control);
      touched.insert(out[i].gate.target);
    }
  }
}

inline std::vector<LayeredGate> past_set(const CXBlock& b, const GateFlip& f) {
  std::vector<LayeredGate> out;
  past_set(b, f, out);
  return out;
}

/// C-dagger . p . C: conjugates a copy of p by every gate of the block, from
/// the outermost layer inwards to layer 0.
inline PhaseCircuit conjugate_full(PhaseCircuit p, const CXBlock& b) {
  for (std::size_t l = b.num_layers(); l-- > 0;)
    b.for_each_gate(l, [&](const CXGate& g) { p.conjugate_by_cx(g); });
  return p;
}

/// A block together with the phase circuit conjugated by it, kept in sync
/// under single-gate flips without recomputing the conjugation from scratch.
class ConjugatedState {
 public:
  ConjugatedState(PhaseCircuit original, Topology topo, std::size_t num_layers)
      : topo_(std::move(topo)),
        original_(std::move(original)),
        block_(original_.num_qubits(), num_layers),
        conjugated_(original_),
        tracker_(conjugated_, topo_) {
    if (original_.num_qubits() > topo_.num_qubits())
      throw std::invalid_argument("circuit has more qubits than the topology");
    if (original_.num_qubits() != topo_.num_qubits()) {
      // Pad the circuit to the topology width so block gates can use every qubit.
      PhaseCircuit widened(topo_.num_qubits());
      for (auto& g : original_.gadgets()) widened.add(std::move(g));
      original_ = widened;
      conjugated_ = original_;
      block_ = CXBlock(topo_.num_qubits(), num_layers);
      tracker_.reset(conjugated_);
    }
  }

  // The cost tracker points at topo_.
  ConjugatedState(const ConjugatedState&) = delete;
  ConjugatedState& operator=(const ConjugatedState&) = delete;

  [[nodiscard]] const Topology& topology() const { return topo_; }
  [[nodiscard]] const PhaseCircuit& original() const { return original_; }
  [[nodiscard]] const CXBlock& block() const { return block_; }
  [[nodiscard]] const PhaseCircuit& conjugated() const { return conjugated_; }

  /// circuit_cost(conjugated()), re-costing only gadgets changed since the
  /// previous call.
  unsigned conjugated_cost() { return tracker_.total(conjugated_); }

  /// Applies a valid nearest-neighbour flip: undo the past set from layer 0
  /// outwards, toggle the gate and conjugate by it, redo the past set from
  /// layer l-1 inwards. Throws std::invalid_argument, leaving the state
  /// untouched, for invalid or non-nearest-neighbour flips.
  void flip(const GateFlip& f) {
    if (!is_valid_flip(block_, f))
      throw std::invalid_argument("invalid gate flip");
    if (!topo_.adjacent(f.gate.control, f.gate.target))
      throw std::invalid_argument("gate flip is not nearest-neighbour");
    past_set(block_, f, past_);
    const auto mark = [this](PhaseCircuit::Column c) { tracker_.mark(c); };
    for (auto it = past_.rbegin(); it != past_.rend(); ++it) conjugated_.conjugate_by_cx(it->gate, mark);
    block_.toggle(f.layer, f.gate);
    conjugated_.conjugate_by_cx(f.gate, mark);
    for (const auto& lg : past_) conjugated_.conjugate_by_cx(lg.gate, mark);
  }

 private:
  Topology topo_;
  PhaseCircuit original_;
  CXBlock block_;
  PhaseCircuit conjugated_;
  CircuitCostTracker tracker_;
  std::vector<LayeredGate> past_;
};

}  // namespace pgopt
