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
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgopt/angle.hpp"
#include "pgopt/qubit_set.hpp"

namespace pgopt {

enum class Basis : std::uint8_t { Z, X };

inline char basis_char(Basis b) { return b == Basis::Z ? 'Z' : 'X'; }

/// exp(i * angle * P) where P acts as the basis Pauli on every leg.
struct PhaseGadget {
  Basis basis = Basis::Z;
  Angle angle;
  QubitSet legs;

  friend bool operator==(const PhaseGadget&, const PhaseGadget&) = default;
};

/// CX with a Z qubit (control) and an X qubit (target).
struct CXGate {
  Qubit control = 0;
  Qubit target = 0;

  friend bool operator==(const CXGate&, const CXGate&) = default;
  friend auto operator<=>(const CXGate&, const CXGate&) = default;
};

/// Mixed circuit of Z and X phase gadgets.
///
/// Legs are kept as two column families, one per basis, each column a leg
/// bitset; two position lists map columns back to circuit order, and angles
/// are kept per circuit position. Conjugation only ever touches the leg
/// columns; order and angles are fixed once a gadget is appended.
class PhaseCircuit {
 public:
  /// Identifies one leg column: its basis and index within that family.
  struct Column {
    Basis basis;
    std::size_t index;
  };

  PhaseCircuit() = default;
  explicit PhaseCircuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0) throw std::invalid_argument("phase circuit needs at least one qubit");
    if (num_qubits > QubitSet::kCapacity)
      throw std::invalid_argument("phase circuit exceeds the supported qubit count");
  }

  void add(PhaseGadget g) {
    if (g.legs.empty()) throw std::invalid_argument("phase gadget must have at least one leg");
    if (g.legs.extent() > num_qubits_) throw std::invalid_argument("gadget leg out of range");
    const std::size_t pos = angles_.size();
    if (g.basis == Basis::Z) {
      order_.push_back({Basis::Z, z_legs_.size()});
      z_legs_.push_back(g.legs);
      z_pos_.push_back(pos);
    } else {
      order_.push_back({Basis::X, x_legs_.size()});
      x_legs_.push_back(g.legs);
      x_pos_.push_back(pos);
    }
    angles_.push_back(std::move(g.angle));
  }

  PhaseCircuit& operator>>=(PhaseGadget g) {
    add(std::move(g));
    return *this;
  }

  [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
  [[nodiscard]] std::size_t size() const { return angles_.size(); }
  [[nodiscard]] bool empty() const { return angles_.empty(); }

  [[nodiscard]] PhaseGadget gadget(std::size_t pos) const {
    const Column c = order_.at(pos);
    return {c.basis, angles_[pos], legs(c)};
  }

  [[nodiscard]] std::vector<PhaseGadget> gadgets() const {
    std::vector<PhaseGadget> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(gadget(i));
    return out;
  }

  [[nodiscard]] const QubitSet& legs(Column c) const {
    return c.basis == Basis::Z ? z_legs_[c.index] : x_legs_[c.index];
  }
  [[nodiscard]] const std::vector<QubitSet>& z_legs() const { return z_legs_; }
  [[nodiscard]] const std::vector<QubitSet>& x_legs() const { return x_legs_; }
  [[nodiscard]] const std::vector<std::size_t>& z_positions() const { return z_pos_; }
  [[nodiscard]] const std::vector<std::size_t>& x_positions() const { return x_pos_; }
  [[nodiscard]] const std::vector<Angle>& angles() const { return angles_; }

  /// Replaces this circuit by CX . this . CX.
  ///
  /// Z gadgets with the target among their legs toggle the control; X gadgets
  /// with the control among their legs toggle the target. `on_change` is
  /// called with the Column of every gadget whose legs changed.
  template <typename OnChange>
  void conjugate_by_cx(const CXGate& g, OnChange&& on_change) {
    if (g.control == g.target) throw std::invalid_argument("CX control equals target");
    if (g.control >= num_qubits_ || g.target >= num_qubits_)
      throw std::invalid_argument("CX qubit out of range");
    for (std::size_t i = 0; i < z_legs_.size(); ++i) {
      if (z_legs_[i].contains(g.target)) {
        z_legs_[i].toggle(g.control);
        on_change(Column{Basis::Z, i});
      }
    }
    for (std::size_t i = 0; i < x_legs_.size(); ++i) {
      if (x_legs_[i].contains(g.control)) {
        x_legs_[i].toggle(g.target);
        on_change(Column{Basis::X, i});
      }
    }
  }

  void conjugate_by_cx(const CXGate& g) {
    conjugate_by_cx(g, [](Column) {});
  }

  friend bool operator==(const PhaseCircuit& a, const PhaseCircuit& b) {
    return a.num_qubits_ == b.num_qubits_ && a.z_legs_ == b.z_legs_ && a.x_legs_ == b.x_legs_ &&
           a.z_pos_ == b.z_pos_ && a.x_pos_ == b.x_pos_ && a.angles_ == b.angles_;
  }

 private:
  std::size_t num_qubits_ = 1;
  std::vector<QubitSet> z_legs_;
  std::vector<QubitSet> x_legs_;
  std::vector<std::size_t> z_pos_;
  std::vector<std::size_t> x_pos_;
  std::vector<Angle> angles_;
  std::vector<Column> order_;
};

/// Free-function form of PhaseCircuit::conjugate_by_cx.
inline PhaseCircuit conjugate_by_cx(PhaseCircuit c, const CXGate& g) {
  c.conjugate_by_cx(g);
  return c;
}

/// Random mixed circuit. Each gadget independently gets a uniform basis, a
/// leg count uniform in [min_legs, max_legs], a uniform subset of qubits of
/// that size, and an angle k*pi/4 with k uniform in 1..7.
inline PhaseCircuit random_circuit(std::size_t num_qubits, std::size_t num_gadgets,
                                   std::size_t min_legs, std::size_t max_legs,
                                   std::uint64_t seed) {
  if (min_legs < 1 || min_legs > max_legs || max_legs > num_qubits)
    throw std::invalid_argument("random circuit needs 1 <= min_legs <= max_legs <= num_qubits");
  PhaseCircuit circuit(num_qubits);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> basis_dist(0, 1);
  std::uniform_int_distribution<std::size_t> count_dist(min_legs, max_legs);
  std::uniform_int_distribution<std::int64_t> angle_dist(1, 7);
  std::vector<Qubit> all(num_qubits);
  std::iota(all.begin(), all.end(), Qubit{0});
  std::vector<Qubit> chosen;
  for (std::size_t k = 0; k < num_gadgets; ++k) {
    const Basis basis = basis_dist(rng) == 0 ? Basis::Z : Basis::X;
    const std::size_t count = count_dist(rng);
    chosen.clear();
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), count, rng);
    circuit.add({basis, Angle::pi_fraction(angle_dist(rng), 4), QubitSet::from_range(chosen)});
  }
  return circuit;
}

/// The seven Z gadgets whose product is CCZ on (a, b, c) up to global phase:
/// -pi/8 on each single qubit and on the triple, +pi/8 on each pair.
inline std::vector<PhaseGadget> ccz(Qubit a, Qubit b, Qubit c) {
  if (a == b || a == c || b == c) throw std::invalid_argument("ccz qubits must be distinct");
  const Angle minus = Angle::pi_fraction(-1, 8);
  const Angle plus = Angle::pi_fraction(1, 8);
  return {
      {Basis::Z, minus, {a}},       {Basis::Z, minus, {b}},       {Basis::Z, minus, {c}},
      {Basis::Z, plus, {a, b}},     {Basis::Z, plus, {a, c}},     {Basis::Z, plus, {b, c}},
      {Basis::Z, minus, {a, b, c}},
  };
}

/// Binary-matrix view of a circuit: leg matrices with one row per qubit and
/// one column per gadget of the given basis, column-to-position lists, and
/// angles in circuit order.
struct BinaryForm {
  std::size_t num_qubits = 1;
  std::vector<std::vector<std::uint8_t>> z_matrix;  // num_qubits rows x m_z
  std::vector<std::vector<std::uint8_t>> x_matrix;  // num_qubits rows x m_x
  std::vector<std::size_t> z_positions;
  std::vector<std::size_t> x_positions;
  std::vector<Angle> angles;

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

inline BinaryForm encode(const PhaseCircuit& c) {
  BinaryForm f;
  f.num_qubits = c.num_qubits();
  const auto fill = [&](const std::vector<QubitSet>& cols) {
    std::vector<std::vector<std::uint8_t>> m(c.num_qubits(),
                                             std::vector<std::uint8_t>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j].for_each([&](Qubit q) { m[q][j] = 1; });
    return m;
  };
  f.z_matrix = fill(c.z_legs());
  f.x_matrix = fill(c.x_legs());
  f.z_positions = c.z_positions();
  f.x_positions = c.x_positions();
  f.angles = c.angles();
  return f;
}

/// Inverse of encode(); rejects inconsistent dimensions, position lists that
/// are not an increasing partition of 0..m-1, non-binary entries and
/// leg-less columns.
inline PhaseCircuit decode(const BinaryForm& f) {
  const std::size_t n = f.num_qubits;
  const std::size_t mz = f.z_positions.size();
  const std::size_t mx = f.x_positions.size();
  const std::size_t m = f.angles.size();
  if (mz + mx != m) throw std::invalid_argument("position lists do not match angle count");
  const auto check_matrix = [&](const auto& mat, std::size_t cols, const char* name) {
    if (mat.size() != n && !(cols == 0 && mat.empty()))
      throw std::invalid_argument(std::string(name) + " has wrong row count");
    for (const auto& row : mat) {
      if (row.size() != cols) throw std::invalid_argument(std::string(name) + " has wrong column count");
      for (auto v : row)
        if (v > 1) throw std::invalid_argument(std::string(name) + " is not binary");
    }
  };
  check_matrix(f.z_matrix, mz, "Z leg matrix");
  check_matrix(f.x_matrix, mx, "X leg matrix");
  const auto increasing = [](const std::vector<std::size_t>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!increasing(f.z_positions) || !increasing(f.x_positions))
    throw std::invalid_argument("position lists must be strictly increasing");
  std::vector<int> slot(m, -1);
  for (std::size_t j = 0; j < mz; ++j) {
    if (f.z_positions[j] >= m || slot[f.z_positions[j]] != -1)
      throw std::invalid_argument("position lists do not partition the circuit");
    slot[f.z_positions[j]] = static_cast<int>(j);
  }
  for (std::size_t j = 0; j < mx; ++j) {
    if (f.x_positions[j] >= m || slot[f.x_positions[j]] != -1)
      throw std::invalid_argument("position lists do not partition the circuit");
    slot[f.x_positions[j]] = static_cast<int>(mz + j);
  }
  PhaseCircuit c(n);
  for (std::size_t pos = 0; pos < m; ++pos) {
    const auto s = static_cast<std::size_t>(slot[pos]);
    const bool is_z = s < mz;
    const auto& mat = is_z ? f.z_matrix : f.x_matrix;
    const std::size_t col = is_z ? s : s - mz;
    QubitSet legs;
    for (Qubit q = 0; q < n; ++q)
      if (mat[q][col] != 0) legs.insert(q);
    if (legs.empty()) throw std::invalid_argument("leg matrix column has no legs");
    c.add({is_z ? Basis::Z : Basis::X, f.angles[pos], legs});
  }
  return c;
}

}  // namespace pgopt
