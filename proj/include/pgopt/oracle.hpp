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

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "pgopt/anneal.hpp"
#include "pgopt/block.hpp"
#include "pgopt/circuit.hpp"
#include "pgopt/cost.hpp"
#include "pgopt/errors.hpp"

// Dense-matrix reference semantics for small circuits. Qubit q is bit q of
// the computational basis index.
namespace pgopt::oracle {

using Unitary = Eigen::MatrixXcd;

inline constexpr std::size_t kMaxQubits = 12;

namespace detail {

inline std::size_t dimension(std::size_t n) {
  if (n > kMaxQubits) throw ResourceLimitError("oracle is limited to 12 qubits");
  return std::size_t{1} << n;
}

inline std::uint64_t mask_of(const QubitSet& legs, std::size_t n) {
  if (legs.extent() > n) throw std::invalid_argument("gadget leg outside oracle register");
  std::uint64_t m = 0;
  legs.for_each([&](Qubit q) { m |= std::uint64_t{1} << q; });
  return m;
}

/// u <- exp(i theta P) u, where P is Z or X on the qubits of `mask`.
inline void apply_pauli_exp(Unitary& u, Basis basis, std::uint64_t mask, double theta) {
  const std::complex<double> c{std::cos(theta), 0.0};
  const std::complex<double> is{0.0, std::sin(theta)};
  const auto dim = static_cast<std::uint64_t>(u.rows());
  if (basis == Basis::Z) {
    for (std::uint64_t r = 0; r < dim; ++r) {
      const double sign = (std::popcount(r & mask) & 1) != 0 ? -1.0 : 1.0;
      u.row(static_cast<Eigen::Index>(r)) *= c + is * sign;
    }
  } else {
    for (std::uint64_t r = 0; r < dim; ++r) {
      const std::uint64_t s = r ^ mask;
      if (s < r) continue;
      const auto ri = static_cast<Eigen::Index>(r);
      const auto si = static_cast<Eigen::Index>(s);
      const Eigen::RowVectorXcd a = u.row(ri);
      const Eigen::RowVectorXcd b = u.row(si);
      u.row(ri) = c * a + is * b;
      u.row(si) = c * b + is * a;
    }
  }
}

/// u <- CX u.
inline void apply_cx(Unitary& u, const CXGate& g) {
  const auto dim = static_cast<std::uint64_t>(u.rows());
  if (g.control == g.target || (std::uint64_t{1} << g.control) >= dim ||
      (std::uint64_t{1} << g.target) >= dim)
    throw std::invalid_argument("CX outside oracle register");
  const std::uint64_t cbit = std::uint64_t{1} << g.control;
  const std::uint64_t tbit = std::uint64_t{1} << g.target;
  for (std::uint64_t r = 0; r < dim; ++r) {
    if ((r & cbit) != 0 && (r & tbit) == 0)
      u.row(static_cast<Eigen::Index>(r)).swap(u.row(static_cast<Eigen::Index>(r | tbit)));
  }
}

}  // namespace detail

inline Unitary identity(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(detail::dimension(n));
  return Unitary::Identity(dim, dim);
}

/// exp(i theta P) = cos(theta) I + i sin(theta) P, using P^2 = I.
inline Unitary gadget_unitary(const PhaseGadget& g, std::size_t n) {
  Unitary u = identity(n);
  detail::apply_pauli_exp(u, g.basis, detail::mask_of(g.legs, n), g.angle.radians());
  return u;
}

inline Unitary cx_unitary(const CXGate& g, std::size_t n) {
  Unitary u = identity(n);
  detail::apply_cx(u, g);
  return u;
}

/// Product of the gadget unitaries, the first gadget acting first.
inline Unitary circuit_unitary(const PhaseCircuit& c) {
  Unitary u = identity(c.num_qubits());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const PhaseGadget g = c.gadget(i);
    detail::apply_pauli_exp(u, g.basis, detail::mask_of(g.legs, c.num_qubits()), g.angle.radians());
  }
  return u;
}

/// The block C as an operator: layer 0 acts first, the outermost layer
/// last, so that conjugate_full(p, C) has unitary C-dagger . U(p) . C.
inline Unitary block_unitary(const CXBlock& b) {
  Unitary u = identity(b.num_qubits());
  for (std::size_t l = 0; l < b.num_layers(); ++l)
    b.for_each_gate(l, [&](const CXGate& g) { detail::apply_cx(u, g); });
  return u;
}

inline Unitary compiled_unitary(const std::vector<CompiledOp>& ops, std::size_t n) {
  Unitary u = identity(n);
  for (const auto& op : ops) {
    if (const auto* g = std::get_if<CXGate>(&op)) {
      detail::apply_cx(u, *g);
    } else {
      const auto& r = std::get<Rotation>(op);
      detail::apply_pauli_exp(u, r.basis, std::uint64_t{1} << r.qubit, r.angle.radians());
    }
  }
  return u;
}

struct Comparison {
  bool equivalent = false;
  double max_deviation = 0.0;
};

/// max |U - V| <= tol, or max |U - e^{i phi} V| <= tol with phi aligning the
/// largest-magnitude entry of V to U when up_to_global_phase is set.
inline Comparison compare(const Unitary& u, const Unitary& v, double tol,
                          bool up_to_global_phase = false) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) return {false, std::numeric_limits<double>::infinity()};
  std::complex<double> phase{1.0, 0.0};
  if (up_to_global_phase && v.size() > 0) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    v.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(v(r, c)) > 0.0 && std::abs(u(r, c)) > 0.0)
      phase = (u(r, c) / std::abs(u(r, c))) / (v(r, c) / std::abs(v(r, c)));
  }
  const double dev = u.size() == 0 ? 0.0 : (u - phase * v).cwiseAbs().maxCoeff();
  return {dev <= tol, dev};
}

inline bool is_unitary(const Unitary& u, double tol = 1e-9) {
  const auto dim = u.rows();
  return ((u * u.adjoint()) - Unitary::Identity(dim, dim)).cwiseAbs().maxCoeff() <= tol;
}

/// Checks U(C) . U(P') . U(C)-dagger = U(P) for an optimised triple.
inline Comparison verify(const OptimizedCircuit& opt, double tol = 1e-9) {
  const Unitary c = block_unitary(opt.block);
  const Unitary lhs = c * circuit_unitary(opt.conjugated) * c.adjoint();
  return compare(lhs, circuit_unitary(opt.original), tol);
}

}  // namespace pgopt::oracle
