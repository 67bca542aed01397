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

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace pgopt {

using Qubit = std::size_t;

/// Fixed-width set of qubit indices backed by 64-bit words.
///
/// Leg sets of phase gadgets are stored this way so that the CX conjugation
/// rules reduce to single-bit tests and toggles, and so that leg sets can be
/// hashed cheaply as cache keys.
template <std::size_t Words>
class BasicQubitSet {
 public:
  static constexpr std::size_t kCapacity = Words * 64;

  constexpr BasicQubitSet() = default;

  BasicQubitSet(std::initializer_list<Qubit> qubits) {
    for (Qubit q : qubits) insert(q);
  }

  template <typename Range>
  static BasicQubitSet from_range(const Range& qubits) {
    BasicQubitSet s;
    for (auto q : qubits) s.insert(static_cast<Qubit>(q));
    return s;
  }

  [[nodiscard]] bool contains(Qubit q) const {
    check(q);
    return (words_[q >> 6] >> (q & 63)) & 1U;
  }
  void insert(Qubit q) {
    check(q);
    words_[q >> 6] |= bit(q);
  }
  void erase(Qubit q) {
    check(q);
    words_[q >> 6] &= ~bit(q);
  }
  void toggle(Qubit q) {
    check(q);
    words_[q >> 6] ^= bit(q);
  }

  [[nodiscard]] std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  [[nodiscard]] bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  /// Smallest element; the set must be non-empty.
  [[nodiscard]] Qubit front() const {
    for (std::size_t i = 0; i < Words; ++i)
      if (words_[i] != 0)
        return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    throw std::out_of_range("front() of empty qubit set");
  }

  /// Largest element plus one, or zero for the empty set.
  [[nodiscard]] std::size_t extent() const {
    for (std::size_t i = Words; i-- > 0;)
      if (words_[i] != 0)
        return i * 64 + 64 - static_cast<std::size_t>(std::countl_zero(words_[i]));
    return 0;
  }

  /// Calls fn(q) for each member in ascending order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < Words; ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        fn(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  [[nodiscard]] std::vector<Qubit> to_vector() const {
    std::vector<Qubit> out;
    out.reserve(size());
    for_each([&](Qubit q) { out.push_back(q); });
    return out;
  }

  [[nodiscard]] const std::array<std::uint64_t, Words>& words() const {
    return words_;
  }

  friend bool operator==(const BasicQubitSet&, const BasicQubitSet&) = default;

  /// Lexicographic on the sorted member lists.
  friend bool operator<(const BasicQubitSet& a, const BasicQubitSet& b) {
    return a.to_vector() < b.to_vector();
  }

 private:
  static constexpr std::uint64_t bit(Qubit q) { return std::uint64_t{1} << (q & 63); }
  static void check(Qubit q) {
    if (q >= kCapacity) throw std::out_of_range("qubit index exceeds qubit set capacity");
  }

  std::array<std::uint64_t, Words> words_{};
};

/// Maximum supported qubit count is QubitSet::kCapacity (256).
using QubitSet = BasicQubitSet<4>;

}  // namespace pgopt

template <std::size_t Words>
struct std::hash<pgopt::BasicQubitSet<Words>> {
  std::size_t operator()(const pgopt::BasicQubitSet<Words>& s) const noexcept {
    // splitmix64-style mixing of each word
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : s.words()) {
      std::uint64_t z = w + h;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      h ^= z ^ (z >> 31);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};
