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

#include <catch2/catch_amalgamated.hpp>
#include <complex>
#include <random>

#include "pgopt/oracle.hpp"

namespace pgopt {
namespace {

using oracle::Unitary;
using namespace std::complex_literals;

Unitary pauli(char p) {
  Unitary m(2, 2);
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'Z': m << 1, 0, 0, -1; break;
    case 'X': m << 0, 1, 1, 0; break;
    default: FAIL("bad pauli");
  }
  return m;
}

Unitary kron(const Unitary& a, const Unitary& b) {
  Unitary out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Pauli string; character q acts on qubit q (bit q of the basis index).
Unitary pauli_string(const std::string& s) {
  Unitary m = pauli(s[0]);
  for (std::size_t q = 1; q < s.size(); ++q) m = kron(pauli(s[q]), m);
  return m;
}

TEST_CASE("gadget unitaries", "[oracle]") {
  const auto zq = oracle::gadget_unitary({Basis::Z, Angle::pi_fraction(1, 2), {0}}, 1);
  Unitary expected(2, 2);
  expected << 1i, 0, 0, -1i;
  CHECK(oracle::compare(zq, expected, 1e-12).equivalent);

  const double theta = 3 * M_PI / 4;
  const auto zz = oracle::gadget_unitary({Basis::Z, Angle::pi_fraction(3, 4), {0, 1}}, 2);
  Unitary diag = Unitary::Zero(4, 4);
  diag(0, 0) = std::exp(1i * theta);
  diag(1, 1) = std::exp(-1i * theta);
  diag(2, 2) = std::exp(-1i * theta);
  diag(3, 3) = std::exp(1i * theta);
  CHECK(oracle::compare(zz, diag, 1e-12).equivalent);

  const auto xpi = oracle::gadget_unitary({Basis::X, Angle::pi_fraction(1), {0}}, 1);
  CHECK(oracle::compare(xpi, -Unitary::Identity(2, 2), 1e-12).equivalent);

  // cos(theta) I + i sin(theta) P against Kronecker-built Pauli strings.
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_circuit(4, 1, 1, 4, rng());
    const auto g = c.gadget(0);
    std::string s(4, 'I');
    g.legs.for_each([&](Qubit q) { s[q] = basis_char(g.basis); });
    const double t = g.angle.radians();
    const Unitary ref = std::cos(t) * Unitary::Identity(16, 16) + 1i * std::sin(t) * pauli_string(s);
    REQUIRE(oracle::compare(oracle::gadget_unitary(g, 4), ref, 1e-12).equivalent);
    REQUIRE(oracle::is_unitary(oracle::gadget_unitary(g, 4)));
  }
}

TEST_CASE("six CX conjugation identities", "[oracle]") {
  const Unitary cx = oracle::cx_unitary({0, 1}, 2);
  const std::pair<const char*, const char*> table[] = {
      {"ZI", "ZI"}, {"IZ", "ZZ"}, {"ZZ", "IZ"}, {"IX", "IX"}, {"XI", "XX"}, {"XX", "XI"}};
  for (const auto& [before, after] : table) {
    INFO(before << " -> " << after);
    CHECK(oracle::compare(cx * pauli_string(before) * cx, pauli_string(after), 1e-12).equivalent);
  }
}

TEST_CASE("circuit unitaries respect conjugation rewrites", "[oracle]") {
  CHECK(oracle::compare(oracle::circuit_unitary(PhaseCircuit(3)), oracle::identity(3), 0).equivalent);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    const auto c = random_circuit(n, rng() % 9, 1, n, rng());
    Qubit a = rng() % n, b = rng() % n;
    while (b == a) b = rng() % n;
    const Unitary cx = oracle::cx_unitary({a, b}, n);
    const Unitary u = oracle::circuit_unitary(c);
    REQUIRE(oracle::is_unitary(u));
    REQUIRE(oracle::compare(oracle::circuit_unitary(conjugate_by_cx(c, {a, b})), cx * u * cx, 1e-9)
                .equivalent);
  }
}

TEST_CASE("circuit order matters for mixed gadgets", "[oracle]") {
  PhaseCircuit zx(1), xz(1);
  const PhaseGadget z{Basis::Z, Angle::pi_fraction(1, 4), {0}};
  const PhaseGadget x{Basis::X, Angle::pi_fraction(1, 4), {0}};
  zx >>= z;
  zx >>= x;
  xz >>= x;
  xz >>= z;
  const Unitary expected = oracle::gadget_unitary(x, 1) * oracle::gadget_unitary(z, 1);
  CHECK(oracle::compare(oracle::circuit_unitary(zx), expected, 1e-12).equivalent);
  CHECK_FALSE(oracle::compare(oracle::circuit_unitary(xz), expected, 1e-6).equivalent);
}

TEST_CASE("block unitary applies layer 0 first", "[oracle]") {
  CXBlock b(3, 2);
  b.toggle(0, {0, 1});
  b.toggle(1, {1, 2});
  const Unitary expected = oracle::cx_unitary({1, 2}, 3) * oracle::cx_unitary({0, 1}, 3);
  CHECK(oracle::compare(oracle::block_unitary(b), expected, 0).equivalent);

  const auto p = random_circuit(3, 6, 1, 3, 9);
  const Unitary c = oracle::block_unitary(b);
  CHECK(oracle::compare(c * oracle::circuit_unitary(conjugate_full(p, b)) * c.adjoint(),
                        oracle::circuit_unitary(p), 1e-9)
            .equivalent);
}

TEST_CASE("equivalence comparison modes", "[oracle]") {
  const Unitary u = oracle::circuit_unitary(random_circuit(3, 5, 1, 3, 1));
  CHECK(oracle::compare(u, u, 1e-12).equivalent);
  CHECK_FALSE(oracle::compare(u, -u, 1e-12).equivalent);
  CHECK(oracle::compare(u, -u, 1e-12, true).equivalent);
  CHECK(oracle::compare(u, std::exp(0.3i) * u, 1e-12, true).equivalent);
  CHECK(oracle::compare(u, -u, 1e-12).max_deviation > 0.1);
  CHECK_FALSE(oracle::compare(u, oracle::identity(2), 1.0).equivalent);
}

TEST_CASE("oracle guards", "[oracle]") {
  CHECK_THROWS_AS(oracle::identity(13), ResourceLimitError);
  CHECK_THROWS_AS(oracle::gadget_unitary({Basis::Z, Angle::parameter("a"), {0}}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::gadget_unitary({Basis::Z, Angle{}, {3}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(oracle::cx_unitary({0, 2}, 2), std::invalid_argument);
}

}  // namespace
}  // namespace pgopt
