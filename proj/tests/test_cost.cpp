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
#include <random>

#include "pgopt/cost.hpp"
#include "pgopt/oracle.hpp"
#include "support/brute_force.hpp"

namespace pgopt {
namespace {

TEST_CASE("worked 3x3 grid gadget costs 10", "[cost]") {
  const auto grid = Topology::grid(3, 3);
  const auto cost = gadget_cost(QubitSet{0, 3, 5, 6}, grid);
  CHECK(cost.value == 10);
  CHECK(cost.root == 0);
  CHECK(cost.mst_edges ==
        std::vector<MstEdge>{{0, 3, 1}, {3, 6, 1}, {3, 5, 2}});
  unsigned sum = 0;
  for (const auto& e : cost.mst_edges) sum += edge_weight(e.distance);
  CHECK(sum == cost.value);
}

TEST_CASE("small gadget costs", "[cost]") {
  const auto grid = Topology::grid(3, 3);
  CHECK(gadget_cost(QubitSet{4}, grid).value == 0);
  CHECK(gadget_cost(QubitSet{4}, grid).mst_edges.empty());
  CHECK(gadget_cost(QubitSet{0, 8}, grid).value == 14);
  CHECK(gadget_cost(QubitSet{0, 1}, grid).value == 2);
  CHECK(circuit_cost(PhaseCircuit(9), grid) == 0);

  PhaseCircuit one(9);
  one.add({Basis::X, Angle::parameter("t"), {0, 3, 5, 6}});
  CHECK(circuit_cost(one, grid) == 10);
}

TEST_CASE("Prim matches brute force over all spanning trees", "[cost]") {
  std::mt19937_64 rng(11);
  for (const auto& topo : {Topology::grid(3, 3), Topology::grid(4, 5), Topology::cycle(7),
                           Topology::line(8)}) {
    const std::size_t n = topo.num_qubits();
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(6, n))(rng);
      std::vector<Qubit> all(n);
      std::iota(all.begin(), all.end(), Qubit{0});
      std::vector<Qubit> legs;
      std::sample(all.begin(), all.end(), std::back_inserter(legs), k, rng);
      const long expected = testing::brute_force_mst(legs, [&](Qubit a, Qubit b) {
        return long(4 * topo.distance(a, b) - 2);
      });
      const auto cost = gadget_cost(QubitSet::from_range(legs), topo);
      REQUIRE(long(cost.value) == expected);
      REQUIRE(cost.value % 2 == 0);
      REQUIRE(cost.mst_edges.size() == k - 1);
      REQUIRE(mst_cost(QubitSet::from_range(legs), topo) == cost.value);
    }
  }
}

TEST_CASE("adding an adjacent leg raises cost by at most 2", "[cost]") {
  const auto topo = Topology::grid(4, 4);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = random_circuit(16, 1, 1, 5, rng());
    QubitSet legs = c.gadget(0).legs;
    const unsigned before = mst_cost(legs, topo);
    const auto members = legs.to_vector();
    const Qubit anchor = members[rng() % members.size()];
    for (Qubit nb : topo.neighbours(anchor)) {
      if (legs.contains(nb)) continue;
      QubitSet bigger = legs;
      bigger.insert(nb);
      CHECK(mst_cost(bigger, topo) <= before + 2);
    }
  }
}

TEST_CASE("circuit cost is the sum of gadget costs", "[cost]") {
  const auto topo = Topology::grid(4, 4);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto c = random_circuit(16, 20, 1, 5, seed);
    unsigned sum = 0;
    for (const auto& g : c.gadgets()) sum += gadget_cost(g, topo).value;
    REQUIRE(circuit_cost(c, topo) == sum);
  }
}

TEST_CASE("cost cache and tracker agree with direct costing", "[cost]") {
  const auto topo = Topology::grid(3, 4);
  auto c = random_circuit(12, 15, 1, 4, 99);
  GadgetCostCache cache(topo, 8);
  for (const auto& g : c.gadgets()) CHECK(cache(g.legs) == mst_cost(g.legs, topo));
  CHECK(cache.size() <= 8);

  CircuitCostTracker tracker(c, topo);
  CHECK(tracker.total(c) == circuit_cost(c, topo));
  std::mt19937_64 rng(1);
  for (int step = 0; step < 200; ++step) {
    const auto& [a, b] = topo.edges()[rng() % topo.edges().size()];
    const CXGate g = rng() % 2 ? CXGate{a, b} : CXGate{b, a};
    c.conjugate_by_cx(g, [&](PhaseCircuit::Column col) { tracker.mark(col); });
    REQUIRE(tracker.total(c) == circuit_cost(c, topo));
  }
}

TEST_CASE("compiled gadgets use nearest-neighbour CX and match the cost", "[cost]") {
  const auto grid = Topology::grid(3, 3);
  const PhaseGadget g{Basis::Z, Angle::parameter("theta"), {0, 3, 5, 6}};
  const auto ops = compile_gadget(g, grid);
  CHECK(cx_count(ops) == 10);
  std::size_t rotations = 0;
  for (const auto& op : ops) {
    if (const auto* cx = std::get_if<CXGate>(&op)) {
      CHECK(grid.adjacent(cx->control, cx->target));
    } else {
      ++rotations;
      CHECK(std::get<Rotation>(op).qubit == 0);
    }
  }
  CHECK(rotations == 1);

  const auto single = compile_gadget({Basis::X, Angle::pi_fraction(1, 4), {7}}, grid);
  REQUIRE(single.size() == 1);
  CHECK(std::get<Rotation>(single[0]) == Rotation{Basis::X, Angle::pi_fraction(1, 4), 7});
}

TEST_CASE("compiled gadget unitaries equal gadget unitaries exactly", "[cost][oracle]") {
  std::mt19937_64 rng(3);
  const Topology topologies[] = {Topology::line(5), Topology::cycle(5), Topology::grid(2, 2),
                                 Topology::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}),
                                 Topology::line(3)};
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Topology& topo = topologies[trial % 5];
    const std::size_t n = topo.num_qubits();
    const auto c = random_circuit(n, 1, 1, n, rng());
    const PhaseGadget g = c.gadget(0);
    const auto ops = compile_gadget(g, topo);
    REQUIRE(cx_count(ops) == gadget_cost(g, topo).value);
    const auto cmp = oracle::compare(oracle::compiled_unitary(ops, n), oracle::gadget_unitary(g, n), 1e-9);
    INFO("gadget legs " << g.legs.size() << " deviation " << cmp.max_deviation);
    REQUIRE(cmp.equivalent);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("compiled long-range gadgets on larger grids", "[cost][oracle]") {
  // 3x3 grid: distances up to 4, paths crossing non-leg qubits.
  const auto grid = Topology::grid(3, 3);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = random_circuit(9, 1, 2, 5, rng());
    const auto ops = compile_gadget(c.gadget(0), grid);
    REQUIRE(cx_count(ops) == mst_cost(c.gadget(0).legs, grid));
    REQUIRE(oracle::compare(oracle::compiled_unitary(ops, 9), oracle::gadget_unitary(c.gadget(0), 9), 1e-9)
                .equivalent);
  }
}

}  // namespace
}  // namespace pgopt
