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

#include "pgopt/io.hpp"
#include "pgopt/oracle.hpp"

namespace pgopt {
namespace {

TEST_CASE("topology JSON", "[io]") {
  const auto g = Topology::grid(2, 3);
  CHECK(io::topology_from_json(io::to_json(g)) == g);
  const auto j = io::Json::parse(R"({"qubits": 3, "edges": [[0, 1], [2, 1]]})");
  CHECK(io::topology_from_json(j) == Topology::line(3));
  CHECK_THROWS_AS(io::topology_from_json(io::Json::parse(R"({"qubits": 3, "edges": [[0, 1]]})")),
                  InputError);
  CHECK_THROWS_AS(io::topology_from_json(io::Json::parse(R"({"edges": []})")), InputError);
  CHECK_THROWS_AS(io::topology_from_json(io::Json::parse(R"({"qubits": 2, "edges": [[0]]})")),
                  InputError);
  CHECK(io::load_topology("grid:3x3") == Topology::grid(3, 3));
  CHECK_THROWS_AS(io::load_topology("/no/such/file.json"), InputError);
}

TEST_CASE("circuit JSON", "[io]") {
  const auto j = io::Json::parse(R"({
    "qubits": 3,
    "gadgets": [
      {"basis": "Z", "angle": "1/2 pi", "legs": [0, 1]},
      {"basis": "X", "angle": {"param": "theta"}, "legs": [2]},
      {"basis": "X", "angle": {"param": "phi", "coeff": "-1/2"}, "legs": [1, 2]}
    ]})");
  const auto c = io::circuit_from_json(j);
  CHECK(c.size() == 3);
  CHECK(c.gadget(0) == PhaseGadget{Basis::Z, Angle::pi_fraction(1, 2), {0, 1}});
  CHECK(c.gadget(1).angle == Angle::parameter("theta"));
  CHECK(c.gadget(2).angle == Angle::parameter("phi", {-1, 2}));
  CHECK(io::circuit_from_json(io::to_json(c)) == c);
  CHECK(io::dump(io::to_json(c)) == io::dump(io::to_json(io::circuit_from_json(io::to_json(c)))));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto r = random_circuit(6, 10, 1, 4, seed);
    REQUIRE(io::circuit_from_json(io::Json::parse(io::dump(io::to_json(r)))) == r);
  }

  const auto bad = [](const char* text) { return io::circuit_from_json(io::Json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"qubits": 2, "gadgets": [{"basis": "Y", "angle": "0", "legs": [0]}]})"), InputError);
  CHECK_THROWS_AS(bad(R"({"qubits": 2, "gadgets": [{"basis": "Z", "angle": "0", "legs": [2]}]})"), InputError);
  CHECK_THROWS_AS(bad(R"({"qubits": 2, "gadgets": [{"basis": "Z", "angle": "0", "legs": []}]})"), InputError);
  CHECK_THROWS_AS(bad(R"({"qubits": 2, "gadgets": [{"basis": "Z", "angle": "x", "legs": [0]}]})"), InputError);
  CHECK_THROWS_AS(bad(R"({"qubits": 2, "gadgets": [{"basis": "Z", "angle": 1.5, "legs": [0]}]})"), InputError);
  CHECK_THROWS_AS(bad(R"({"qubits": 0, "gadgets": []})"), InputError);
  CHECK_THROWS_AS(bad(R"({"qubits": 2})"), InputError);
  CHECK_THROWS_AS(io::parse_json("{", "test"), InputError);
}

TEST_CASE("optimised circuit JSON", "[io]") {
  const auto topo = Topology::line(4);
  AnnealConfig cfg;
  cfg.iterations = 300;
  cfg.repetitions = 3;
  const auto opt = anneal(random_circuit(4, 6, 1, 3, 2), topo, cfg);
  const auto text = io::dump(io::to_json(opt));
  const auto back = io::optimized_from_json(io::Json::parse(text));
  CHECK(back.block == opt.block);
  CHECK(back.conjugated == opt.conjugated);
  CHECK(back.original == opt.original);
  CHECK(back.repetitions == 3);
  CHECK(back.final_cost == opt.final_cost);
  CHECK(io::dump(io::to_json(back)) == text);

  // Keys in a fixed order.
  const auto j = io::to_json(opt);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"original", "block", "conjugated", "repetitions", "final_cost"});

  auto broken = io::Json::parse(text);
  broken["block"]["layers"][0] = io::Json::parse(R"([{"control": 0, "target": 1}, {"control": 1, "target": 2}])");
  CHECK_THROWS_AS(io::optimized_from_json(broken), InputError);
}

TEST_CASE("trace CSV", "[io]") {
  const std::vector<TraceRecord> trace{{0, 10.0, 4, true, 24, 20}, {1, 9.5, -2, false, 24, 20}};
  CHECK(io::trace_csv(trace) == "iter,temp,delta,accepted,cost,best_cost\n0,10,4,1,24,20\n1,9.5,-2,0,24,20\n");
}

TEST_CASE("compiled output", "[io]") {
  const auto grid = Topology::grid(3, 3);
  PhaseCircuit c(9);
  c.add({Basis::Z, Angle::pi_fraction(1, 4), {0, 3, 5, 6}});
  c.add({Basis::X, Angle::pi_fraction(1), {4}});
  const auto j = io::compiled_to_json(c, grid);
  CHECK(j["cx_count"] == 10);
  CHECK(j["gadgets"][1]["ops"].size() == 1);

  const auto qasm = io::compiled_to_qasm(c, grid);
  CHECK(qasm.find("OPENQASM 2.0;") != std::string::npos);
  CHECK(qasm.find("rz(-1*pi/2) q[0];") != std::string::npos);
  CHECK(qasm.find("rx(-2*pi) q[4];") != std::string::npos);
  std::size_t cx_lines = 0;
  for (std::size_t pos = qasm.find("\ncx "); pos != std::string::npos; pos = qasm.find("\ncx ", pos + 1))
    ++cx_lines;
  CHECK(cx_lines == 10);

  PhaseCircuit symbolic(2);
  symbolic.add({Basis::Z, Angle::parameter("t"), {0, 1}});
  CHECK_THROWS_AS(io::compiled_to_qasm(symbolic, Topology::line(2)), std::invalid_argument);
  CHECK_NOTHROW(io::compiled_to_json(symbolic, Topology::line(2)));
}

}  // namespace
}  // namespace pgopt
