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

#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgopt/anneal.hpp"
#include "pgopt/block.hpp"
#include "pgopt/circuit.hpp"
#include "pgopt/cost.hpp"
#include "pgopt/errors.hpp"
#include "pgopt/topology.hpp"

// JSON, CSV and QASM serialisation. Writers use ordered keys so that equal
// inputs give byte-identical files.
namespace pgopt::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("bad value for '") + what + "'");
  }
}

inline Rational parse_rational(const std::string& s) {
  try {
    return Rational::parse(s);
  } catch (const std::invalid_argument&) {
    throw InputError("bad rational '" + s + "'");
  }
}

}  // namespace detail

// ---------------------------------------------------------------- topology

inline Json to_json(const Topology& t) {
  Json edges = Json::array();
  for (const auto& [a, b] : t.edges()) edges.push_back({a, b});
  return Json{{"qubits", t.num_qubits()}, {"edges", std::move(edges)}};
}

inline Topology topology_from_json(const Json& j) {
  const auto n = detail::get<std::size_t>(detail::field(j, "qubits"), "qubits");
  std::vector<Topology::Edge> edges;
  for (const auto& e : detail::field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw InputError("edge must be a pair of qubits");
    edges.emplace_back(detail::get<Qubit>(e[0], "edges"), detail::get<Qubit>(e[1], "edges"));
  }
  try {
    return Topology::from_edges(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

// ----------------------------------------------------------------- angles

inline Json to_json(const Angle& a) {
  if (a.is_concrete()) return a.to_string();
  const auto& p = a.param();
  Json j{{"param", p.name}};
  if (!(p.coeff == Rational{1, 1}))
    j["coeff"] = std::to_string(p.coeff.num) + "/" + std::to_string(p.coeff.den);
  return j;
}

inline Angle angle_from_json(const Json& j) {
  try {
    if (j.is_string()) return Angle::parse(j.get<std::string>());
    if (j.is_object()) {
      const auto name = detail::get<std::string>(detail::field(j, "param"), "param");
      Rational coeff{1, 1};
      if (j.contains("coeff")) coeff = detail::parse_rational(detail::get<std::string>(j["coeff"], "coeff"));
      return Angle::parameter(name, coeff);
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("angle must be a string or a {\"param\": name} object");
}

// ---------------------------------------------------------------- circuits

inline Json to_json(const PhaseCircuit& c) {
  Json gadgets = Json::array();
  for (const auto& g : c.gadgets()) {
    gadgets.push_back(Json{{"basis", std::string(1, basis_char(g.basis))},
                           {"angle", to_json(g.angle)},
                           {"legs", g.legs.to_vector()}});
  }
  return Json{{"qubits", c.num_qubits()}, {"gadgets", std::move(gadgets)}};
}

inline PhaseCircuit circuit_from_json(const Json& j) {
  const auto n = detail::get<std::size_t>(detail::field(j, "qubits"), "qubits");
  try {
    PhaseCircuit c(n);
    for (const auto& g : detail::field(j, "gadgets")) {
      const auto basis = detail::get<std::string>(detail::field(g, "basis"), "basis");
      if (basis != "Z" && basis != "X") throw InputError("basis must be \"Z\" or \"X\"");
      const auto legs = detail::get<std::vector<Qubit>>(detail::field(g, "legs"), "legs");
      for (Qubit q : legs)
        if (q >= n) throw InputError("gadget leg out of range");
      c.add({basis == "Z" ? Basis::Z : Basis::X, angle_from_json(detail::field(g, "angle")),
             QubitSet::from_range(legs)});
    }
    return c;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

// ------------------------------------------------------------------ blocks

inline Json to_json(const CXBlock& b) {
  Json layers = Json::array();
  for (std::size_t l = 0; l < b.num_layers(); ++l) {
    Json layer = Json::array();
    b.for_each_gate(l, [&](const CXGate& g) {
      layer.push_back(Json{{"control", g.control}, {"target", g.target}});
    });
    layers.push_back(std::move(layer));
  }
  return Json{{"layers", std::move(layers)}};
}

inline CXBlock block_from_json(const Json& j, std::size_t num_qubits) {
  const auto& layers = detail::field(j, "layers");
  if (!layers.is_array() || layers.empty()) throw InputError("block needs at least one layer");
  CXBlock b(num_qubits, layers.size());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (const auto& g : layers[l]) {
      const CXGate gate{detail::get<Qubit>(detail::field(g, "control"), "control"),
                        detail::get<Qubit>(detail::field(g, "target"), "target")};
      if (b.contains(l, gate) || !is_valid_flip(b, {l, gate}))
        throw InputError("block layer " + std::to_string(l) + " is not a matching of valid CX gates");
      b.toggle(l, gate);
    }
  }
  return b;
}

// ------------------------------------------------------- optimised circuits

inline Json to_json(const OptimizedCircuit& o) {
  return Json{{"original", to_json(o.original)},
              {"block", to_json(o.block)},
              {"conjugated", to_json(o.conjugated)},
              {"repetitions", o.repetitions},
              {"final_cost", o.final_cost}};
}

inline OptimizedCircuit optimized_from_json(const Json& j) {
  PhaseCircuit original = circuit_from_json(detail::field(j, "original"));
  PhaseCircuit conjugated = circuit_from_json(detail::field(j, "conjugated"));
  if (original.num_qubits() != conjugated.num_qubits() || original.size() != conjugated.size())
    throw InputError("original and conjugated circuits differ in shape");
  CXBlock block = block_from_json(detail::field(j, "block"), original.num_qubits());
  OptimizedCircuit o{std::move(block), std::move(conjugated), std::move(original), 1, 0, 0, {}};
  o.repetitions = detail::get<std::size_t>(detail::field(j, "repetitions"), "repetitions");
  o.final_cost = detail::get<long>(detail::field(j, "final_cost"), "final_cost");
  return o;
}

// -------------------------------------------------------------- file access

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

inline Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(origin + ": " + e.what());
  }
}

inline Json read_json(const std::filesystem::path& path) {
  return parse_json(read_file(path), path.string());
}

/// Two-space indented JSON with a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// A `line:N` / `cycle:N` / `grid:RxC` shorthand, or a path to a topology
/// JSON file.
inline Topology load_topology(const std::string& spec) {
  const bool shorthand = spec.rfind("line:", 0) == 0 || spec.rfind("cycle:", 0) == 0 ||
                         spec.rfind("grid:", 0) == 0;
  if (shorthand) return Topology::parse(spec);
  return topology_from_json(read_json(spec));
}

// ------------------------------------------------------------------- trace

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string trace_csv(const std::vector<TraceRecord>& trace) {
  std::ostringstream out;
  out << "iter,temp,delta,accepted,cost,best_cost\n";
  for (const auto& r : trace) {
    out << r.iteration << ',' << format_double(r.temperature) << ',' << r.delta << ','
        << (r.accepted ? 1 : 0) << ',' << r.cost << ',' << r.best_cost << '\n';
  }
  return out.str();
}

// -------------------------------------------------------------- compilation

/// Nearest-neighbour compilation of every gadget of a circuit, in order.
inline Json compiled_to_json(const PhaseCircuit& c, const Topology& topo) {
  Json gadgets = Json::array();
  std::size_t total = 0;
  for (const auto& g : c.gadgets()) {
    Json ops = Json::array();
    const auto compiled = compile_gadget(g, topo);
    for (const auto& op : compiled) {
      if (const auto* cx = std::get_if<CXGate>(&op)) {
        ops.push_back(Json{{"gate", "cx"}, {"control", cx->control}, {"target", cx->target}});
      } else {
        const auto& r = std::get<Rotation>(op);
        ops.push_back(Json{{"gate", r.basis == Basis::Z ? "zrot" : "xrot"},
                           {"qubit", r.qubit},
                           {"angle", to_json(r.angle)}});
      }
    }
    total += cx_count(compiled);
    gadgets.push_back(Json{{"cx_count", cx_count(compiled)}, {"ops", std::move(ops)}});
  }
  return Json{{"qubits", topo.num_qubits()}, {"cx_count", total}, {"gadgets", std::move(gadgets)}};
}

/// OpenQASM 2.0. A gadget rotation exp(i theta P) is rz(-2 theta) or
/// rx(-2 theta); parametric angles are rejected.
inline std::string compiled_to_qasm(const PhaseCircuit& c, const Topology& topo) {
  std::ostringstream out;
  out << "// Phase gadgets compiled to nearest-neighbour CX and single-qubit rotations.\n"
      << "// Gadget exp(i*theta*Z...Z) uses rz(-2*theta); exp(i*theta*X...X) uses rx(-2*theta).\n"
      << "OPENQASM 2.0;\n"
      << "include \"qelib1.inc\";\n"
      << "qreg q[" << topo.num_qubits() << "];\n";
  for (const auto& g : c.gadgets()) {
    if (!g.angle.is_concrete())
      throw std::invalid_argument("QASM export needs concrete angles");
    for (const auto& op : compile_gadget(g, topo)) {
      if (const auto* cx = std::get_if<CXGate>(&op)) {
        out << "cx q[" << cx->control << "],q[" << cx->target << "];\n";
        continue;
      }
      const auto& r = std::get<Rotation>(op);
      const Rational a = Rational::make(-2 * r.angle.pi_multiple().num, r.angle.pi_multiple().den);
      out << (r.basis == Basis::Z ? "rz(" : "rx(");
      if (a.num == 0) {
        out << "0";
      } else {
        out << a.num << "*pi";
        if (a.den != 1) out << "/" << a.den;
      }
      out << ") q[" << r.qubit << "];\n";
    }
  }
  return out.str();
}

}  // namespace pgopt::io
