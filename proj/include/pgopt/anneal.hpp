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

#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pgopt/block.hpp"
#include "pgopt/circuit.hpp"
#include "pgopt/cost.hpp"
#include "pgopt/topology.hpp"

namespace pgopt {

enum class ScheduleKind { Linear, Geometric, Reciprocal, Logarithmic };

inline std::string_view to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Linear: return "linear";
    case ScheduleKind::Geometric: return "geometric";
    case ScheduleKind::Reciprocal: return "reciprocal";
    case ScheduleKind::Logarithmic: return "logarithmic";
  }
  return "linear";
}

inline ScheduleKind parse_schedule_kind(std::string_view s) {
  if (s == "linear") return ScheduleKind::Linear;
  if (s == "geometric") return ScheduleKind::Geometric;
  if (s == "reciprocal") return ScheduleKind::Reciprocal;
  if (s == "logarithmic") return ScheduleKind::Logarithmic;
  throw std::invalid_argument("unknown schedule '" + std::string(s) + "'");
}

/// Temperature curve decreasing from t0 at the first iteration to t1 at the
/// last.
struct Schedule {
  ScheduleKind kind = ScheduleKind::Linear;
  double t0 = 10.0;
  double t1 = 0.1;

  void validate() const {
    if (!(t1 > 0.0) || !(t0 >= t1))
      throw std::invalid_argument("schedule needs t0 >= t1 > 0");
  }
};

/// Temperature at iteration k of n. Every curve hits t0 at k = 0 and t1 at
/// k = n - 1 and is non-increasing in between:
///   linear       t0 + k (t1 - t0) / (n - 1)
///   geometric    t0 (t1 / t0)^(k / (n - 1))
///   reciprocal   t0 / (1 + b k),  b = (t0 / t1 - 1) / (n - 1)
///   logarithmic  t1 + (t0 - t1) (1 - ln(1 + k) / ln n)
inline double temperature(const Schedule& s, std::size_t k, std::size_t n) {
  if (n <= 1) return s.t0;
  const double span = static_cast<double>(n - 1);
  const double x = static_cast<double>(k);
  switch (s.kind) {
    case ScheduleKind::Linear:
      return s.t0 + x * (s.t1 - s.t0) / span;
    case ScheduleKind::Geometric:
      return s.t0 * std::pow(s.t1 / s.t0, x / span);
    case ScheduleKind::Reciprocal:
      return s.t0 / (1.0 + (s.t0 / s.t1 - 1.0) / span * x);
    case ScheduleKind::Logarithmic:
      return s.t1 + (s.t0 - s.t1) * (1.0 - std::log1p(x) / std::log(static_cast<double>(n)));
  }
  return s.t0;
}

/// 2^(-delta / t) for cost increases, 1 otherwise. Below t = 1e-12 only
/// non-increasing moves are accepted.
inline double accept_probability(long delta, double t) {
  if (delta <= 0) return 1.0;
  if (t < 1e-12) return 0.0;
  return std::exp(-static_cast<double>(delta) * std::log(2.0) / t);
}

/// Initial temperature 2m + 2 for m gadgets.
inline double suggested_t0(std::size_t num_gadgets) {
  return 2.0 * static_cast<double>(num_gadgets) + 2.0;
}

struct AnnealConfig {
  std::size_t iterations = 1000;
  std::size_t num_layers = 3;
  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  Schedule schedule;
  bool record_trace = false;

  void validate() const {
    if (num_layers == 0) throw std::invalid_argument("anneal needs at least one block layer");
    if (repetitions == 0) throw std::invalid_argument("repetition count must be positive");
    schedule.validate();
  }
};

struct TraceRecord {
  std::size_t iteration;
  double temperature;
  long delta;
  bool accepted;
  long cost;
  long best_cost;
};

/// Result triple (C, P', P) with P = C . P' . C-dagger.
struct OptimizedCircuit {
  CXBlock block;
  PhaseCircuit conjugated;
  PhaseCircuit original;
  std::size_t repetitions = 1;
  long initial_cost = 0;
  long final_cost = 0;
  std::vector<TraceRecord> trace;
};

/// 2 * gates(C) + K * circuit_cost(P').
inline long total_cost(std::size_t block_gates, unsigned conjugated_cost, std::size_t repetitions) {
  return 2 * static_cast<long>(block_gates) +
         static_cast<long>(repetitions) * static_cast<long>(conjugated_cost);
}

inline long total_cost(ConjugatedState& s, std::size_t repetitions) {
  return total_cost(s.block().gate_count(), s.conjugated_cost(), repetitions);
}

/// Simulated annealing over CX blocks starting from the empty block.
///
/// Each iteration picks a uniformly random valid flip, applies it, and keeps
/// it with probability accept_probability(delta, t); rejected flips are
/// undone by flipping the same gate again. Returns the best configuration
/// seen, so final_cost never exceeds initial_cost.
inline OptimizedCircuit anneal(const PhaseCircuit& circuit, const Topology& topo,
                               const AnnealConfig& cfg) {
  cfg.validate();
  ConjugatedState state(circuit, topo, cfg.num_layers);
  const std::size_t k = cfg.repetitions;
  long cost = total_cost(state, k);

  OptimizedCircuit best{state.block(), state.conjugated(), state.original(), k, cost, cost, {}};
  if (cfg.record_trace) best.trace.reserve(cfg.iterations);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<GateFlip> moves;
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    const double t = temperature(cfg.schedule, it, cfg.iterations);
    enumerate_valid_flips(state.block(), topo, moves);
    if (moves.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    const GateFlip f = moves[pick(rng)];
    state.flip(f);
    const long new_cost = total_cost(state, k);
    const long delta = new_cost - cost;
    const double r = unit(rng);
    const bool accepted = delta <= 0 || r < accept_probability(delta, t);
    if (accepted) {
      cost = new_cost;
      if (cost < best.final_cost) {
        best.final_cost = cost;
        best.block = state.block();
        best.conjugated = state.conjugated();
      }
    } else {
      state.flip(f);
    }
#ifndef NDEBUG
    if (it % 4096 == 4095) {
      assert(total_cost(state, k) ==
             total_cost(state.block().gate_count(), circuit_cost(state.conjugated(), topo), k));
    }
#endif
    if (cfg.record_trace) best.trace.push_back({it, t, delta, accepted, cost, best.final_cost});
  }
  return best;
}

}  // namespace pgopt
