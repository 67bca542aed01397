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
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pgopt/anneal.hpp"
#include "pgopt/circuit.hpp"
#include "pgopt/cost.hpp"
#include "pgopt/errors.hpp"
#include "pgopt/io.hpp"
#include "pgopt/topology.hpp"

namespace pgopt::bench {

struct IterationSweep {
  std::size_t start = 100;
  std::size_t stop = 5000;  ///< inclusive
  std::size_t step = 100;

  [[nodiscard]] std::vector<std::size_t> values() const {
    std::vector<std::size_t> out;
    for (std::size_t v = start; v <= stop; v += step) out.push_back(v);
    return out;
  }
};

/// Benchmark sweep. Defaults give the full protocol: 4x4, 5x5 and
/// 6x6 grids, 10..35 gadgets per layer, t0 in {1, 5, 10, 20}, linear and
/// geometric schedules, 100..5000 iterations, 50 circuits per cell, K = 5,
/// 3 block layers, 2- and 3-legged gadgets.
struct ExperimentConfig {
  std::vector<std::pair<std::size_t, std::size_t>> grids{{4, 4}, {5, 5}, {6, 6}};
  std::vector<std::size_t> gadgets_per_layer{10, 15, 20, 25, 30, 35};
  std::vector<double> t0_values{1, 5, 10, 20};
  std::vector<ScheduleKind> schedule_kinds{ScheduleKind::Linear, ScheduleKind::Geometric};
  IterationSweep iteration_sweep;
  std::size_t circuits_per_config = 50;
  std::size_t repetitions = 5;
  std::size_t block_layers = 3;
  std::size_t min_legs = 2;
  std::size_t max_legs = 3;
  std::uint64_t base_seed = 0;
  double t1 = 0.1;
  std::size_t max_runs = 1'000'000;
  /// When false, timing columns are written as 0 so output is reproducible.
  bool timing = true;

  void validate() const {
    if (grids.empty() || gadgets_per_layer.empty() || t0_values.empty() || schedule_kinds.empty())
      throw std::invalid_argument("experiment lists must be non-empty");
    if (iteration_sweep.step == 0 || iteration_sweep.start > iteration_sweep.stop)
      throw std::invalid_argument("iteration sweep needs step > 0 and start <= stop");
    if (circuits_per_config == 0) throw std::invalid_argument("circuits_per_config must be positive");
    for (const auto& [r, c] : grids)
      if (r == 0 || c == 0) throw std::invalid_argument("grid dimensions must be positive");
    for (double t0 : t0_values)
      if (!(t0 >= t1) || !(t1 > 0)) throw std::invalid_argument("need t0 >= t1 > 0");
  }

  [[nodiscard]] std::size_t run_count() const {
    return grids.size() * gadgets_per_layer.size() * t0_values.size() * schedule_kinds.size() *
           iteration_sweep.values().size() * circuits_per_config;
  }
};

struct RunRecord {
  std::size_t qubits = 0;
  std::size_t gadgets = 0;
  ScheduleKind schedule = ScheduleKind::Linear;
  double t0 = 0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  long original_cost = 0;
  long optimized_cost = 0;
  double reduction_fraction = 0;
  double wall_time_seconds = 0;
  double iterations_per_second = 0;
};

inline double reduction_fraction(long original, long optimized) {
  if (original <= 0) return 0.0;
  return static_cast<double>(original - optimized) / static_cast<double>(original);
}

/// splitmix64 finaliser.
constexpr std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable seed for a tuple of values: h = mix(h ^ v) folded over the tuple,
/// starting from the base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix(base);
  for (auto p : parts) h = mix(h ^ p);
  return h;
}

/// Circuits depend only on (grid, gadget count, circuit index), so every
/// schedule, t0 and iteration budget sees the same circuits. Annealing seeds
/// additionally depend on schedule, t0 and iteration budget.
inline std::uint64_t circuit_seed(std::uint64_t base, std::size_t rows, std::size_t cols,
                                  std::size_t gadgets, std::size_t index) {
  return derive_seed(base, {0x63697263ULL, rows, cols, gadgets, index});
}

inline std::uint64_t anneal_seed(std::uint64_t circuit, ScheduleKind kind, double t0,
                                 std::size_t iterations) {
  return derive_seed(circuit, {static_cast<std::uint64_t>(kind), std::bit_cast<std::uint64_t>(t0),
                               iterations});
}

/// Runs every cell of the sweep, in parallel over `threads` workers (0 means
/// hardware concurrency). Records come back in enumeration order: grid,
/// gadget count, t0, schedule, iteration budget, circuit index.
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, unsigned threads = 0) {
  cfg.validate();
  const std::size_t total = cfg.run_count();
  if (total > cfg.max_runs)
    throw ResourceLimitError("experiment has " + std::to_string(total) + " runs, above the cap of " +
                             std::to_string(cfg.max_runs));

  struct Task {
    std::size_t grid;
    std::size_t gadgets;
    double t0;
    ScheduleKind kind;
    std::size_t iterations;
    std::size_t index;
  };
  std::vector<Task> tasks;
  tasks.reserve(total);
  const auto budgets = cfg.iteration_sweep.values();
  for (std::size_t g = 0; g < cfg.grids.size(); ++g)
    for (std::size_t m : cfg.gadgets_per_layer)
      for (double t0 : cfg.t0_values)
        for (ScheduleKind kind : cfg.schedule_kinds)
          for (std::size_t iters : budgets)
            for (std::size_t i = 0; i < cfg.circuits_per_config; ++i)
              tasks.push_back({g, m, t0, kind, iters, i});

  std::vector<Topology> topologies;
  for (const auto& [r, c] : cfg.grids) topologies.push_back(Topology::grid(r, c));
  for (const auto& topo : topologies)
    if (cfg.max_legs > topo.num_qubits() || cfg.min_legs < 1 || cfg.min_legs > cfg.max_legs)
      throw std::invalid_argument("leg range does not fit the grid");

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const Task& t = tasks[i];
        const auto& [rows, cols] = cfg.grids[t.grid];
        const Topology& topo = topologies[t.grid];
        const std::uint64_t cseed = circuit_seed(cfg.base_seed, rows, cols, t.gadgets, t.index);
        const PhaseCircuit circuit =
            random_circuit(topo.num_qubits(), t.gadgets, cfg.min_legs, cfg.max_legs, cseed);
        AnnealConfig ac;
        ac.iterations = t.iterations;
        ac.num_layers = cfg.block_layers;
        ac.repetitions = cfg.repetitions;
        ac.seed = anneal_seed(cseed, t.kind, t.t0, t.iterations);
        ac.schedule = {t.kind, t.t0, cfg.t1};

        const auto start = std::chrono::steady_clock::now();
        const OptimizedCircuit opt = anneal(circuit, topo, ac);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        RunRecord& r = records[i];
        r.qubits = topo.num_qubits();
        r.gadgets = t.gadgets;
        r.schedule = t.kind;
        r.t0 = t.t0;
        r.iterations = t.iterations;
        r.seed = ac.seed;
        r.original_cost = opt.initial_cost;
        r.optimized_cost = opt.final_cost;
        r.reduction_fraction = reduction_fraction(opt.initial_cost, opt.final_cost);
        if (cfg.timing) {
          r.wall_time_seconds = wall;
          r.iterations_per_second = wall > 0 ? static_cast<double>(t.iterations) / wall : 0.0;
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, tasks.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

// ------------------------------------------------------------- aggregation

enum class GroupField { Qubits, Gadgets, Schedule, T0, Iterations, TimeBin };

inline std::string_view to_string(GroupField f) {
  switch (f) {
    case GroupField::Qubits: return "qubits";
    case GroupField::Gadgets: return "gadgets";
    case GroupField::Schedule: return "schedule";
    case GroupField::T0: return "t0";
    case GroupField::Iterations: return "iterations";
    case GroupField::TimeBin: return "time_bin";
  }
  return "";
}

inline GroupField parse_group_field(std::string_view s) {
  for (auto f : {GroupField::Qubits, GroupField::Gadgets, GroupField::Schedule, GroupField::T0,
                 GroupField::Iterations, GroupField::TimeBin})
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown group field '" + std::string(s) + "'");
}

struct AggregateRow {
  std::vector<double> key;  ///< one value per group field; schedules by enum index
  std::size_t count = 0;
  double mean = 0;
  double min = 0;
  double max = 0;
  double p10 = 0;
  double p50 = 0;
  double p90 = 0;
  double mean_wall_time = 0;
  double mean_iterations_per_second = 0;
};

/// Percentile with linear interpolation between closest ranks; `sorted`
/// must be ascending and non-empty.
inline double percentile(const std::vector<double>& sorted, double p) {
  const double pos = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline double time_bin(double seconds, double resolution) {
  return std::floor(seconds / resolution) * resolution;
}

/// Reduction-fraction statistics per group, groups in ascending key order.
/// TimeBin groups by wall time floored to `bin_seconds`.
inline std::vector<AggregateRow> summarize(const std::vector<RunRecord>& records,
                                           const std::vector<GroupField>& group_by,
                                           double bin_seconds = 0.5) {
  const auto key_of = [&](const RunRecord& r) {
    std::vector<double> key;
    for (auto f : group_by) {
      switch (f) {
        case GroupField::Qubits: key.push_back(static_cast<double>(r.qubits)); break;
        case GroupField::Gadgets: key.push_back(static_cast<double>(r.gadgets)); break;
        case GroupField::Schedule: key.push_back(static_cast<double>(r.schedule)); break;
        case GroupField::T0: key.push_back(r.t0); break;
        case GroupField::Iterations: key.push_back(static_cast<double>(r.iterations)); break;
        case GroupField::TimeBin: key.push_back(time_bin(r.wall_time_seconds, bin_seconds)); break;
      }
    }
    return key;
  };
  struct Acc {
    std::vector<double> values;
    double wall = 0;
    double ips = 0;
  };
  std::map<std::vector<double>, Acc> groups;
  for (const auto& r : records) {
    Acc& a = groups[key_of(r)];
    a.values.push_back(r.reduction_fraction);
    a.wall += r.wall_time_seconds;
    a.ips += r.iterations_per_second;
  }
  std::vector<AggregateRow> rows;
  for (auto& [key, acc] : groups) {
    auto& v = acc.values;
    std::sort(v.begin(), v.end());
    AggregateRow row;
    row.key = key;
    row.count = v.size();
    double sum = 0;
    for (double x : v) sum += x;
    const double n = static_cast<double>(v.size());
    row.mean = sum / n;
    row.min = v.front();
    row.max = v.back();
    row.p10 = percentile(v, 10);
    row.p50 = percentile(v, 50);
    row.p90 = percentile(v, 90);
    row.mean_wall_time = acc.wall / n;
    row.mean_iterations_per_second = acc.ips / n;
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------- output

inline std::string records_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "qubits,gadgets,schedule,t0,iterations,seed,original_cost,optimized_cost,"
         "reduction_fraction,wall_time_seconds,iterations_per_second\n";
  for (const auto& r : records) {
    out << r.qubits << ',' << r.gadgets << ',' << to_string(r.schedule) << ','
        << io::format_double(r.t0) << ',' << r.iterations << ',' << r.seed << ','
        << r.original_cost << ',' << r.optimized_cost << ',' << io::format_double(r.reduction_fraction)
        << ',' << io::format_double(r.wall_time_seconds) << ','
        << io::format_double(r.iterations_per_second) << '\n';
  }
  return out.str();
}

inline std::string key_string(GroupField f, double v) {
  if (f == GroupField::Schedule) return std::string(to_string(static_cast<ScheduleKind>(v)));
  return io::format_double(v);
}

inline std::string aggregate_csv(const std::vector<AggregateRow>& rows,
                                 const std::vector<GroupField>& group_by) {
  std::ostringstream out;
  for (auto f : group_by) out << to_string(f) << ',';
  out << "count,mean,min,max,p10,p50,p90,mean_wall_time_seconds,mean_iterations_per_second\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < group_by.size(); ++i) out << key_string(group_by[i], r.key[i]) << ',';
    out << r.count << ',' << io::format_double(r.mean) << ',' << io::format_double(r.min) << ','
        << io::format_double(r.max) << ',' << io::format_double(r.p10) << ','
        << io::format_double(r.p50) << ',' << io::format_double(r.p90) << ','
        << io::format_double(r.mean_wall_time) << ','
        << io::format_double(r.mean_iterations_per_second) << '\n';
  }
  return out.str();
}

/// Whitespace-separated `x mean p10 p90` columns, x being the last group
/// field; a blank line separates blocks that differ in earlier fields.
inline std::string gnuplot_data(const std::vector<AggregateRow>& rows,
                                const std::vector<GroupField>& group_by) {
  std::ostringstream out;
  out << "# x mean p10 p90  (x = " << (group_by.empty() ? "none" : to_string(group_by.back()))
      << ")\n";
  std::vector<double> prefix;
  for (const auto& r : rows) {
    if (r.key.empty()) {
      out << "0 ";
    } else {
      std::vector<double> p(r.key.begin(), r.key.end() - 1);
      if (!prefix.empty() && p != prefix) out << "\n";
      if (p != prefix || prefix.empty()) {
        out << "#";
        for (std::size_t i = 0; i + 1 < r.key.size(); ++i)
          out << ' ' << to_string(group_by[i]) << '=' << key_string(group_by[i], r.key[i]);
        out << '\n';
      }
      prefix = std::move(p);
      out << key_string(group_by.back(), r.key.back()) << ' ';
    }
    out << io::format_double(r.mean) << ' ' << io::format_double(r.p10) << ' '
        << io::format_double(r.p90) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- config

/// Reads a JSON experiment config. Keys mirror ExperimentConfig; absent keys
/// keep their defaults. Grids may be given as [rows, cols] pairs or "RxC"
/// strings, the sweep as {"start","stop","step"} or [start, stop, step].
inline ExperimentConfig config_from_json(const io::Json& j) {
  using io::detail::get;
  if (!j.is_object()) throw InputError("experiment config must be a JSON object");
  static const char* const kKnown[] = {
      "grids", "gadgets_per_layer", "t0_values", "schedule_kinds", "iteration_sweep",
      "circuits_per_config", "repetitions", "block_layers", "min_legs", "max_legs",
      "base_seed", "t1", "max_runs", "timing"};
  for (const auto& [k, v] : j.items()) {
    if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char* s) { return k == s; }) ==
        std::end(kKnown))
      throw InputError("unknown experiment config key '" + k + "'");
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("grids")) {
      cfg.grids.clear();
      for (const auto& g : j["grids"]) {
        if (g.is_string()) {
          const auto s = g.get<std::string>();
          const auto x = s.find_first_of("xX");
          if (x == std::string::npos) throw InputError("grid string must look like RxC");
          cfg.grids.emplace_back(std::stoul(s.substr(0, x)), std::stoul(s.substr(x + 1)));
        } else {
          const auto v = get<std::vector<std::size_t>>(g, "grids");
          if (v.size() != 2) throw InputError("grid must be [rows, cols]");
          cfg.grids.emplace_back(v[0], v[1]);
        }
      }
    }
    if (j.contains("gadgets_per_layer"))
      cfg.gadgets_per_layer = get<std::vector<std::size_t>>(j["gadgets_per_layer"], "gadgets_per_layer");
    if (j.contains("t0_values")) cfg.t0_values = get<std::vector<double>>(j["t0_values"], "t0_values");
    if (j.contains("schedule_kinds")) {
      cfg.schedule_kinds.clear();
      for (const auto& s : get<std::vector<std::string>>(j["schedule_kinds"], "schedule_kinds"))
        cfg.schedule_kinds.push_back(parse_schedule_kind(s));
    }
    if (j.contains("iteration_sweep")) {
      const auto& s = j["iteration_sweep"];
      if (s.is_array()) {
        const auto v = get<std::vector<std::size_t>>(s, "iteration_sweep");
        if (v.size() != 3) throw InputError("iteration_sweep must be [start, stop, step]");
        cfg.iteration_sweep = {v[0], v[1], v[2]};
      } else {
        cfg.iteration_sweep = {get<std::size_t>(io::detail::field(s, "start"), "start"),
                               get<std::size_t>(io::detail::field(s, "stop"), "stop"),
                               get<std::size_t>(io::detail::field(s, "step"), "step")};
      }
    }
    const auto scalar = [&](const char* key, auto& dst) {
      if (j.contains(key)) dst = get<std::decay_t<decltype(dst)>>(j[key], key);
    };
    scalar("circuits_per_config", cfg.circuits_per_config);
    scalar("repetitions", cfg.repetitions);
    scalar("block_layers", cfg.block_layers);
    scalar("min_legs", cfg.min_legs);
    scalar("max_legs", cfg.max_legs);
    scalar("base_seed", cfg.base_seed);
    scalar("t1", cfg.t1);
    scalar("max_runs", cfg.max_runs);
    scalar("timing", cfg.timing);
    cfg.validate();
  } catch (const std::logic_error& e) {
    throw InputError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(e.what());
  }
  return cfg;
}

}  // namespace pgopt::bench
