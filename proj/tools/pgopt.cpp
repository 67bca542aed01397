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

// pgopt: optimise mixed ZX phase-gadget circuits for a qubit topology.
//
// Exit codes: 0 success, 1 unexpected error, 2 bad input file, 3 invalid
// flags, 4 verification failure, 5 resource guard.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pgopt/anneal.hpp"
#include "pgopt/bench.hpp"
#include "pgopt/cost.hpp"
#include "pgopt/errors.hpp"
#include "pgopt/io.hpp"
#include "pgopt/oracle.hpp"

namespace {

constexpr int kBadInput = 2;
constexpr int kBadFlags = 3;
constexpr int kVerifyFailed = 4;
constexpr int kResourceGuard = 5;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    pgopt::io::write_file(out_path, text);
  }
}

pgopt::PhaseCircuit load_circuit(const std::string& path) {
  return pgopt::io::circuit_from_json(pgopt::io::read_json(path));
}

struct RandomArgs {
  std::size_t qubits = 0;
  std::size_t gadgets = 0;
  std::size_t min_legs = 1;
  std::size_t max_legs = 3;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_random(const RandomArgs& a) {
  const auto c = pgopt::random_circuit(a.qubits, a.gadgets, a.min_legs, a.max_legs, a.seed);
  emit(a.out, pgopt::io::dump(pgopt::io::to_json(c)));
  return 0;
}

struct CostArgs {
  std::string circuit;
  std::string topology;
  bool per_gadget = false;
};

int cmd_cost(const CostArgs& a) {
  const auto topo = pgopt::io::load_topology(a.topology);
  const auto c = load_circuit(a.circuit);
  if (c.num_qubits() > topo.num_qubits())
    throw std::invalid_argument("circuit has more qubits than the topology");
  if (a.per_gadget) {
    for (std::size_t i = 0; i < c.size(); ++i)
      std::cout << "gadget " << i << ": " << pgopt::gadget_cost(c.gadget(i), topo).value << "\n";
  }
  std::cout << pgopt::circuit_cost(c, topo) << "\n";
  return 0;
}

struct OptimizeArgs {
  std::string circuit;
  std::string topology;
  std::size_t layers = 3;
  std::size_t reps = 1;
  std::size_t iters = 1000;
  std::string schedule = "linear";
  std::string t0 = "10";
  double t1 = 0.1;
  std::uint64_t seed = 0;
  std::string out;
  std::string trace;
};

int cmd_optimize(const OptimizeArgs& a) {
  const auto topo = pgopt::io::load_topology(a.topology);
  const auto c = load_circuit(a.circuit);
  pgopt::AnnealConfig cfg;
  cfg.iterations = a.iters;
  cfg.num_layers = a.layers;
  cfg.repetitions = a.reps;
  cfg.seed = a.seed;
  cfg.record_trace = !a.trace.empty();
  double t0 = 0;
  if (a.t0 == "auto") {
    t0 = pgopt::suggested_t0(c.size());
  } else {
    std::size_t used = 0;
    try {
      t0 = std::stod(a.t0, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != a.t0.size()) throw std::invalid_argument("--t0 must be a number or 'auto'");
  }
  cfg.schedule = {pgopt::parse_schedule_kind(a.schedule), t0, a.t1};
  const auto opt = pgopt::anneal(c, topo, cfg);
  emit(a.out, pgopt::io::dump(pgopt::io::to_json(opt)));
  if (!a.trace.empty()) pgopt::io::write_file(a.trace, pgopt::io::trace_csv(opt.trace));
  std::cerr << "cost " << opt.initial_cost << " -> " << opt.final_cost << " ("
            << opt.block.gate_count() << " block gates)\n";
  return 0;
}

struct VerifyArgs {
  std::string optimized;
  double tol = 1e-9;
};

int cmd_verify(const VerifyArgs& a) {
  const auto opt = pgopt::io::optimized_from_json(pgopt::io::read_json(a.optimized));
  for (const auto* c : {&opt.original, &opt.conjugated})
    for (const auto& angle : c->angles())
      if (!angle.is_concrete()) throw pgopt::InputError("verify needs concrete angles");
  const auto cmp = pgopt::oracle::verify(opt, a.tol);
  std::cout << (cmp.equivalent ? "equivalent" : "NOT equivalent")
            << " (max deviation " << cmp.max_deviation << ")\n";
  return cmp.equivalent ? 0 : kVerifyFailed;
}

struct CompileArgs {
  std::string circuit;
  std::string topology;
  std::string format = "qasm";
  std::string out;
};

int cmd_compile(const CompileArgs& a) {
  const auto topo = pgopt::io::load_topology(a.topology);
  const auto c = load_circuit(a.circuit);
  if (c.num_qubits() > topo.num_qubits())
    throw std::invalid_argument("circuit has more qubits than the topology");
  if (a.format == "qasm") {
    for (const auto& angle : c.angles())
      if (!angle.is_concrete()) throw pgopt::InputError("QASM export needs concrete angles");
    emit(a.out, pgopt::io::compiled_to_qasm(c, topo));
  } else {
    emit(a.out, pgopt::io::dump(pgopt::io::compiled_to_json(c, topo)));
  }
  return 0;
}

struct BenchArgs {
  std::string config;
  std::string out;
  std::string aggregate;
  std::string gnuplot;
  std::string group_by = "qubits,gadgets";
  unsigned threads = 0;
};

int cmd_bench(const BenchArgs& a) {
  const auto cfg = pgopt::bench::config_from_json(pgopt::io::read_json(a.config));
  std::vector<pgopt::bench::GroupField> group_by;
  std::stringstream fields(a.group_by);
  for (std::string f; std::getline(fields, f, ',');)
    if (!f.empty()) group_by.push_back(pgopt::bench::parse_group_field(f));

  unsigned threads = a.threads;
  if (const char* env = std::getenv("PGOPT_THREADS")) {
    const unsigned cap = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    if (cap > 0 && (threads == 0 || threads > cap)) threads = cap;
  }
  const auto records = pgopt::bench::run_experiment(cfg, threads);
  emit(a.out, pgopt::bench::records_csv(records));

  const auto rows = pgopt::bench::summarize(records, group_by);
  if (!a.aggregate.empty())
    pgopt::io::write_file(a.aggregate, pgopt::bench::aggregate_csv(rows, group_by));
  if (!a.gnuplot.empty())
    pgopt::io::write_file(a.gnuplot, pgopt::bench::gnuplot_data(rows, group_by));

  double its = 0;
  for (const auto& r : records) its += r.iterations_per_second;
  if (cfg.timing && !records.empty() && its > 0) {
    std::cerr << records.size() << " runs, mean "
              << 1e6 / (its / static_cast<double>(records.size())) << " us/iteration\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology-aware optimisation of mixed ZX phase-gadget circuits"};
  app.require_subcommand(1);

  RandomArgs random_args;
  auto* random = app.add_subcommand("random", "Generate a random mixed ZX phase circuit");
  random->add_option("--qubits", random_args.qubits, "Number of qubits")->required();
  random->add_option("--gadgets", random_args.gadgets, "Number of gadgets")->required();
  random->add_option("--min-legs", random_args.min_legs, "Minimum legs per gadget")->capture_default_str();
  random->add_option("--max-legs", random_args.max_legs, "Maximum legs per gadget")->capture_default_str();
  random->add_option("--seed", random_args.seed, "RNG seed")->capture_default_str();
  random->add_option("--out", random_args.out, "Output JSON (stdout if omitted)");

  CostArgs cost_args;
  auto* cost = app.add_subcommand("cost", "Print the nearest-neighbour CX count of a circuit");
  cost->add_option("--circuit", cost_args.circuit, "Circuit JSON")->required();
  cost->add_option("--topology", cost_args.topology, "line:N, cycle:N, grid:RxC or JSON file")
      ->required();
  cost->add_flag("--per-gadget", cost_args.per_gadget, "Also print each gadget's cost");

  OptimizeArgs opt_args;
  auto* optimize = app.add_subcommand("optimize", "Anneal a conjugating CX block");
  optimize->add_option("--circuit", opt_args.circuit, "Circuit JSON")->required();
  optimize->add_option("--topology", opt_args.topology, "line:N, cycle:N, grid:RxC or JSON file")
      ->required();
  optimize->add_option("--layers", opt_args.layers, "CX block layers")->capture_default_str();
  optimize->add_option("--reps", opt_args.reps, "Layer repetitions K")->capture_default_str();
  optimize->add_option("--iters", opt_args.iters, "Annealing iterations")->capture_default_str();
  optimize->add_option("--schedule", opt_args.schedule, "linear|geometric|reciprocal|logarithmic")->capture_default_str();
  optimize->add_option("--t0", opt_args.t0, "Initial temperature, or 'auto' for 2m+2")->capture_default_str();
  optimize->add_option("--t1", opt_args.t1, "Final temperature")->capture_default_str();
  optimize->add_option("--seed", opt_args.seed, "RNG seed")->capture_default_str();
  optimize->add_option("--out", opt_args.out, "Output JSON (stdout if omitted)");
  optimize->add_option("--trace", opt_args.trace, "Per-iteration trace CSV");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check an optimised circuit against the unitary oracle");
  verify->add_option("--optimized", verify_args.optimized, "Optimised circuit JSON")->required();
  verify->add_option("--tol", verify_args.tol, "Entry-wise tolerance")->capture_default_str();

  CompileArgs compile_args;
  auto* compile = app.add_subcommand("compile", "Compile gadgets to nearest-neighbour CX circuits");
  compile->add_option("--circuit", compile_args.circuit, "Circuit JSON")->required();
  compile->add_option("--topology", compile_args.topology, "line:N, cycle:N, grid:RxC or JSON file")
      ->required();
  compile->add_option("--format", compile_args.format, "qasm|json")->capture_default_str()
      ->check(CLI::IsMember({"qasm", "json"}));
  compile->add_option("--out", compile_args.out, "Output file (stdout if omitted)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run a random-circuit benchmark sweep");
  bench->add_option("--config", bench_args.config, "Experiment config JSON")->required();
  bench->add_option("--out", bench_args.out, "Per-run CSV (stdout if omitted)");
  bench->add_option("--aggregate", bench_args.aggregate, "Aggregate CSV");
  bench->add_option("--gnuplot", bench_args.gnuplot, "gnuplot data file");
  bench->add_option("--group-by", bench_args.group_by,
                    "Comma-separated: qubits,gadgets,schedule,t0,iterations,time_bin")->capture_default_str();
  bench->add_option("--threads", bench_args.threads, "Worker threads (0 = all cores)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kBadFlags;
  }

  try {
    if (*random) return cmd_random(random_args);
    if (*cost) return cmd_cost(cost_args);
    if (*optimize) return cmd_optimize(opt_args);
    if (*verify) return cmd_verify(verify_args);
    if (*compile) return cmd_compile(compile_args);
    if (*bench) return cmd_bench(bench_args);
  } catch (const pgopt::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const pgopt::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResourceGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadFlags;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
