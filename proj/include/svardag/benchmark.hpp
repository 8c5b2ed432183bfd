#pragma once

#include "svardag/metrics.hpp"
#include "svardag/simulate.hpp"
#include "svardag/solver.hpp"

#include <string>
#include <vector>

namespace svardag {

enum class SweepVariable { samples, nodes, lags };
enum class Method { cvx, baseline };

std::string to_string(SweepVariable v);
std::string to_string(Method m);
SweepVariable parse_sweep_variable(const std::string& name);
Method parse_method(const std::string& name);

struct BenchmarkPlan {
  SweepVariable sweep = SweepVariable::samples;
  std::vector<long> values;
  int realizations = 10;   // paper protocol uses 50
  SvarmSpec base;          // fixed fields; the swept field is overridden per cell
  SolverConfig solver;     // shared settings; the baseline copies its subset
  std::vector<Method> methods{Method::cvx, Method::baseline};
  int jobs = 1;

  void validate() const;
  SvarmSpec cell_spec(long value, int realization) const;
};

struct RunRecord {
  long value = 0;
  Method method = Method::cvx;
  int realization = 0;
  bool failed = false;
  std::string error;
  double h_final = 0.0;
  bool dag_ok = false;
  Termination termination = Termination::max_outer_reached;
  int cycle_edges_removed = 0;
  double runtime_s = 0.0;
  MetricsReport metrics;
};

struct BenchmarkCell {
  std::string metric;
  Method method = Method::cvx;
  long value = 0;
  bool valid = false;
  Quartiles quartiles;
  double mean_runtime_s = 0.0;
};

struct BenchmarkResult {
  std::vector<BenchmarkCell> cells;  // sorted by (metric, method, value)
  std::vector<RunRecord> runs;
};

/// Runs every (sweep value, realization, method) cell. Realization i uses
/// seed base.seed + i and both methods see the same draw. Single-run
/// failures are recorded and skipped; a cell with at least half of its
/// realizations failed is marked invalid.
BenchmarkResult run_benchmark(const BenchmarkPlan& plan);

/// Schema: value,method,metric,median,p25,p75,mean_runtime_s
std::string benchmark_csv(const BenchmarkResult& result);
void write_benchmark_csv(const std::string& path, const BenchmarkResult& result);

}  // namespace svardag
