#pragma once

#include "svardag/benchmark.hpp"
#include "svardag/simulate.hpp"
#include "svardag/solver.hpp"

#include <iosfwd>
#include <string>

namespace svardag {

struct SimulateOptions {
  SvarmSpec spec;
  std::string out_x;
  std::string out_w;
  std::string out_a;
};

struct LearnOptions {
  std::string x_path;
  int lags = 2;
  SolverConfig cfg;
  std::string out_w;
  std::string out_a;
  std::string out_summary;
  std::string true_w_path;
  std::string true_a_path;
};

struct BenchmarkOptions {
  BenchmarkPlan plan;
  std::string out_path;
};

/// Writes X / W* / stacked A* and prints the companion spectral radius.
int cmd_simulate(const SimulateOptions& opt, std::ostream& out);

/// Runs the solver on a time-series CSV; writes estimates and a run summary,
/// and prints metrics when ground-truth files are given.
int cmd_learn(const LearnOptions& opt, std::ostream& out);

/// Runs a sweep and writes the aggregated CSV.
int cmd_benchmark(const BenchmarkOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace svardag
