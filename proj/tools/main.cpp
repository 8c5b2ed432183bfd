#include "svardag/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

void add_solver_flags(CLI::App& app, svardag::SolverConfig& cfg) {
  app.add_option("--s", cfg.s, "Spectral bound of the acyclicity domain");
  app.add_option("--lambda-w", cfg.lambda_w, "Sparsity penalty on W");
  app.add_option("--lambda-a", cfg.lambda_a, "Sparsity penalty on A");
  app.add_option("--alpha0", cfg.alpha0, "Initial Lagrange multiplier");
  app.add_option("--c0", cfg.c0, "Initial penalty parameter");
  app.add_option("--beta", cfg.beta, "Penalty growth factor");
  app.add_option("--gamma", cfg.gamma, "Required violation decrease factor");
  app.add_option("--max-outer", cfg.max_outer, "Outer iteration budget");
  app.add_option("--h-tol", cfg.h_tol, "Acyclicity stopping tolerance");
  app.add_option("--inner-tol", cfg.inner_tol, "Inner relative-decrease tolerance");
  app.add_option("--max-inner", cfg.max_inner, "Inner iteration budget");
  app.add_option("--tau", cfg.tau, "Support threshold");
  app.add_flag("--signed-a", cfg.signed_a, "Allow signed lag coefficients");
  app.add_option("--seed", cfg.seed, "Solver seed (recorded in results)");
}

void add_spec_flags(CLI::App& app, svardag::SvarmSpec& spec, bool with_shape) {
  if (with_shape) {
    app.add_option("--nodes", spec.n, "Node count");
    app.add_option("--samples", spec.t, "Time-series length");
    app.add_option("--lags", spec.p, "Autoregressive order");
  }
  app.add_option("--avg-degree-w", spec.avg_degree_w, "Average degree of W*");
  app.add_option("--avg-degree-a", spec.avg_degree_a, "Average degree of each lag block");
  app.add_option("--weight-low", spec.weight_low, "Lower edge-weight bound");
  app.add_option("--weight-high", spec.weight_high, "Upper edge-weight bound");
  app.add_option("--decay-rate", spec.decay_rate, "Exponential decay rate per lag");
  app.add_option("--noise-sigma", spec.noise_sigma, "Noise standard deviation");
  app.add_option("--burn-in", spec.burn_in, "Discarded leading samples");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint estimation of instantaneous-DAG and lag coefficients from time series"};
  app.require_subcommand(1);

  svardag::SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic instance");
  simulate->set_config("--config", "", "Flat key=value configuration file");
  add_spec_flags(*simulate, sim.spec, true);
  simulate->add_option("--seed", sim.spec.seed, "Generator seed");
  simulate->add_option("--out-x", sim.out_x, "Time-series CSV output path");
  simulate->add_option("--out-w", sim.out_w, "Instantaneous-weights CSV output path");
  simulate->add_option("--out-a", sim.out_a, "Stacked lag-weights CSV output path");

  svardag::LearnOptions learn;
  CLI::App* learn_cmd = app.add_subcommand("learn", "Estimate W and A from a time-series CSV");
  learn_cmd->set_config("--config", "", "Flat key=value configuration file");
  learn_cmd->add_option("--x", learn.x_path, "Time-series CSV (one row per time step)")->required();
  learn_cmd->add_option("--lags", learn.lags, "Autoregressive order");
  add_solver_flags(*learn_cmd, learn.cfg);
  learn_cmd->add_option("--out-w", learn.out_w, "Estimated-W CSV output path");
  learn_cmd->add_option("--out-a", learn.out_a, "Estimated-A CSV output path");
  learn_cmd->add_option("--out-summary", learn.out_summary, "Run-summary CSV output path");
  learn_cmd->add_option("--true-w", learn.true_w_path, "Ground-truth W CSV for metrics");
  learn_cmd->add_option("--true-a", learn.true_a_path, "Ground-truth stacked-A CSV for metrics");

  svardag::BenchmarkOptions bench;
  std::string sweep_name = "samples";
  std::vector<std::string> method_names = {"cvx", "baseline"};
  std::vector<long> sweep_values;
  CLI::App* bench_cmd = app.add_subcommand("benchmark", "Sweep a variable and aggregate metrics");
  bench_cmd->set_config("--config", "", "Flat key=value configuration file");
  bench_cmd->add_option("--sweep", sweep_name, "Swept variable: samples | nodes | lags")
      ->check(CLI::IsMember({"samples", "nodes", "lags"}));
  bench_cmd->add_option("--values", sweep_values, "Strictly increasing sweep values")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--realizations", bench.plan.realizations, "Realizations per cell");
  bench_cmd->add_option("--methods", method_names, "Methods: cvx | baseline")->delimiter(',');
  bench_cmd->add_option("--jobs", bench.plan.jobs, "Worker threads");
  add_spec_flags(*bench_cmd, bench.plan.base, true);
  add_solver_flags(*bench_cmd, bench.plan.solver);
  bench_cmd->add_option("--base-seed", bench.plan.base.seed, "Base seed; realization i adds i");
  bench_cmd->add_option("--out", bench.out_path, "Aggregated CSV output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return svardag::cmd_simulate(sim, std::cout);
    }
    if (learn_cmd->parsed()) {
      return svardag::cmd_learn(learn, std::cout);
    }
    if (bench_cmd->parsed()) {
      bench.plan.sweep = svardag::parse_sweep_variable(sweep_name);
      bench.plan.values = sweep_values;
      bench.plan.methods.clear();
      for (const std::string& name : method_names) {
        bench.plan.methods.push_back(svardag::parse_method(name));
      }
      return svardag::cmd_benchmark(bench, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
