#include "svardag/commands.hpp"

#include "svardag/csv.hpp"
#include "svardag/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace svardag {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), spec, v);
  return buffer;
}

void print_metrics(std::ostream& out, const MetricsReport& m, bool has_lags) {
  out << "nfe_w: " << fmt(m.nfe_w) << "\n";
  out << "f1_w: " << fmt(m.f1_w) << " (precision " << fmt(m.precision_w) << ", recall "
      << fmt(m.recall_w) << ")\n";
  if (has_lags) {
    out << "nfe_a: " << fmt(m.nfe_a) << "\n";
    out << "f1_a: " << fmt(m.f1_a) << " (precision " << fmt(m.precision_a) << ", recall "
        << fmt(m.recall_a) << ")\n";
  }
}

}  // namespace

int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
  opt.spec.validate();
  const GroundTruth truth = simulate_svarm(opt.spec);
  out << "companion spectral radius: "
      << fmt(companion_spectral_radius(truth.w_true, truth.a_true), "%.12g") << "\n";
  if (!opt.out_x.empty()) {
    write_time_series(opt.out_x, truth.x);
    out << "wrote " << opt.out_x << " (" << truth.x.t << " rows, " << truth.x.n << " columns)\n";
  }
  if (!opt.out_w.empty()) {
    write_csv_matrix(opt.out_w, truth.w_true.w);
    out << "wrote " << opt.out_w << "\n";
  }
  if (!opt.out_a.empty()) {
    if (opt.spec.p == 0) {
      out << "lag order 0: skipped " << opt.out_a << "\n";
    } else {
      write_csv_matrix(opt.out_a, truth.a_true.stacked);
      out << "wrote " << opt.out_a << "\n";
    }
  }
  return 0;
}

int cmd_learn(const LearnOptions& opt, std::ostream& out) {
  opt.cfg.validate();
  const TimeSeries series = read_time_series(opt.x_path);
  const LaggedDesign design = build_lagged_design(series, opt.lags);
  const SolverResult result = learn(design, opt.cfg);

  out << "h_final: " << fmt(result.h_final, "%.6e") << "\n";
  out << "outer_iterations: " << result.trace.size() << "\n";
  out << "termination: "
      << (result.termination == Termination::converged ? "converged" : "max_outer_reached") << "\n";
  out << "cycle_edges_removed: " << result.cycle_edges_removed << "\n";
  out << "trace: outer score h alpha c inner_iterations\n";
  for (const OuterRecord& rec : result.trace) {
    out << "  " << rec.outer << " " << fmt(rec.score) << " " << fmt(rec.h, "%.6e") << " "
        << fmt(rec.alpha) << " " << fmt(rec.c) << " " << rec.inner_iterations << "\n";
  }

  if (!opt.out_w.empty()) {
    write_csv_matrix(opt.out_w, result.w_hat.w);
    out << "wrote " << opt.out_w << "\n";
  }
  if (!opt.out_a.empty() && opt.lags > 0) {
    write_csv_matrix(opt.out_a, result.a_hat.stacked);
    out << "wrote " << opt.out_a << "\n";
  }
  if (!opt.out_summary.empty()) {
    std::ofstream summary(opt.out_summary, std::ios::binary);
    if (!summary) {
      throw std::runtime_error("cannot open file for writing: " + opt.out_summary);
    }
    summary << "# h_final=" << fmt(result.h_final, "%.17g") << "\n";
    summary << "# outer_iterations=" << result.trace.size() << "\n";
    summary << "# termination="
            << (result.termination == Termination::converged ? "converged" : "max_outer_reached")
            << "\n";
    summary << "# cycle_edges_removed=" << result.cycle_edges_removed << "\n";
    summary << "outer,score,h,alpha,c,inner_iterations\n";
    for (const OuterRecord& rec : result.trace) {
      summary << rec.outer << "," << fmt(rec.score, "%.17g") << "," << fmt(rec.h, "%.17g") << ","
              << fmt(rec.alpha, "%.17g") << "," << fmt(rec.c, "%.17g") << ","
              << rec.inner_iterations << "\n";
    }
    out << "wrote " << opt.out_summary << "\n";
  }

  if (!opt.true_w_path.empty()) {
    const Matrix w_true = read_csv_matrix(opt.true_w_path);
    Matrix a_true(0, design.n);
    if (!opt.true_a_path.empty() && opt.lags > 0) {
      a_true = read_csv_matrix(opt.true_a_path);
    }
    const MetricsReport metrics =
        evaluate_metrics(result.w_hat.w, result.a_hat.stacked, w_true, a_true, opt.cfg.tau);
    out << "metrics vs ground truth:\n";
    print_metrics(out, metrics, a_true.size() > 0);
  }
  return 0;
}

int cmd_benchmark(const BenchmarkOptions& opt, std::ostream& out, std::ostream& err) {
  const BenchmarkResult result = run_benchmark(opt.plan);
  int failures = 0;
  for (const RunRecord& rec : result.runs) {
    if (rec.failed) {
      ++failures;
      err << "realization failed: value=" << rec.value << " method=" << to_string(rec.method)
          << " realization=" << rec.realization << ": " << rec.error << "\n";
    }
  }
  write_benchmark_csv(opt.out_path, result);
  out << "wrote " << opt.out_path << " (" << result.cells.size() << " cells, " << result.runs.size()
      << " runs, " << failures << " failures)\n";
  return 0;
}

}  // namespace svardag
