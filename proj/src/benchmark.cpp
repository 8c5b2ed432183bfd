#include "svardag/benchmark.hpp"

#include "svardag/baseline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace svardag {

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::samples: return "samples";
    case SweepVariable::nodes: return "nodes";
    case SweepVariable::lags: return "lags";
  }
  return "?";
}

std::string to_string(Method m) {
  return m == Method::cvx ? "cvx" : "baseline";
}

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "samples") return SweepVariable::samples;
  if (name == "nodes") return SweepVariable::nodes;
  if (name == "lags") return SweepVariable::lags;
  throw std::invalid_argument("unknown sweep variable: " + name);
}

Method parse_method(const std::string& name) {
  if (name == "cvx") return Method::cvx;
  if (name == "baseline") return Method::baseline;
  throw std::invalid_argument("unknown method: " + name);
}

void BenchmarkPlan::validate() const {
  if (values.empty()) {
    throw std::invalid_argument("BenchmarkPlan: sweep values must be non-empty");
  }
  for (size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw std::invalid_argument("BenchmarkPlan: sweep values must be strictly increasing");
    }
  }
  if (realizations < 1) {
    throw std::invalid_argument("BenchmarkPlan: realizations must be >= 1");
  }
  if (methods.empty()) {
    throw std::invalid_argument("BenchmarkPlan: at least one method required");
  }
  if (jobs < 1) {
    throw std::invalid_argument("BenchmarkPlan: jobs must be >= 1");
  }
  solver.validate();
}

SvarmSpec BenchmarkPlan::cell_spec(long value, int realization) const {
  SvarmSpec spec = base;
  switch (sweep) {
    case SweepVariable::samples: spec.t = value; break;
    case SweepVariable::nodes: spec.n = static_cast<int>(value); break;
    case SweepVariable::lags: spec.p = static_cast<int>(value); break;
  }
  spec.seed = base.seed + static_cast<std::uint64_t>(realization);
  return spec;
}

namespace {

void run_one_realization(const BenchmarkPlan& plan, long value, int realization,
                         std::vector<RunRecord>& slots, size_t slot_base) {
  for (size_t mi = 0; mi < plan.methods.size(); ++mi) {
    RunRecord& rec = slots[slot_base + mi];
    rec.value = value;
    rec.method = plan.methods[mi];
    rec.realization = realization;
  }
  GroundTruth truth;
  LaggedDesign design;
  SvarmSpec spec;
  try {
    spec = plan.cell_spec(value, realization);
    spec.validate();
    truth = simulate_svarm(spec);
    design = build_lagged_design(truth.x, spec.p);
  } catch (const std::exception& e) {
    for (size_t mi = 0; mi < plan.methods.size(); ++mi) {
      slots[slot_base + mi].failed = true;
      slots[slot_base + mi].error = e.what();
    }
    return;
  }
  for (size_t mi = 0; mi < plan.methods.size(); ++mi) {
    RunRecord& rec = slots[slot_base + mi];
    try {
      SolverResult result;
      const auto start = std::chrono::steady_clock::now();
      if (rec.method == Method::cvx) {
        result = learn(design, plan.solver);
      } else {
        result = learn_baseline(design, BaselineConfig::from(plan.solver));
      }
      const auto stop = std::chrono::steady_clock::now();
      rec.runtime_s = std::chrono::duration<double>(stop - start).count();
      rec.h_final = result.h_final;
      rec.termination = result.termination;
      rec.cycle_edges_removed = result.cycle_edges_removed;
      rec.dag_ok = is_dag(threshold_support(result.w_hat.w, 0.0));
      rec.metrics = evaluate_metrics(result.w_hat.w, result.a_hat.stacked, truth.w_true.w,
                                     truth.a_true.stacked, plan.solver.tau);
      if (spec.p == 0) {
        rec.metrics.nfe_a = std::numeric_limits<double>::quiet_NaN();
        rec.metrics.f1_a = std::numeric_limits<double>::quiet_NaN();
      }
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.error = e.what();
    }
  }
}

double metric_value(const RunRecord& rec, const std::string& metric) {
  if (metric == "nfe_w") return rec.metrics.nfe_w;
  if (metric == "nfe_a") return rec.metrics.nfe_a;
  if (metric == "f1_w") return rec.metrics.f1_w;
  return rec.metrics.f1_a;
}

}  // namespace

BenchmarkResult run_benchmark(const BenchmarkPlan& plan) {
  plan.validate();

  const size_t n_methods = plan.methods.size();
  const size_t n_tasks = plan.values.size() * static_cast<size_t>(plan.realizations);
  BenchmarkResult result;
  result.runs.resize(n_tasks * n_methods);

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t task = next.fetch_add(1);
      if (task >= n_tasks) {
        return;
      }
      const size_t vi = task / static_cast<size_t>(plan.realizations);
      const int realization = static_cast<int>(task % static_cast<size_t>(plan.realizations));
      run_one_realization(plan, plan.values[vi], realization, result.runs, task * n_methods);
    }
  };

  const int jobs = std::min<int>(plan.jobs, static_cast<int>(n_tasks));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int i = 0; i < jobs; ++i) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  const std::vector<std::string> metric_names = {"f1_a", "f1_w", "nfe_a", "nfe_w"};
  for (const std::string& metric : metric_names) {
    for (Method method : plan.methods) {
      for (long value : plan.values) {
        BenchmarkCell cell;
        cell.metric = metric;
        cell.method = method;
        cell.value = value;
        std::vector<double> samples;
        double runtime_sum = 0.0;
        int successes = 0;
        for (const RunRecord& rec : result.runs) {
          if (rec.value != value || rec.method != method) {
            continue;
          }
          if (rec.failed || std::isnan(metric_value(rec, metric))) {
            continue;
          }
          samples.push_back(metric_value(rec, metric));
          runtime_sum += rec.runtime_s;
          ++successes;
        }
        cell.valid = 2 * (plan.realizations - successes) < plan.realizations && !samples.empty();
        if (cell.valid) {
          cell.quartiles = aggregate(samples);
          cell.mean_runtime_s = runtime_sum / successes;
        } else {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          cell.quartiles = Quartiles{nan, nan, nan};
          cell.mean_runtime_s = nan;
        }
        result.cells.push_back(std::move(cell));
      }
    }
  }
  std::sort(result.cells.begin(), result.cells.end(), [](const BenchmarkCell& a, const BenchmarkCell& b) {
    if (a.metric != b.metric) return a.metric < b.metric;
    const std::string ma = to_string(a.method);
    const std::string mb = to_string(b.method);
    if (ma != mb) return ma < mb;
    return a.value < b.value;
  });
  return result;
}

std::string benchmark_csv(const BenchmarkResult& result) {
  std::string out = "value,method,metric,median,p25,p75,mean_runtime_s\n";
  char buffer[256];
  for (const BenchmarkCell& cell : result.cells) {
    std::snprintf(buffer, sizeof(buffer), "%ld,%s,%s,%.12g,%.12g,%.12g,%.6f\n", cell.value,
                  to_string(cell.method).c_str(), cell.metric.c_str(), cell.quartiles.median,
                  cell.quartiles.p25, cell.quartiles.p75, cell.mean_runtime_s);
    out += buffer;
  }
  return out;
}

void write_benchmark_csv(const std::string& path, const BenchmarkResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open file for writing: " + path);
  }
  out << benchmark_csv(result);
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace svardag
