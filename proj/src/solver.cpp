#include "svardag/solver.hpp"

#include "svardag/acyclicity.hpp"
#include "solver_detail.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace svardag {

namespace detail {

bool LogDetAcyclicity::value(const Matrix& w, double& h) const {
  MMatrixFactor factor(w, s_);
  if (!factor.in_domain()) {
    return false;
  }
  h = factor.h();
  return std::isfinite(h);
}

bool LogDetAcyclicity::value_and_gradient(const Matrix& w, double& h, Matrix& grad) const {
  MMatrixFactor factor(w, s_);
  if (!factor.in_domain()) {
    return false;
  }
  h = factor.h();
  if (!std::isfinite(h)) {
    return false;
  }
  grad = factor.gradient();
  return true;
}

namespace {

constexpr double kArmijoSigma = 1e-4;
constexpr int kMaxHalvings = 60;
constexpr int kFlatWindow = 5;  // consecutive sub-tolerance decreases before stopping

struct SmoothEval {
  double f = 0.0;
  double h = 0.0;
  Matrix gw;
  Matrix ga;
};

class CompositeObjective {
 public:
  CompositeObjective(const QuadraticCache& cache, const AcyclicityModel& acyc, const InnerOptions& opt)
      : cache_(cache), acyc_(acyc), opt_(opt) {}

  bool smooth_value(const Matrix& w, const Matrix& a, double& f, double& h) const {
    if (!acyc_.value(w, h)) {
      return false;
    }
    f = cache_.data_value(w, a) + linear_penalties(w, a) + opt_.mult.alpha * h + 0.5 * opt_.mult.c * h * h;
    return std::isfinite(f);
  }

  bool smooth_eval(const Matrix& w, const Matrix& a, SmoothEval& e) const {
    Matrix hg;
    if (!acyc_.value_and_gradient(w, e.h, hg)) {
      return false;
    }
    e.f = cache_.data_value(w, a) + linear_penalties(w, a) + opt_.mult.alpha * e.h +
          0.5 * opt_.mult.c * e.h * e.h;
    if (!std::isfinite(e.f)) {
      return false;
    }
    const double coef = opt_.mult.alpha + opt_.mult.c * e.h;
    e.gw = coef * hg;
    if (opt_.nonneg_w) {
      e.gw.array() += opt_.pen.lambda_w;
    }
    e.ga = Matrix::Zero(cache_.stacked_rows(), cache_.nodes());
    if (opt_.nonneg_a) {
      e.ga.array() += opt_.pen.lambda_a;
    }
    cache_.add_data_gradients(w, a, e.gw, e.ga);
    return true;
  }

  double nonsmooth(const Matrix& w, const Matrix& a) const {
    double v = 0.0;
    if (!opt_.nonneg_w) {
      v += opt_.pen.lambda_w * w.cwiseAbs().sum();
    }
    if (!opt_.nonneg_a && a.size() > 0) {
      v += opt_.pen.lambda_a * a.cwiseAbs().sum();
    }
    return v;
  }

  void prox(Matrix& w, Matrix& a, double eta) const {
    if (opt_.nonneg_w) {
      w = w.cwiseMax(0.0);
    } else {
      soft_threshold(w, eta * opt_.pen.lambda_w);
    }
    w.diagonal().setZero();
    if (a.size() > 0) {
      if (opt_.nonneg_a) {
        a = a.cwiseMax(0.0);
      } else {
        soft_threshold(a, eta * opt_.pen.lambda_a);
      }
    }
  }

 private:
  double linear_penalties(const Matrix& w, const Matrix& a) const {
    double v = 0.0;
    if (opt_.nonneg_w) {
      v += opt_.pen.lambda_w * w.sum();
    }
    if (opt_.nonneg_a && a.size() > 0) {
      v += opt_.pen.lambda_a * a.sum();
    }
    return v;
  }

  static void soft_threshold(Matrix& x, double t) {
    if (t <= 0.0) {
      return;
    }
    x = x.unaryExpr([t](double v) {
      if (v > t) return v - t;
      if (v < -t) return v + t;
      return 0.0;
    });
  }

  const QuadraticCache& cache_;
  const AcyclicityModel& acyc_;
  const InnerOptions& opt_;
};

struct Step {
  Matrix w;
  Matrix a;
  double objective = 0.0;
  double move = 0.0;  // Frobenius norm of the update
};

}  // namespace

InnerState minimize(const QuadraticCache& cache, const AcyclicityModel& acyc, Matrix w0, Matrix a0,
                    const InnerOptions& opt) {
  CompositeObjective obj(cache, acyc, opt);
  if (opt.nonneg_w && (w0.array() < 0.0).any()) {
    throw std::invalid_argument("infeasible warm start");
  }
  if (opt.nonneg_a && a0.size() > 0 && (a0.array() < 0.0).any()) {
    throw std::invalid_argument("infeasible warm start");
  }
  w0.diagonal().setZero();

  double f0 = 0.0;
  double h0 = 0.0;
  if (!obj.smooth_value(w0, a0, f0, h0)) {
    throw std::invalid_argument("infeasible warm start");
  }

  Matrix w = std::move(w0);
  Matrix a = std::move(a0);
  double objective = f0 + obj.nonsmooth(w, a);

  Matrix w_prev = w;
  Matrix a_prev = a;
  double t_momentum = 1.0;
  double eta = 1.0;
  int flat = 0;
  int iterations = 0;

  SmoothEval eval;
  // Backtracking line search from a fixed base point. Updates eta in place.
  auto attempt = [&](const Matrix& bw, const Matrix& ba) -> std::optional<Step> {
    if (!obj.smooth_eval(bw, ba, eval)) {
      return std::nullopt;
    }
    const double g_base = obj.nonsmooth(bw, ba);
    const double base_total = eval.f + g_base;
    for (int halving = 0; halving < kMaxHalvings; ++halving) {
      Step step;
      step.w = bw - eta * eval.gw;
      step.a = ba - eta * eval.ga;
      obj.prox(step.w, step.a, eta);
      double f_new = 0.0;
      double h_new = 0.0;
      if (obj.smooth_value(step.w, step.a, f_new, h_new)) {
        const double g_new = obj.nonsmooth(step.w, step.a);
        const double model_decrease = (eval.gw.array() * (step.w - bw).array()).sum() +
                                      (eval.ga.array() * (step.a - ba).array()).sum() + g_new - g_base;
        const double slack = 1e-14 * std::max(1.0, std::abs(base_total));
        if (f_new + g_new <= base_total + kArmijoSigma * model_decrease + slack) {
          step.objective = f_new + g_new;
          step.move = std::sqrt((step.w - bw).squaredNorm() + (step.a - ba).squaredNorm());
          return step;
        }
      }
      eta *= 0.5;
    }
    return std::nullopt;
  };

  for (int it = 1; it <= opt.max_inner; ++it) {
    iterations = it;
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
    const double momentum = (t_momentum - 1.0) / t_next;

    eta = std::min(1.0, eta * 2.0);
    bool from_base = momentum == 0.0;
    std::optional<Step> step;
    if (!from_base) {
      Matrix yw = w + momentum * (w - w_prev);
      Matrix ya = a + momentum * (a - a_prev);
      acyc.clamp(yw);
      yw.diagonal().setZero();
      if (opt.nonneg_a && ya.size() > 0) {
        ya = ya.cwiseMax(0.0);
      }
      step = attempt(yw, ya);
      if (!step || step->objective > objective) {
        from_base = true;
        step.reset();
      }
    }
    if (from_base && !step) {
      step = attempt(w, a);
      if (step && step->objective > objective) {
        step.reset();
      }
    }
    if (!step) {
      break;  // no descent step exists at line-search resolution
    }

    w_prev = std::move(w);
    a_prev = std::move(a);
    w = std::move(step->w);
    a = std::move(step->a);
    t_momentum = from_base ? 1.0 : t_next;

    const double decrease = (objective - step->objective) / std::max(1.0, std::abs(objective));
    objective = step->objective;

    if (from_base && step->move == 0.0) {
      break;  // projected gradient fixed point
    }
    if (!from_base && decrease < opt.inner_tol) {
      if (++flat >= kFlatWindow) {
        break;
      }
    } else {
      flat = 0;
    }
  }

  InnerState out;
  out.w = std::move(w);
  out.a = std::move(a);
  out.objective = objective;
  out.iterations = iterations;
  return out;
}

int enforce_acyclic_support(Matrix& w) {
  const int n = static_cast<int>(w.rows());
  int removed = 0;
  while (true) {
    // DFS for a back edge; colors: 0 unvisited, 1 on stack, 2 done.
    std::vector<int> color(n, 0);
    std::vector<int> parent(n, -1);
    int cycle_from = -1;
    int cycle_to = -1;
    std::function<bool(int)> dfs = [&](int u) -> bool {
      color[u] = 1;
      for (int v = 0; v < n; ++v) {
        if (u == v || w(u, v) == 0.0) {
          continue;
        }
        if (color[v] == 1) {
          cycle_from = u;
          cycle_to = v;
          return true;
        }
        if (color[v] == 0) {
          parent[v] = u;
          if (dfs(v)) {
            return true;
          }
        }
      }
      color[u] = 2;
      return false;
    };
    bool found = false;
    for (int u = 0; u < n && !found; ++u) {
      if (color[u] == 0) {
        found = dfs(u);
      }
    }
    if (!found) {
      return removed;
    }
    // Walk the tree path cycle_to -> ... -> cycle_from, plus the back edge.
    int min_i = cycle_from;
    int min_j = cycle_to;
    double min_abs = std::abs(w(cycle_from, cycle_to));
    for (int v = cycle_from; v != cycle_to; v = parent[v]) {
      const int u = parent[v];
      const double mag = std::abs(w(u, v));
      if (mag < min_abs) {
        min_abs = mag;
        min_i = u;
        min_j = v;
      }
    }
    w(min_i, min_j) = 0.0;
    ++removed;
  }
}

SolverResult run_method_of_multipliers(const LaggedDesign& design, const AcyclicityModel& acyc,
                                       const InnerOptions& inner_opt, const OuterOptions& outer_opt,
                                       bool signed_w) {
  QuadraticCache cache(design);
  const int n = design.n;
  const long np = static_cast<long>(design.n) * design.p;

  auto plain_score = [&](const Matrix& w, const Matrix& a) {
    const Matrix r = residual(w, a, design);
    double v = 0.5 / static_cast<double>(design.m) * r.squaredNorm();
    v += inner_opt.pen.lambda_w * (inner_opt.nonneg_w ? w.sum() : w.cwiseAbs().sum());
    if (a.size() > 0) {
      v += inner_opt.pen.lambda_a * (inner_opt.nonneg_a ? a.sum() : a.cwiseAbs().sum());
    }
    return v;
  };

  Matrix w = Matrix::Zero(n, n);
  Matrix a = Matrix::Zero(np, n);
  double alpha = outer_opt.alpha0;
  double c = outer_opt.c0;
  double h_old = 0.0;  // h at the zero initial point
  double h_cur = 0.0;

  SolverResult result;
  result.termination = Termination::max_outer_reached;

  InnerOptions opt = inner_opt;
  for (int k = 1; k <= outer_opt.max_outer; ++k) {
    opt.mult.alpha = alpha;
    opt.mult.c = c;
    InnerState state = minimize(cache, acyc, w, a, opt);

    OuterRecord rec;
    rec.outer = k;
    rec.alpha = alpha;
    rec.c = c;
    rec.inner_iterations = state.iterations;
    rec.lagrangian_end = state.objective;
    {
      // objective at the warm start under this iteration's multiplier state
      double f0 = 0.0;
      double hw = 0.0;
      CompositeObjective probe(cache, acyc, opt);
      probe.smooth_value(w, a, f0, hw);
      rec.lagrangian_start = f0 + probe.nonsmooth(w, a);
    }
    w = std::move(state.w);
    a = std::move(state.a);
    if (!acyc.value(w, h_cur)) {
      throw std::runtime_error("inner solve left the acyclicity domain");
    }
    rec.h = h_cur;
    rec.score = plain_score(w, a);
    result.trace.push_back(rec);

    if (h_cur <= outer_opt.h_tol) {
      result.termination = Termination::converged;
      break;
    }
    alpha = multiplier_update(alpha, c, h_cur);
    c = penalty_update(c, h_cur, h_old, outer_opt.beta, outer_opt.gamma);
    h_old = h_cur;
  }

  result.h_final = h_cur;
  result.w_estimate = w;

  const double tau = outer_opt.tau;
  Matrix w_thr = w.unaryExpr([tau](double v) { return std::abs(v) > tau ? v : 0.0; });
  if (signed_w) {
    for (long j = 0; j < w_thr.cols(); ++j) {
      for (long i = 0; i < w_thr.rows(); ++i) {
        if (w_thr(i, j) < 0.0) {
          w_thr(i, j) = 0.0;
          ++result.negative_edges_clamped;
        }
      }
    }
  }
  result.cycle_edges_removed = enforce_acyclic_support(w_thr);
  result.w_hat = DagWeights(std::move(w_thr));
  result.a_hat = LaggedWeights(n, std::move(a));
  return result;
}

}  // namespace detail

void SolverConfig::validate() const {
  if (!(s > 0.0)) throw std::invalid_argument("SolverConfig: s must be > 0");
  if (lambda_w < 0.0 || lambda_a < 0.0) throw std::invalid_argument("SolverConfig: penalties must be >= 0");
  if (alpha0 < 0.0) throw std::invalid_argument("SolverConfig: alpha0 must be >= 0");
  if (!(c0 > 0.0)) throw std::invalid_argument("SolverConfig: c0 must be > 0");
  if (!(beta > 1.0)) throw std::invalid_argument("SolverConfig: beta must be > 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("SolverConfig: gamma must be in (0,1)");
  if (max_outer < 1) throw std::invalid_argument("SolverConfig: max_outer must be >= 1");
  if (!(h_tol > 0.0)) throw std::invalid_argument("SolverConfig: h_tol must be > 0");
  if (!(inner_tol > 0.0)) throw std::invalid_argument("SolverConfig: inner_tol must be > 0");
  if (max_inner < 1) throw std::invalid_argument("SolverConfig: max_inner must be >= 1");
  if (tau < 0.0) throw std::invalid_argument("SolverConfig: tau must be >= 0");
}

double multiplier_update(double alpha, double c, double h_new) {
  return alpha + c * h_new;
}

double penalty_update(double c, double h_new, double h_old, double beta, double gamma) {
  return h_new > gamma * h_old ? beta * c : c;
}

InnerResult inner_minimize(const Matrix& w0, const Matrix& a0, const LaggedDesign& design,
                           const Penalties& pen, const MultiplierState& mult, const SolverConfig& cfg) {
  cfg.validate();
  if (mult.alpha < 0.0 || mult.c < 0.0) {
    throw std::invalid_argument("inner_minimize: multiplier state must be non-negative");
  }
  QuadraticCache cache(design);
  detail::LogDetAcyclicity acyc(cfg.s);
  detail::InnerOptions opt;
  opt.inner_tol = cfg.inner_tol;
  opt.max_inner = cfg.max_inner;
  opt.nonneg_w = true;
  opt.nonneg_a = !cfg.signed_a;
  opt.pen = pen;
  opt.mult = mult;
  detail::InnerState state = detail::minimize(cache, acyc, w0, a0, opt);
  InnerResult out;
  out.w = std::move(state.w);
  out.a = std::move(state.a);
  out.iterations = state.iterations;
  out.objective = state.objective;
  return out;
}

SolverResult learn(const LaggedDesign& design, const SolverConfig& cfg) {
  cfg.validate();
  detail::LogDetAcyclicity acyc(cfg.s);
  detail::InnerOptions inner_opt;
  inner_opt.inner_tol = cfg.inner_tol;
  inner_opt.max_inner = cfg.max_inner;
  inner_opt.nonneg_w = true;
  inner_opt.nonneg_a = !cfg.signed_a;
  inner_opt.pen = Penalties{cfg.lambda_w, cfg.lambda_a};
  detail::OuterOptions outer_opt;
  outer_opt.alpha0 = cfg.alpha0;
  outer_opt.c0 = cfg.c0;
  outer_opt.beta = cfg.beta;
  outer_opt.gamma = cfg.gamma;
  outer_opt.max_outer = cfg.max_outer;
  outer_opt.h_tol = cfg.h_tol;
  outer_opt.tau = cfg.tau;
  return detail::run_method_of_multipliers(design, acyc, inner_opt, outer_opt, /*signed_w=*/false);
}

}  // namespace svardag
