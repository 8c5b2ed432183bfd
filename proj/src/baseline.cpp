#include "svardag/baseline.hpp"

#include "solver_detail.hpp"

#include <cmath>
#include <stdexcept>

namespace svardag {

namespace detail {

namespace {

// 1-norm above which exp(W o W) overflows double range anyway.
constexpr double kExpNormGuard = 700.0;

bool trace_exp_terms(const Matrix& w, Matrix& exp_m, double& h) {
  if (!w.allFinite()) {
    return false;
  }
  const Matrix m = w.cwiseProduct(w);
  if (m.cwiseAbs().colwise().sum().maxCoeff() > kExpNormGuard) {
    return false;
  }
  exp_m = matrix_exponential(m);
  h = exp_m.trace() - static_cast<double>(w.rows());
  return std::isfinite(h);
}

}  // namespace

bool TraceExpAcyclicity::value(const Matrix& w, double& h) const {
  Matrix exp_m;
  return trace_exp_terms(w, exp_m, h);
}

bool TraceExpAcyclicity::value_and_gradient(const Matrix& w, double& h, Matrix& grad) const {
  Matrix exp_m;
  if (!trace_exp_terms(w, exp_m, h)) {
    return false;
  }
  grad = exp_m.transpose().cwiseProduct(2.0 * w);
  return true;
}

}  // namespace detail

void BaselineConfig::validate() const {
  SolverConfig mirror;
  mirror.lambda_w = lambda_w;
  mirror.lambda_a = lambda_a;
  mirror.alpha0 = alpha0;
  mirror.c0 = c0;
  mirror.beta = beta;
  mirror.gamma = gamma;
  mirror.max_outer = max_outer;
  mirror.h_tol = h_tol;
  mirror.inner_tol = inner_tol;
  mirror.max_inner = max_inner;
  mirror.tau = tau;
  mirror.validate();
}

BaselineConfig BaselineConfig::from(const SolverConfig& cfg) {
  BaselineConfig out;
  out.lambda_w = cfg.lambda_w;
  out.lambda_a = cfg.lambda_a;
  out.alpha0 = cfg.alpha0;
  out.c0 = cfg.c0;
  out.beta = cfg.beta;
  out.gamma = cfg.gamma;
  out.max_outer = cfg.max_outer;
  out.h_tol = cfg.h_tol;
  out.inner_tol = cfg.inner_tol;
  out.max_inner = cfg.max_inner;
  out.tau = cfg.tau;
  out.seed = cfg.seed;
  return out;
}

Matrix matrix_exponential(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix_exponential: matrix must be square");
  }
  const long n = m.rows();
  const double norm1 = n == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  Matrix a = m;
  if (norm1 > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    a /= std::ldexp(1.0, squarings);
  }
  Matrix result = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-17) {
      break;
    }
  }
  for (int i = 0; i < squarings; ++i) {
    result = result * result;
  }
  return result;
}

double h_notears(const Matrix& w) {
  if (w.rows() != w.cols()) {
    throw std::invalid_argument("h_notears: matrix must be square");
  }
  return matrix_exponential(w.cwiseProduct(w)).trace() - static_cast<double>(w.rows());
}

Matrix h_notears_gradient(const Matrix& w) {
  if (w.rows() != w.cols()) {
    throw std::invalid_argument("h_notears_gradient: matrix must be square");
  }
  return matrix_exponential(w.cwiseProduct(w)).transpose().cwiseProduct(2.0 * w);
}

SolverResult learn_baseline(const LaggedDesign& design, const BaselineConfig& cfg) {
  cfg.validate();
  detail::TraceExpAcyclicity acyc;
  detail::InnerOptions inner_opt;
  inner_opt.inner_tol = cfg.inner_tol;
  inner_opt.max_inner = cfg.max_inner;
  inner_opt.nonneg_w = false;
  inner_opt.nonneg_a = false;
  inner_opt.pen = Penalties{cfg.lambda_w, cfg.lambda_a};
  detail::OuterOptions outer_opt;
  outer_opt.alpha0 = cfg.alpha0;
  outer_opt.c0 = cfg.c0;
  outer_opt.beta = cfg.beta;
  outer_opt.gamma = cfg.gamma;
  outer_opt.max_outer = cfg.max_outer;
  outer_opt.h_tol = cfg.h_tol;
  outer_opt.tau = cfg.tau;
  return detail::run_method_of_multipliers(design, acyc, inner_opt, outer_opt, /*signed_w=*/true);
}

}  // namespace svardag
