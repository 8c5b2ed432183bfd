#pragma once

#include "svardag/model.hpp"
#include "svardag/solver.hpp"

namespace svardag {

/// Solver settings for the trace-exponential comparison method. No spectral
/// bound; W and A are unconstrained in sign and penalized by their l1 norms.
struct BaselineConfig {
  double lambda_w = 0.02;
  double lambda_a = 0.02;
  double alpha0 = 0.0;
  double c0 = 1.0;
  double beta = 10.0;
  double gamma = 0.25;
  int max_outer = 20;
  double h_tol = 1e-8;
  double inner_tol = 1e-7;
  int max_inner = 5000;
  double tau = 0.05;
  std::uint64_t seed = 0;

  void validate() const;

  /// Copies the shared fields so paired comparisons run under one setup.
  static BaselineConfig from(const SolverConfig& cfg);
};

/// exp(M) by scaling-and-squaring with a truncated Taylor series.
Matrix matrix_exponential(const Matrix& m);

/// tr(exp(W o W)) - n. Zero exactly on DAG supports; every DAG is a
/// stationary point of this function.
double h_notears(const Matrix& w);

/// (exp(W o W))^T o 2W.
Matrix h_notears_gradient(const Matrix& w);

/// Method-of-multipliers run with the trace-exponential constraint and
/// signed weights; thresholding and the acyclic-support guarantee match
/// `learn`.
SolverResult learn_baseline(const LaggedDesign& design, const BaselineConfig& cfg);

}  // namespace svardag
