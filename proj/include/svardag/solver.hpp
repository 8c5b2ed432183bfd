#pragma once

#include "svardag/model.hpp"
#include "svardag/objective.hpp"

#include <cstdint>
#include <vector>

namespace svardag {

struct SolverConfig {
  double s = 1.0;            // spectral bound of the acyclicity domain
  double lambda_w = 0.02;
  double lambda_a = 0.02;
  double alpha0 = 0.0;       // initial multiplier
  double c0 = 1.0;           // initial penalty parameter
  double beta = 10.0;        // penalty growth factor, > 1
  double gamma = 0.25;       // required violation decrease, in (0,1)
  int max_outer = 20;
  double h_tol = 1e-8;
  double inner_tol = 1e-7;   // relative objective-change tolerance
  int max_inner = 5000;
  double tau = 0.05;         // support threshold
  bool signed_a = false;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

enum class Termination { converged, max_outer_reached };

struct OuterRecord {
  int outer = 0;               // 1-based outer iteration index
  double score = 0.0;          // data fit + penalties at the iterate
  double h = 0.0;              // constraint violation at the iterate
  double alpha = 0.0;          // multiplier used by this inner solve
  double c = 0.0;              // penalty parameter used by this inner solve
  int inner_iterations = 0;
  double lagrangian_start = 0.0;  // augmented Lagrangian at the warm start
  double lagrangian_end = 0.0;    // augmented Lagrangian at the solution
};

struct SolverResult {
  DagWeights w_hat;        // thresholded, support guaranteed acyclic
  LaggedWeights a_hat;
  Matrix w_estimate;       // solver iterate before thresholding
  double h_final = 0.0;    // violation before thresholding
  std::vector<OuterRecord> trace;
  Termination termination = Termination::max_outer_reached;
  int cycle_edges_removed = 0;     // edges dropped to make the support acyclic
  int negative_edges_clamped = 0;  // baseline only: signed survivors zeroed
};

struct InnerResult {
  Matrix w;
  Matrix a;
  int iterations = 0;
  double objective = 0.0;
};

/// One primal update: minimizes the augmented Lagrangian from (w0, a0) by
/// accelerated projected gradient with Armijo backtracking.
InnerResult inner_minimize(const Matrix& w0, const Matrix& a0, const LaggedDesign& design,
                           const Penalties& pen, const MultiplierState& mult, const SolverConfig& cfg);

/// alpha' = alpha + c * h_new
double multiplier_update(double alpha, double c, double h_new);

/// c' = beta * c when h_new > gamma * h_old, else c
double penalty_update(double c, double h_new, double h_old, double beta, double gamma);

/// Full method-of-multipliers run from W = 0, A = 0.
SolverResult learn(const LaggedDesign& design, const SolverConfig& cfg);

}  // namespace svardag
