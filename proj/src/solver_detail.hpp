#pragma once

#include "svardag/objective.hpp"
#include "svardag/solver.hpp"

namespace svardag::detail {

/// Smooth constraint-violation term plugged into the inner solver.
class AcyclicityModel {
 public:
  virtual ~AcyclicityModel() = default;
  /// Value only; returns false when w is outside the model's domain.
  virtual bool value(const Matrix& w, double& h) const = 0;
  /// Value and gradient; returns false when w is outside the domain.
  virtual bool value_and_gradient(const Matrix& w, double& h, Matrix& grad) const = 0;
  /// Entrywise feasibility projection applied before evaluating (identity
  /// for models defined on all matrices).
  virtual void clamp(Matrix& w) const = 0;
};

class LogDetAcyclicity final : public AcyclicityModel {
 public:
  explicit LogDetAcyclicity(double s) : s_(s) {}
  bool value(const Matrix& w, double& h) const override;
  bool value_and_gradient(const Matrix& w, double& h, Matrix& grad) const override;
  void clamp(Matrix& w) const override { w = w.cwiseMax(0.0); }

 private:
  double s_;
};

class TraceExpAcyclicity final : public AcyclicityModel {
 public:
  bool value(const Matrix& w, double& h) const override;
  bool value_and_gradient(const Matrix& w, double& h, Matrix& grad) const override;
  void clamp(Matrix&) const override {}
};

struct InnerOptions {
  double inner_tol = 1e-7;
  int max_inner = 5000;
  bool nonneg_w = true;   // projection for W (else l1 prox with lambda_w)
  bool nonneg_a = true;   // projection for A (else l1 prox with lambda_a)
  Penalties pen;
  MultiplierState mult;
};

struct InnerState {
  Matrix w;
  Matrix a;
  double objective = 0.0;
  int iterations = 0;
};

/// FISTA with restarts and Armijo backtracking on the composite objective.
/// Throws std::invalid_argument when (w0, a0) is infeasible.
InnerState minimize(const QuadraticCache& cache, const AcyclicityModel& acyc, Matrix w0, Matrix a0,
                    const InnerOptions& opt);

struct OuterOptions {
  double alpha0 = 0.0;
  double c0 = 1.0;
  double beta = 10.0;
  double gamma = 0.25;
  int max_outer = 20;
  double h_tol = 1e-8;
  double tau = 0.05;
};

/// Shared Steps 1-3 loop; `signed_w` selects the baseline's variable space.
SolverResult run_method_of_multipliers(const LaggedDesign& design, const AcyclicityModel& acyc,
                                       const InnerOptions& inner_opt, const OuterOptions& outer_opt,
                                       bool signed_w);

/// Drops the smallest-magnitude edge on a remaining cycle until the support
/// is acyclic; returns the number of removed edges.
int enforce_acyclic_support(Matrix& w);

}  // namespace svardag::detail
