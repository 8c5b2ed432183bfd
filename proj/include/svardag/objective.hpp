#pragma once

#include "svardag/model.hpp"

namespace svardag {

/// Sparsity weights of the score function.
struct Penalties {
  double lambda_w = 0.0;
  double lambda_a = 0.0;
};

/// Dual state of the method of multipliers.
struct MultiplierState {
  double alpha = 0.0;  // Lagrange multiplier, >= 0
  double c = 1.0;      // quadratic penalty parameter, > 0
};

/// R = X_eff - W^T X_eff - A^T Y.
Matrix residual(const Matrix& w, const Matrix& a, const LaggedDesign& design);

/// (1/2m) ||R||_F^2 + lambda_w * sum(W) + lambda_a * sum(A)
/// (sum |A| when signed_a is set).
double score(const Matrix& w, const Matrix& a, const LaggedDesign& design, const Penalties& pen,
             bool signed_a = false);

/// score + alpha h(W) + (c/2) h(W)^2.
double lagrangian_value(const Matrix& w, const Matrix& a, const LaggedDesign& design, const Penalties& pen,
                        const MultiplierState& mult, double s, bool signed_a = false);

struct Gradients {
  Matrix w;  // n x n
  Matrix a;  // (n*p) x n
};

/// grad_W = -(1/m) X_eff R^T + lambda_w * 1 + (alpha + c h(W)) (sI - W)^{-T}
/// grad_A = -(1/m) Y R^T + lambda_a * 1  (lambda_a * sign(A) in signed mode)
Gradients lagrangian_gradients(const Matrix& w, const Matrix& a, const LaggedDesign& design,
                               const Penalties& pen, const MultiplierState& mult, double s,
                               bool signed_a = false);

/// Second-moment form of the data-fidelity term, so objective and gradient
/// evaluations cost O(n^2 (1+p)^2) independent of the sample count. Values
/// come from the factor F with S = F F^T as a plain sum of squares, which
/// stays accurate when the residual is tiny.
class QuadraticCache {
 public:
  explicit QuadraticCache(const LaggedDesign& design);

  long samples() const { return m_; }
  int nodes() const { return n_; }
  int stacked_rows() const { return np_; }

  /// (1/2m) ||X_eff - W^T X_eff - A^T Y||_F^2
  double data_value(const Matrix& w, const Matrix& a) const;

  /// Adds the data-fidelity gradients into gw / ga.
  void add_data_gradients(const Matrix& w, const Matrix& a, Matrix& gw, Matrix& ga) const;

 private:
  long m_ = 0;
  int n_ = 0;
  int np_ = 0;
  Matrix second_moment_;  // [X_eff; Y] [X_eff; Y]^T
  Matrix factor_;         // second_moment_ = factor_ factor_^T
};

}  // namespace svardag
