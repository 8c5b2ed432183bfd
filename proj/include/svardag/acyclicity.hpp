#pragma once

#include "svardag/model.hpp"

namespace svardag {

/// LU factorization of sI - W without row exchanges. For W >= 0, the matrix
/// sI - W is a nonsingular M-matrix iff rho(W) < s iff the factorization
/// exists with every pivot positive, so one factorization serves as domain
/// test, log-det evaluator and gradient solver.
class MMatrixFactor {
 public:
  MMatrixFactor(const Matrix& w, double s);

  bool in_domain() const { return ok_; }
  double log_det() const;                // sum of log pivots
  double h() const;                      // n log(s) - log det(sI - W)
  Matrix gradient() const;               // (sI - W)^{-T}

 private:
  int n_ = 0;
  double s_ = 1.0;
  bool ok_ = false;
  double logdet_ = 0.0;
  Matrix lu_;  // unit-lower and upper factors, packed
};

/// True iff rho(w) < s. Throws on negative entries of w or s <= 0.
bool in_domain(const Matrix& w, double s);

/// h(W) = n log(s) - log det(sI - W); non-negative, zero exactly on DAGs.
double h_value(const Matrix& w, double s);

/// (sI - W)^{-T}; entrywise non-negative on the domain.
Matrix h_gradient(const Matrix& w, double s);

}  // namespace svardag
