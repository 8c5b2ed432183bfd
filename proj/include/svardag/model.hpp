#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace svardag {

using Matrix = Eigen::MatrixXd;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Instantaneous edge weights: n x n, non-negative, zero diagonal.
struct DagWeights {
  int n = 0;
  Matrix w;

  DagWeights() = default;
  explicit DagWeights(Matrix weights);

  /// Throws std::invalid_argument if a structural invariant is violated.
  void validate(bool require_nonnegative = true) const;
};

/// Lag coefficient matrices A_1..A_p stored as the stacked (n*p) x n matrix
/// [A_1; A_2; ...; A_p].
struct LaggedWeights {
  int n = 0;
  int p = 0;
  Matrix stacked;

  LaggedWeights() = default;
  LaggedWeights(int nodes, int lags);
  LaggedWeights(int nodes, Matrix stacked_mats);
  static LaggedWeights from_blocks(const std::vector<Matrix>& mats);

  Eigen::Block<Matrix> lag(int q);              // q in [0, p)
  Eigen::Block<const Matrix> lag(int q) const;  // q in [0, p)
  std::vector<Matrix> blocks() const;
};

/// Multivariate time series, one column per time index.
struct TimeSeries {
  int n = 0;
  long t = 0;
  Matrix x;

  TimeSeries() = default;
  explicit TimeSeries(Matrix samples);

  void validate() const;
};

/// Lag-aligned data pair. Column j of x_eff is column (p + j) of the source
/// series; the q-th n-row block of y at column j is column (p + j - (q+1)).
struct LaggedDesign {
  int n = 0;
  int p = 0;
  long m = 0;
  Matrix x_eff;  // n x m
  Matrix y;      // (n*p) x m
};

/// Trims the first p columns; throws if t <= p.
LaggedDesign build_lagged_design(const TimeSeries& x, int p);

/// Exact acyclicity oracle via Kahn's topological sort.
bool is_dag(const BoolMatrix& support);

/// Entry (i,j) is true iff |w(i,j)| > tau.
BoolMatrix threshold_support(const Matrix& w, double tau);

}  // namespace svardag
