#include "svardag/model.hpp"

#include <queue>
#include <sstream>
#include <stdexcept>

namespace svardag {

DagWeights::DagWeights(Matrix weights) : n(static_cast<int>(weights.rows())), w(std::move(weights)) {
  if (w.rows() != w.cols()) {
    throw std::invalid_argument("DagWeights: matrix must be square");
  }
}

void DagWeights::validate(bool require_nonnegative) const {
  if (w.rows() != n || w.cols() != n) {
    throw std::invalid_argument("DagWeights: shape mismatch");
  }
  if (require_nonnegative && (w.array() < 0.0).any()) {
    throw std::invalid_argument("DagWeights: negative entry");
  }
  if (w.diagonal().cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("DagWeights: nonzero diagonal");
  }
}

LaggedWeights::LaggedWeights(int nodes, int lags)
    : n(nodes), p(lags), stacked(Matrix::Zero(static_cast<long>(nodes) * lags, nodes)) {}

LaggedWeights::LaggedWeights(int nodes, Matrix stacked_mats) : n(nodes), stacked(std::move(stacked_mats)) {
  if (n <= 0 || stacked.cols() != n || stacked.rows() % n != 0) {
    throw std::invalid_argument("LaggedWeights: stacked matrix must be (n*p) x n");
  }
  p = static_cast<int>(stacked.rows() / n);
}

LaggedWeights LaggedWeights::from_blocks(const std::vector<Matrix>& mats) {
  LaggedWeights out;
  if (mats.empty()) {
    return out;
  }
  out.n = static_cast<int>(mats.front().rows());
  out.p = static_cast<int>(mats.size());
  out.stacked.resize(static_cast<long>(out.n) * out.p, out.n);
  for (int q = 0; q < out.p; ++q) {
    if (mats[q].rows() != out.n || mats[q].cols() != out.n) {
      throw std::invalid_argument("LaggedWeights: lag blocks must all be n x n");
    }
    out.stacked.middleRows(static_cast<long>(q) * out.n, out.n) = mats[q];
  }
  return out;
}

Eigen::Block<Matrix> LaggedWeights::lag(int q) {
  return stacked.middleRows(static_cast<long>(q) * n, n);
}

Eigen::Block<const Matrix> LaggedWeights::lag(int q) const {
  return stacked.middleRows(static_cast<long>(q) * n, n);
}

std::vector<Matrix> LaggedWeights::blocks() const {
  std::vector<Matrix> out;
  out.reserve(p);
  for (int q = 0; q < p; ++q) {
    out.push_back(lag(q));
  }
  return out;
}

TimeSeries::TimeSeries(Matrix samples) : n(static_cast<int>(samples.rows())), t(samples.cols()), x(std::move(samples)) {}

void TimeSeries::validate() const {
  if (x.rows() != n || x.cols() != t || t < 1) {
    throw std::invalid_argument("TimeSeries: shape mismatch");
  }
  if (!x.allFinite()) {
    throw std::invalid_argument("TimeSeries: non-finite entry");
  }
}

LaggedDesign build_lagged_design(const TimeSeries& x, int p) {
  if (p < 0) {
    throw std::invalid_argument("build_lagged_design: lag order must be >= 0");
  }
  if (x.t <= p) {
    throw std::invalid_argument("insufficient samples for lag order");
  }
  LaggedDesign d;
  d.n = x.n;
  d.p = p;
  d.m = x.t - p;
  d.x_eff = x.x.rightCols(d.m);
  d.y.resize(static_cast<long>(x.n) * p, d.m);
  for (int q = 0; q < p; ++q) {
    // lag q+1: column j holds x(:, p + j - (q+1))
    d.y.middleRows(static_cast<long>(q) * x.n, x.n) = x.x.middleCols(p - q - 1, d.m);
  }
  return d;
}

bool is_dag(const BoolMatrix& support) {
  if (support.rows() != support.cols()) {
    throw std::invalid_argument("is_dag: support must be square");
  }
  const int n = static_cast<int>(support.rows());
  std::vector<int> indegree(n, 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (support(i, j) && i != j) {
        ++indegree[j];
      }
    }
    if (support(j, j)) {
      return false;  // self-loop
    }
  }
  std::queue<int> ready;
  for (int j = 0; j < n; ++j) {
    if (indegree[j] == 0) {
      ready.push(j);
    }
  }
  int processed = 0;
  while (!ready.empty()) {
    const int i = ready.front();
    ready.pop();
    ++processed;
    for (int j = 0; j < n; ++j) {
      if (support(i, j) && i != j && --indegree[j] == 0) {
        ready.push(j);
      }
    }
  }
  return processed == n;
}

BoolMatrix threshold_support(const Matrix& w, double tau) {
  if (tau < 0.0) {
    throw std::invalid_argument("threshold_support: tau must be >= 0");
  }
  return (w.array().abs() > tau).matrix();
}

}  // namespace svardag
