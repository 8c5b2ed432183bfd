#include "svardag/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svardag {

double nfe(const Matrix& estimate, const Matrix& truth) {
  if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols()) {
    throw std::invalid_argument("nfe: shape mismatch");
  }
  const double denom = truth.squaredNorm();
  if (denom == 0.0) {
    throw std::invalid_argument("NFE undefined for zero reference");
  }
  return (truth - estimate).squaredNorm() / denom;
}

SupportScore support_f1(const Matrix& estimate, const Matrix& truth, double tau,
                        DiagonalPolicy diagonal) {
  if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols()) {
    throw std::invalid_argument("support_f1: shape mismatch");
  }
  long tp = 0;
  long fp = 0;
  long fn = 0;
  for (long j = 0; j < estimate.cols(); ++j) {
    for (long i = 0; i < estimate.rows(); ++i) {
      if (diagonal == DiagonalPolicy::exclude && i == j) {
        continue;
      }
      const bool est = std::abs(estimate(i, j)) > tau;
      const bool tru = truth(i, j) != 0.0;
      tp += est && tru;
      fp += est && !tru;
      fn += !est && tru;
    }
  }
  SupportScore s;
  s.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  s.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  s.f1 = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

namespace {

double interpolated_quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<size_t>(pos);
  if (lo + 1 >= sorted.size()) {
    return sorted.back();
  }
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

Quartiles aggregate(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("aggregate: empty list");
  }
  std::sort(values.begin(), values.end());
  Quartiles q;
  q.median = interpolated_quantile(values, 0.50);
  q.p25 = interpolated_quantile(values, 0.25);
  q.p75 = interpolated_quantile(values, 0.75);
  return q;
}

MetricsReport evaluate_metrics(const Matrix& w_est, const Matrix& a_est, const Matrix& w_true,
                               const Matrix& a_true, double tau) {
  MetricsReport r;
  r.nfe_w = nfe(w_est, w_true);
  const SupportScore sw = support_f1(w_est, w_true, tau, DiagonalPolicy::exclude);
  r.f1_w = sw.f1;
  r.precision_w = sw.precision;
  r.recall_w = sw.recall;
  if (a_true.size() > 0) {
    r.nfe_a = nfe(a_est, a_true);
    const SupportScore sa = support_f1(a_est, a_true, tau, DiagonalPolicy::include);
    r.f1_a = sa.f1;
    r.precision_a = sa.precision;
    r.recall_a = sa.recall;
  }
  return r;
}

}  // namespace svardag
