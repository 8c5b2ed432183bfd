#pragma once

#include "svardag/model.hpp"

#include <vector>

namespace svardag {

struct SupportScore {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

struct MetricsReport {
  double nfe_w = 0.0;
  double nfe_a = 0.0;
  double f1_w = 0.0;
  double f1_a = 0.0;
  double precision_w = 0.0;
  double recall_w = 0.0;
  double precision_a = 0.0;
  double recall_a = 0.0;
};

/// ||truth - estimate||_F^2 / ||truth||_F^2. Throws on a zero reference.
double nfe(const Matrix& estimate, const Matrix& truth);

enum class DiagonalPolicy { exclude, include };

/// Precision/recall/F1 of the estimate's support (|entry| > tau) against the
/// truth's exact support (nonzero entries). Instantaneous matrices skip the
/// diagonal; stacked lag matrices count every position.
SupportScore support_f1(const Matrix& estimate, const Matrix& truth, double tau,
                        DiagonalPolicy diagonal = DiagonalPolicy::exclude);

struct Quartiles {
  double median = 0.0;
  double p25 = 0.0;
  double p75 = 0.0;
};

/// Median and quartiles with linear interpolation between order statistics.
Quartiles aggregate(std::vector<double> values);

/// All report fields at once; a-metrics pool the stacked lag matrix.
MetricsReport evaluate_metrics(const Matrix& w_est, const Matrix& a_est, const Matrix& w_true,
                               const Matrix& a_true, double tau);

}  // namespace svardag
