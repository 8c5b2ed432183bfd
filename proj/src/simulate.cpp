#include "svardag/simulate.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace svardag {

void SvarmSpec::validate() const {
  if (n < 2) throw std::invalid_argument("SvarmSpec: n must be >= 2");
  if (p < 0) throw std::invalid_argument("SvarmSpec: p must be >= 0");
  if (t < p + 1) throw std::invalid_argument("SvarmSpec: t must be >= p + 1");
  if (!(weight_low > 0.0) || weight_low > weight_high) {
    throw std::invalid_argument("SvarmSpec: need 0 < weight_low <= weight_high");
  }
  if (avg_degree_w < 0.0 || avg_degree_a < 0.0) {
    throw std::invalid_argument("SvarmSpec: average degrees must be >= 0");
  }
  if (noise_sigma < 0.0) throw std::invalid_argument("SvarmSpec: noise_sigma must be >= 0");
  if (burn_in < 0) throw std::invalid_argument("SvarmSpec: burn_in must be >= 0");
}

DagWeights gen_er_dag(int n, double avg_degree, double weight_low, double weight_high,
                      std::mt19937_64& rng) {
  if (avg_degree > n - 1) {
    throw std::invalid_argument("degree too large");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(weight_low, weight_high);
  const double edge_prob = n > 1 ? avg_degree / (n - 1) : 0.0;

  Matrix tri = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (unit(rng) < edge_prob) {
        tri(i, j) = weight(rng);
      }
    }
  }
  // one shared permutation of rows and columns
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      w(perm[i], perm[j]) = tri(i, j);
    }
  }
  return DagWeights(std::move(w));
}

LaggedWeights gen_lagged(int n, int p, double avg_degree, double weight_low, double weight_high,
                         double decay_rate, std::mt19937_64& rng) {
  if (p < 0) {
    throw std::invalid_argument("gen_lagged: p must be >= 0");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(weight_low, weight_high);
  const double entry_prob = avg_degree / (2.0 * n);

  LaggedWeights out(n, p);
  for (int q = 1; q <= p; ++q) {
    const double decay = std::exp(-decay_rate * q);
    auto block = out.lag(q - 1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (unit(rng) < entry_prob) {
          block(i, j) = weight(rng) * decay;
        }
      }
    }
  }
  return out;
}

double companion_spectral_radius(const DagWeights& w, const LaggedWeights& a) {
  const int n = w.n;
  const int p = a.p;
  if (p == 0) {
    return 0.0;
  }
  Matrix iw = Matrix::Identity(n, n) - w.w.transpose();
  Eigen::PartialPivLU<Matrix> lu(iw);
  Matrix companion = Matrix::Zero(static_cast<long>(n) * p, static_cast<long>(n) * p);
  for (int q = 0; q < p; ++q) {
    companion.block(0, static_cast<long>(q) * n, n, n) = lu.solve(a.lag(q).transpose());
  }
  for (int q = 0; q + 1 < p; ++q) {
    companion.block(static_cast<long>(q + 1) * n, static_cast<long>(q) * n, n, n) =
        Matrix::Identity(n, n);
  }
  return companion.eigenvalues().cwiseAbs().maxCoeff();
}

GroundTruth simulate_svarm(const SvarmSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);

  DagWeights w;
  LaggedWeights a;
  bool stable = false;
  for (int attempt = 0; attempt < 20 && !stable; ++attempt) {
    w = gen_er_dag(spec.n, spec.avg_degree_w, spec.weight_low, spec.weight_high, rng);
    a = gen_lagged(spec.n, spec.p, spec.avg_degree_a, spec.weight_low, spec.weight_high,
                   spec.decay_rate, rng);
    stable = companion_spectral_radius(w, a) < 0.99;
  }
  if (!stable) {
    throw std::runtime_error("unstable process specification");
  }

  const int n = spec.n;
  const long total = spec.t + spec.burn_in;
  Eigen::PartialPivLU<Matrix> lu(Matrix::Identity(n, n) - w.w.transpose());

  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix x(n, total);
  Matrix z(n, total);
  Eigen::VectorXd u(n);
  for (long t = 0; t < total; ++t) {
    for (int i = 0; i < n; ++i) {
      z(i, t) = spec.noise_sigma > 0.0 ? spec.noise_sigma * gauss(rng) : 0.0;
    }
    u = z.col(t);
    for (int q = 1; q <= spec.p && q <= t; ++q) {
      u.noalias() += a.lag(q - 1).transpose() * x.col(t - q);
    }
    x.col(t) = lu.solve(u);
  }

  GroundTruth out;
  out.w_true = std::move(w);
  out.a_true = std::move(a);
  out.x = TimeSeries(x.rightCols(spec.t));
  out.z = z.rightCols(spec.t);
  return out;
}

}  // namespace svardag
