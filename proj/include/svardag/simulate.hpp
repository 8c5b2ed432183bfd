#pragma once

#include "svardag/model.hpp"

#include <cstdint>
#include <random>

namespace svardag {

/// Generative recipe for a synthetic benchmark instance.
struct SvarmSpec {
  int n = 50;
  int p = 2;
  double avg_degree_w = 4.0;
  double avg_degree_a = 1.0;
  double weight_low = 0.1;
  double weight_high = 0.5;
  double decay_rate = 1.5;    // lag q scaled by exp(-decay_rate * q)
  double noise_sigma = 1.0;
  long t = 5000;
  int burn_in = 100;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GroundTruth {
  DagWeights w_true;
  LaggedWeights a_true;
  TimeSeries x;
  Matrix z;  // noise driving the kept samples, n x t
};

/// Acyclic non-negative weights: strictly-lower-triangular entries drawn with
/// probability avg_degree/(n-1), then one shared row/column permutation.
DagWeights gen_er_dag(int n, double avg_degree, double weight_low, double weight_high,
                      std::mt19937_64& rng);

/// Lag blocks drawn entrywise (self-lags allowed) with probability
/// avg_degree/(2n), weights scaled by exp(-decay_rate * q) for lag q.
LaggedWeights gen_lagged(int n, int p, double avg_degree, double weight_low, double weight_high,
                         double decay_rate, std::mt19937_64& rng);

/// Largest eigenvalue magnitude of the stacked one-lag form of the process;
/// below 1 certifies stability. Zero when p = 0.
double companion_spectral_radius(const DagWeights& w, const LaggedWeights& a);

/// Forward recursion x_t = (I - W^T)^{-1} (sum_q A_q^T x_{t-q} + z_t) from a
/// zero state; the first burn_in samples are discarded. Unstable draws
/// (companion radius >= 0.99) are resampled up to 20 times.
GroundTruth simulate_svarm(const SvarmSpec& spec);

}  // namespace svardag
