#include "svardag/objective.hpp"

#include "svardag/acyclicity.hpp"
#include "svardag/simulate.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace svardag;

namespace {

LaggedDesign random_design(int n, int p, long t, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix data(n, t);
  for (long j = 0; j < t; ++j) {
    for (int i = 0; i < n; ++i) {
      data(i, j) = gauss(rng);
    }
  }
  return build_lagged_design(TimeSeries{data}, p);
}

}  // namespace

TEST_CASE("residual basics") {
  std::mt19937_64 rng(1);
  const LaggedDesign d = random_design(3, 2, 40, rng);
  const Matrix w = Matrix::Zero(3, 3);
  const Matrix a = Matrix::Zero(6, 3);
  CHECK(residual(w, a, d) == d.x_eff);

  const LaggedDesign single = build_lagged_design(TimeSeries{(Matrix(1, 1) << 2).finished()}, 0);
  CHECK(residual(Matrix::Zero(1, 1), Matrix(0, 1), single)(0, 0) == 2);
}

TEST_CASE("residual vanishes on noiseless model data") {
  SvarmSpec spec;
  spec.n = 6;
  spec.p = 2;
  spec.t = 60;
  spec.noise_sigma = 0.0;
  spec.seed = 4;
  // noiseless from a zero state stays zero; drive it with noise then re-check
  // the identity on noisy data instead: R(true params) must equal Z_eff.
  spec.noise_sigma = 1.0;
  const GroundTruth truth = simulate_svarm(spec);
  const LaggedDesign d = build_lagged_design(truth.x, spec.p);
  const Matrix r = residual(truth.w_true.w, truth.a_true.stacked, d);
  const Matrix z_eff = truth.z.rightCols(d.m);
  CHECK((r - z_eff).norm() < 1e-10 * truth.x.x.norm());
}

TEST_CASE("residual shape mismatch") {
  std::mt19937_64 rng(2);
  const LaggedDesign d = random_design(3, 1, 20, rng);
  CHECK_THROWS_AS(residual(Matrix::Zero(4, 4), Matrix::Zero(3, 3), d), std::invalid_argument);
  CHECK_THROWS_AS(residual(Matrix::Zero(3, 3), Matrix::Zero(6, 3), d), std::invalid_argument);
}

TEST_CASE("score at zero and at the truth") {
  std::mt19937_64 rng(3);
  const LaggedDesign d = random_design(4, 1, 50, rng);
  const double base = score(Matrix::Zero(4, 4), Matrix::Zero(4, 4), d, Penalties{});
  CHECK(base == doctest::Approx(0.5 / d.m * d.x_eff.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("score penalty term on zero data") {
  // with X = 0 the quadratic term stays zero and the score moves by lambda_w
  LaggedDesign d;
  d.n = 2;
  d.p = 0;
  d.m = 5;
  d.x_eff = Matrix::Zero(2, 5);
  d.y = Matrix(0, 5);
  Penalties pen{1.0, 0.0};
  Matrix w = Matrix::Zero(2, 2);
  const double before = score(w, Matrix(0, 2), d, pen);
  w(0, 1) = 1.0;
  const double after = score(w, Matrix(0, 2), d, pen);
  CHECK(after - before == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("signed mode penalizes |A|") {
  std::mt19937_64 rng(5);
  const LaggedDesign d = random_design(2, 1, 30, rng);
  Matrix a(2, 2);
  a << -0.5, 0.25, 0.0, -1.0;
  const Matrix w = Matrix::Zero(2, 2);
  const double plain = score(w, Matrix::Zero(2, 2), d, Penalties{0.0, 2.0}, true);
  CHECK(score(w, a, d, Penalties{0.0, 2.0}, true) - plain ==
        doctest::Approx(2.0 * 1.75).epsilon(1e-12));
}

TEST_CASE("lagrangian_value adds the multiplier terms") {
  Matrix w(2, 2);
  w << 0, 0.5, 0.5, 0;  // h = -log(0.75)
  std::mt19937_64 rng(6);
  const LaggedDesign d = random_design(2, 1, 25, rng);
  const Matrix a = Matrix::Zero(2, 2);
  const double h = h_value(w, 1.0);
  const double s0 = score(w, a, d, Penalties{});
  const double lv = lagrangian_value(w, a, d, Penalties{}, MultiplierState{1.0, 2.0}, 1.0);
  CHECK(lv == doctest::Approx(s0 + h + h * h).epsilon(1e-12));

  // a DAG-supported point contributes nothing
  Matrix dag(2, 2);
  dag << 0, 0.4, 0, 0;
  CHECK(lagrangian_value(dag, a, d, Penalties{}, MultiplierState{3.0, 7.0}, 1.0) ==
        doctest::Approx(score(dag, a, d, Penalties{})).epsilon(1e-12));
}

TEST_CASE("lagrangian_gradients hand case at the origin") {
  std::mt19937_64 rng(7);
  const LaggedDesign d = random_design(3, 0, 40, rng);
  const Gradients g = lagrangian_gradients(Matrix::Zero(3, 3), Matrix(0, 3), d, Penalties{},
                                           MultiplierState{1.0, 0.0}, 1.0);
  const Matrix expected =
      -(d.x_eff * d.x_eff.transpose()) / static_cast<double>(d.m) + Matrix::Identity(3, 3);
  CHECK(testutil::relative_error(g.w, expected) < 1e-12);
  CHECK(g.a.rows() == 0);
}

TEST_CASE("gradients vanish at true parameters on zero-residual data") {
  SvarmSpec spec;
  spec.n = 5;
  spec.p = 1;
  spec.t = 200;
  spec.seed = 11;
  const GroundTruth truth = simulate_svarm(spec);
  LaggedDesign d = build_lagged_design(truth.x, spec.p);
  // rebuild x_eff so the model holds exactly with the stored lag block
  const Matrix iw = Matrix::Identity(spec.n, spec.n) - truth.w_true.w.transpose();
  d.x_eff = iw.partialPivLu().solve(truth.a_true.stacked.transpose() * d.y);
  REQUIRE(residual(truth.w_true.w, truth.a_true.stacked, d).cwiseAbs().maxCoeff() < 1e-12);
  const Gradients g = lagrangian_gradients(truth.w_true.w, truth.a_true.stacked, d, Penalties{},
                                           MultiplierState{0.0, 0.0}, 1.0);
  CHECK(g.a.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(g.w.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("lagrangian_gradients match finite differences") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int p = static_cast<int>(rng() % 4);
    const LaggedDesign d = random_design(n, p, 80 + p, rng);
    const Matrix w = testutil::random_in_domain(n, 0.3 + 0.4 * unit(rng), rng);
    const Matrix a = testutil::random_nonneg(static_cast<long>(n) * p, n, 0.4, rng);
    const Penalties pen{0.05, 0.03};
    const MultiplierState mult{0.7, 2.5};
    const Gradients g = lagrangian_gradients(w, a, d, pen, mult, 1.0);

    const double err_w = testutil::masked_fd_relative_error(
        [&](const Matrix& m) { return lagrangian_value(m, a, d, pen, mult, 1.0); }, w, 1e-6, g.w);
    CHECK(err_w < 1e-5);
    if (p > 0) {
      const Matrix fd_a = testutil::finite_difference(
          [&](const Matrix& m) { return lagrangian_value(w, m, d, pen, mult, 1.0); }, a, 1e-6);
      CHECK(testutil::relative_error(fd_a, g.a) < 1e-5);
    }
  }
}

TEST_CASE("signed mode gradient uses the sign of A") {
  std::mt19937_64 rng(14);
  const LaggedDesign d = random_design(2, 1, 30, rng);
  Matrix a(2, 2);
  a << -0.5, 0.25, 0.0, -1.0;
  const Matrix w = Matrix::Zero(2, 2);
  const Penalties pen{0.0, 3.0};
  const Gradients g = lagrangian_gradients(w, a, d, pen, MultiplierState{0.0, 0.0}, 1.0, true);
  const Gradients g0 = lagrangian_gradients(w, a, d, Penalties{}, MultiplierState{0.0, 0.0}, 1.0, true);
  Matrix diff = g.a - g0.a;
  CHECK(diff(0, 0) == doctest::Approx(-3.0));
  CHECK(diff(0, 1) == doctest::Approx(3.0));
  CHECK(diff(1, 0) == doctest::Approx(0.0));  // subgradient 0 at 0
  CHECK(diff(1, 1) == doctest::Approx(-3.0));
}

TEST_CASE("quadratic cache agrees with the residual path") {
  std::mt19937_64 rng(15);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const int p = static_cast<int>(rng() % 3);
    const LaggedDesign d = random_design(n, p, 60, rng);
    const QuadraticCache cache(d);
    const Matrix w = testutil::random_nonneg(n, n, 0.5, rng);
    const Matrix a = testutil::random_nonneg(static_cast<long>(n) * p, n, 0.5, rng);

    const Matrix r = residual(w, a, d);
    const double direct = 0.5 / static_cast<double>(d.m) * r.squaredNorm();
    CHECK(cache.data_value(w, a) == doctest::Approx(direct).epsilon(1e-10));

    Matrix gw = Matrix::Zero(n, n);
    Matrix ga = Matrix::Zero(static_cast<long>(n) * p, n);
    cache.add_data_gradients(w, a, gw, ga);
    const Matrix gw_direct = -(d.x_eff * r.transpose()) / static_cast<double>(d.m);
    CHECK(testutil::relative_error(gw, gw_direct) < 1e-10);
    if (p > 0) {
      const Matrix ga_direct = -(d.y * r.transpose()) / static_cast<double>(d.m);
      CHECK(testutil::relative_error(ga, ga_direct) < 1e-10);
    }
  }
}

TEST_CASE("p=0 score and gradients reduce to the static case") {
  std::mt19937_64 rng(16);
  const LaggedDesign d = random_design(4, 0, 50, rng);
  const Matrix w = testutil::random_in_domain(4, 0.5, rng);
  const Matrix a(0, 4);
  const Matrix r = d.x_eff - w.transpose() * d.x_eff;
  CHECK(score(w, a, d, Penalties{}) ==
        doctest::Approx(0.5 / d.m * r.squaredNorm()).epsilon(1e-12));
  const Gradients g = lagrangian_gradients(w, a, d, Penalties{}, MultiplierState{0.0, 0.0}, 1.0);
  CHECK(g.a.rows() == 0);
  CHECK(testutil::relative_error(g.w, -(d.x_eff * r.transpose()) / double(d.m)) < 1e-10);
}
