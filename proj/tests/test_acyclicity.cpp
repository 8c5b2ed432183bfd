#include "svardag/acyclicity.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace svardag;

TEST_CASE("h_value is zero at the origin and on triangular matrices") {
  CHECK(h_value(Matrix::Zero(3, 3), 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  std::mt19937_64 rng(2);
  for (double s : {0.7, 1.0, 2.5}) {
    Matrix w = testutil::random_nonneg(5, 5, 0.4, rng);
    w.triangularView<Eigen::Upper>().setZero();
    CHECK(std::abs(h_value(w, s)) < 1e-12);
  }
}

TEST_CASE("h_value 2x2 closed form") {
  Matrix w(2, 2);
  w << 0, 0.5, 0.5, 0;
  // det(I - W) = 1 - 0.25
  CHECK(h_value(w, 1.0) == doctest::Approx(-std::log(0.75)).epsilon(1e-12));
}

TEST_CASE("in_domain via 2x2 eigenvalue closed form") {
  CHECK(in_domain(Matrix::Zero(4, 4), 0.1));
  Matrix w(2, 2);
  w << 0, 1.5, 1, 0;  // rho = sqrt(1.5)
  CHECK_FALSE(in_domain(w, 1.0));
  CHECK(in_domain(w, 1.3));  // sqrt(1.5) ~ 1.2247
  w << 0, 0.5, 0.5, 0;  // rho = 0.5
  CHECK(in_domain(w, 1.0));
  CHECK_FALSE(in_domain(w, 0.5));  // boundary is excluded
}

TEST_CASE("in_domain agrees with an eigenvalue oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> target(0.05, 1.9);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const double rho = target(rng);
    if (std::abs(rho - 1.0) < 0.02) {
      continue;  // keep clear of the boundary
    }
    const Matrix w = testutil::random_in_domain(n, rho, rng);
    CHECK(in_domain(w, 1.0) == (testutil::spectral_radius(w) < 1.0));
  }
}

TEST_CASE("negative entries are rejected") {
  Matrix w(2, 2);
  w << 0, -0.1, 0, 0;
  CHECK_THROWS_WITH_AS(in_domain(w, 1.0), "domain requires non-negative weights",
                       std::invalid_argument);
  CHECK_THROWS_AS(h_value(w, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(h_gradient(w, 1.0), std::invalid_argument);
}

TEST_CASE("out-of-domain evaluation raises a domain error") {
  Matrix w(2, 2);
  w << 0, 1.5, 1, 0;
  CHECK_THROWS_WITH_AS(h_value(w, 1.0), "spectral radius not below s", std::domain_error);
  CHECK_THROWS_AS(h_gradient(w, 1.0), std::domain_error);
}

TEST_CASE("h_gradient closed forms") {
  CHECK(testutil::relative_error(h_gradient(Matrix::Zero(3, 3), 1.0), Matrix::Identity(3, 3)) <
        1e-14);
  Matrix w(2, 2);
  w << 0, 0.5, 0.5, 0;
  Matrix expected(2, 2);
  expected << 1, 0.5, 0.5, 1;
  expected /= 0.75;
  CHECK(testutil::relative_error(h_gradient(w, 1.0), expected) < 1e-12);
}

TEST_CASE("h_gradient matches central finite differences") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> target(0.2, 0.8);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Matrix w = testutil::random_in_domain(n, target(rng), rng);
    const Matrix grad = h_gradient(w, 1.0);
    const double err = testutil::masked_fd_relative_error(
        [](const Matrix& m) { return h_value(m, 1.0); }, w, 1e-6, grad);
    CHECK(err < 1e-5);
  }
}

TEST_CASE("h_gradient is entrywise non-negative on the domain") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix w = testutil::random_in_domain(5, 0.7, rng);
    CHECK(h_gradient(w, 1.0).minCoeff() >= -1e-12);
  }
}

TEST_CASE("DAG-supported points are never stationary") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double s : {0.5, 1.0, 2.0}) {
    for (int rep = 0; rep < 10; ++rep) {
      const int n = 3 + static_cast<int>(rng() % 5);
      Matrix w(n, n);
      w.setZero();
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
          if (unit(rng) < 0.5) {
            w(i, j) = 0.1 + 0.4 * unit(rng) * s;
          }
        }
      }
      CHECK(h_value(w, s) == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(h_gradient(w, s).cwiseAbs().maxCoeff() >= 1.0 / s);
    }
  }
}

TEST_CASE("h_value is non-negative across the domain") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> target(0.05, 0.95);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Matrix w = testutil::random_in_domain(n, target(rng), rng);
    CHECK(h_value(w, 1.0) >= 0.0);
  }
}

TEST_CASE("zero set of h matches the Kahn oracle on enumerated supports") {
  // n <= 6, up to 4 edges, all weights 0.5
  for (int n = 2; n <= 6; ++n) {
    long checked = 0;
    testutil::for_each_support(n, 4, [&](const BoolMatrix& support) {
      const Matrix w = support.cast<double>() * 0.5;
      REQUIRE(in_domain(w, 1.0));
      const bool zero = h_value(w, 1.0) < 1e-9;
      REQUIRE(zero == is_dag(support));
      ++checked;
    });
    CHECK(checked > 0);
  }
}
