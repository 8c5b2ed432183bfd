#include "svardag/objective.hpp"

#include "svardag/acyclicity.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace svardag {

namespace {

void check_shapes(const Matrix& w, const Matrix& a, const LaggedDesign& design) {
  if (w.rows() != design.n || w.cols() != design.n) {
    throw std::invalid_argument("objective: shape mismatch between W and design");
  }
  if (a.rows() != static_cast<long>(design.n) * design.p || a.cols() != design.n) {
    throw std::invalid_argument("objective: shape mismatch between A and design");
  }
  if (design.x_eff.cols() != design.m || design.y.cols() != design.m) {
    throw std::invalid_argument("objective: shape mismatch within design");
  }
}

double penalty_value(const Matrix& w, const Matrix& a, const Penalties& pen, bool signed_a) {
  const double pw = pen.lambda_w * w.sum();
  const double pa = signed_a ? pen.lambda_a * a.cwiseAbs().sum() : pen.lambda_a * a.sum();
  return pw + pa;
}

}  // namespace

Matrix residual(const Matrix& w, const Matrix& a, const LaggedDesign& design) {
  check_shapes(w, a, design);
  Matrix r = design.x_eff;
  r.noalias() -= w.transpose() * design.x_eff;
  if (design.p > 0) {
    r.noalias() -= a.transpose() * design.y;
  }
  return r;
}

double score(const Matrix& w, const Matrix& a, const LaggedDesign& design, const Penalties& pen,
             bool signed_a) {
  const Matrix r = residual(w, a, design);
  return 0.5 / static_cast<double>(design.m) * r.squaredNorm() + penalty_value(w, a, pen, signed_a);
}

double lagrangian_value(const Matrix& w, const Matrix& a, const LaggedDesign& design, const Penalties& pen,
                        const MultiplierState& mult, double s, bool signed_a) {
  const double h = h_value(w, s);
  return score(w, a, design, pen, signed_a) + mult.alpha * h + 0.5 * mult.c * h * h;
}

Gradients lagrangian_gradients(const Matrix& w, const Matrix& a, const LaggedDesign& design,
                               const Penalties& pen, const MultiplierState& mult, double s,
                               bool signed_a) {
  const Matrix r = residual(w, a, design);
  const double inv_m = 1.0 / static_cast<double>(design.m);
  MMatrixFactor factor(w, s);
  const double h = factor.h();  // throws when out of domain

  Gradients g;
  g.w.noalias() = -inv_m * (design.x_eff * r.transpose());
  g.w.array() += pen.lambda_w;
  g.w.noalias() += (mult.alpha + mult.c * h) * factor.gradient();

  if (design.p > 0) {
    g.a.noalias() = -inv_m * (design.y * r.transpose());
    if (signed_a) {
      g.a.noalias() += pen.lambda_a * a.unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
    } else {
      g.a.array() += pen.lambda_a;
    }
  } else {
    g.a.resize(0, design.n);
  }
  return g;
}

QuadraticCache::QuadraticCache(const LaggedDesign& design)
    : m_(design.m), n_(design.n), np_(static_cast<int>(design.y.rows())) {
  const int dim = n_ + np_;
  second_moment_.resize(dim, dim);
  second_moment_.topLeftCorner(n_, n_).noalias() = design.x_eff * design.x_eff.transpose();
  if (np_ > 0) {
    second_moment_.topRightCorner(n_, np_).noalias() = design.x_eff * design.y.transpose();
    second_moment_.bottomLeftCorner(np_, n_) = second_moment_.topRightCorner(n_, np_).transpose();
    second_moment_.bottomRightCorner(np_, np_).noalias() = design.y * design.y.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(second_moment_);
  factor_.noalias() = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

double QuadraticCache::data_value(const Matrix& w, const Matrix& a) const {
  Matrix g(n_ + np_, n_);
  g.topRows(n_) = -w;
  g.topRows(n_).diagonal().array() += 1.0;
  if (np_ > 0) {
    g.bottomRows(np_) = -a;
  }
  const Matrix fg = factor_.transpose() * g;
  return 0.5 / static_cast<double>(m_) * fg.squaredNorm();
}

void QuadraticCache::add_data_gradients(const Matrix& w, const Matrix& a, Matrix& gw, Matrix& ga) const {
  Matrix g(n_ + np_, n_);
  g.topRows(n_) = -w;
  g.topRows(n_).diagonal().array() += 1.0;
  if (np_ > 0) {
    g.bottomRows(np_) = -a;
  }
  const Matrix sg = second_moment_ * g;
  const double inv_m = 1.0 / static_cast<double>(m_);
  gw.noalias() -= inv_m * sg.topRows(n_);
  if (np_ > 0) {
    ga.noalias() -= inv_m * sg.bottomRows(np_);
  }
}

}  // namespace svardag
