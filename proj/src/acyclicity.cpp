#include "svardag/acyclicity.hpp"

#include <cmath>
#include <stdexcept>

namespace svardag {

namespace {

void check_args(const Matrix& w, double s) {
  if (w.rows() != w.cols()) {
    throw std::invalid_argument("acyclicity: matrix must be square");
  }
  if (!(s > 0.0)) {
    throw std::invalid_argument("acyclicity: spectral bound s must be positive");
  }
  if ((w.array() < 0.0).any()) {
    throw std::invalid_argument("domain requires non-negative weights");
  }
}

}  // namespace

MMatrixFactor::MMatrixFactor(const Matrix& w, double s) : n_(static_cast<int>(w.rows())), s_(s) {
  check_args(w, s);
  lu_ = -w;
  lu_.diagonal().array() += s;
  ok_ = true;
  logdet_ = 0.0;
  for (int k = 0; k < n_; ++k) {
    const double pivot = lu_(k, k);
    if (!std::isfinite(pivot) || pivot <= 0.0) {
      ok_ = false;
      return;
    }
    logdet_ += std::log(pivot);
    const int rest = n_ - k - 1;
    if (rest > 0) {
      lu_.col(k).tail(rest) /= pivot;
      lu_.bottomRightCorner(rest, rest).noalias() -= lu_.col(k).tail(rest) * lu_.row(k).tail(rest);
    }
  }
}

double MMatrixFactor::log_det() const {
  if (!ok_) {
    throw std::domain_error("spectral radius not below s");
  }
  return logdet_;
}

double MMatrixFactor::h() const {
  return n_ * std::log(s_) - log_det();
}

Matrix MMatrixFactor::gradient() const {
  if (!ok_) {
    throw std::domain_error("spectral radius not below s");
  }
  Matrix inv = Matrix::Identity(n_, n_);
  lu_.triangularView<Eigen::UnitLower>().solveInPlace(inv);
  lu_.triangularView<Eigen::Upper>().solveInPlace(inv);
  return inv.transpose();
}

bool in_domain(const Matrix& w, double s) {
  return MMatrixFactor(w, s).in_domain();
}

double h_value(const Matrix& w, double s) {
  return MMatrixFactor(w, s).h();
}

Matrix h_gradient(const Matrix& w, double s) {
  return MMatrixFactor(w, s).gradient();
}

}  // namespace svardag
