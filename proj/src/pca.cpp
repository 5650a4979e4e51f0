#include "linefig/pca.hpp"

#include <cmath>

#include "linefig/errors.hpp"

namespace linefig {

namespace {

Matrix centred(const Matrix& X) {
  const Eigen::RowVectorXd mean = X.colwise().mean();
  return X.rowwise() - mean;
}

}  // namespace

Matrix principal_axes(const Matrix& X, int dims) {
  if (dims < 1 || dims > X.cols()) throw ValidationError("pca: invalid number of components");
  if (X.rows() < dims) throw ValidationError("pca: fewer rows than components");
  const Matrix xc = centred(X);
  const Eigen::MatrixXd cov = (xc.transpose() * xc) / std::max<double>(1.0, static_cast<double>(X.rows() - 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw NumericalError("pca: eigen decomposition failed");

  const auto d = X.cols();
  Matrix axes(d, dims);
  for (int c = 0; c < dims; ++c) {
    Eigen::VectorXd v = solver.eigenvectors().col(d - 1 - c);  // eigenvalues ascend
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < d; ++i) {
      if (std::abs(v(i)) > std::abs(v(arg)) + 1e-12) arg = i;
    }
    if (v(arg) < 0) v = -v;
    axes.col(c) = v;
  }
  return axes;
}

Matrix pca_project(const Matrix& X, int dims) {
  const Matrix axes = principal_axes(X, dims);
  const Matrix xc = centred(X);
  // Plain dot products in a fixed order: a blocked product may round rows
  // differently depending on their position, and equal rows must project
  // to equal points.
  Matrix out(X.rows(), dims);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (int c = 0; c < dims; ++c) {
      double v = 0.0;
      for (Eigen::Index k = 0; k < X.cols(); ++k) v += xc(i, k) * axes(k, c);
      out(i, c) = v;
    }
  }
  return out;
}

}  // namespace linefig
