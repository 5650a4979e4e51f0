#pragma once

#include "linefig/matrix.hpp"

namespace linefig {

/// Projects the centred rows of `X` onto its top-`dims` principal axes
/// (covariance eigenvectors by decreasing eigenvalue). Each axis is signed so
/// that its largest-magnitude loading is positive.
Matrix pca_project(const Matrix& X, int dims);

/// The principal axes used by pca_project, one per column.
Matrix principal_axes(const Matrix& X, int dims);

}  // namespace linefig
