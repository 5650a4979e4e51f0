#pragma once

#include <Eigen/Dense>

namespace linefig {

/// Dense row-major matrix; one row per observation.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace linefig
