#pragma once

#include <Eigen/Core>

namespace perfusion {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

} // namespace perfusion
