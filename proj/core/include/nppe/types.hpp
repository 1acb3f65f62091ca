#pragma once

#include <Eigen/Core>

namespace nppe {

using Index = Eigen::Index;

/// n x N sample matrix; column i is sample x_i.
using DataMatrix = Eigen::MatrixXd;

}  // namespace nppe
