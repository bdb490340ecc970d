#pragma once

#include <Eigen/Dense>

namespace gridgame {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

}  // namespace gridgame
