// types.hpp - common scalar/vector/matrix aliases

#pragma once

#include <complex>
#include <Eigen/Dense>

namespace uwofdm {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

} // namespace uwofdm
