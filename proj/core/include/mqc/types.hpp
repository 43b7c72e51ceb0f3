#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace mqc {

using Complex = std::complex<double>;
using Index = Eigen::Index;

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Bit pattern of a multiplicative basis state; qubit 1 is the most significant bit.
using StateBits = std::uint64_t;

}  // namespace mqc
