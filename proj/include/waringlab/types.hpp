#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace waringlab {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
/// Row-major dense complex matrix used for catalecticants, tangent spans and
/// coordinate stacks.
using DenseMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Exponent = std::vector<int>;
using Seed = std::uint64_t;

/// Execution policy for the data-parallel kernels. Both policies produce
/// bit-identical results; `serial` is the reference path.
enum class Exec { serial, parallel };

}  // namespace waringlab
