#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace hermnuc {

/// Eigenvalues of a real square matrix: balancing, Householder reduction
/// to upper Hessenberg form, then Francis double-shift QR with deflation.
/// Complex eigenvalues come in adjacent conjugate pairs. Throws
/// NumericalError when an eigenvalue fails to converge.
std::vector<std::complex<double>> eigenvalues(Eigen::MatrixXd a);

/// In-place reduction to upper Hessenberg form by Householder reflections.
void reduce_to_hessenberg(Eigen::MatrixXd& a);

}  // namespace hermnuc
