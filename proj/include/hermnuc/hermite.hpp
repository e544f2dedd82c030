#pragma once

#include <span>
#include <vector>

#include "hermnuc/multi_index.hpp"

namespace hermnuc {

/// Normalized Hermite function
///   phi_k(x) = (2^k k! sqrt(pi))^{-1/2} H_k(x) exp(-x^2/2),
/// evaluated by the normalized three-term recurrence
///   phi_{k+1} = x sqrt(2/(k+1)) phi_k - sqrt(k/(k+1)) phi_{k-1}.
/// The Gaussian factor is carried as a log-scale, so neither factorials nor
/// exp(-x^2/2) over/underflow before the final multiplication.
double hermite_function_1d(int order, double x);

/// phi_0(x), ..., phi_{max_order}(x) in one recurrence sweep.
std::vector<double> hermite_table_1d(int max_order, double x);

/// Tensor product prod_j phi_{nu_j}(x_j).
double hermite_function_nd(const MultiIndex& nu, std::span<const double> x);

/// Oscillator eigenvalue lambda_nu = 2|nu| + n for H = -Laplacian + |x|^2.
double eigenvalue(const MultiIndex& nu);

}  // namespace hermnuc
