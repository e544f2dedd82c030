#pragma once

#include <filesystem>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hermnuc/operator.hpp"

namespace hermnuc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Hoelder conjugate p' with 1/p + 1/p' = 1 (1 <-> infinity).
double conjugate_exponent(double p);

/// Discrete L^p norm on the grid: (sum_i W_i e^{|x_i|^2} |f_i|^p)^{1/p},
/// or max_i |f_i| for p = infinity.
double lp_norm(const QuadratureGrid& grid, std::span<const double> samples, double p);

/// Finite-rank factorization K(x, y) ~ sum_k h_k(x) g_k(y), with h_k taken
/// in L^{p2} and g_k in L^{p1'}. Factors are stored as grid samples, one
/// column per term.
struct NuclearDecomposition {
  QuadratureGrid grid;
  int cutoff = 0;
  Eigen::MatrixXd h{};
  Eigen::MatrixXd g{};
  /// Retained singular values of the weighted kernel.
  Eigen::VectorXd singular_values{};
  double p1 = 2.0;
  double p2 = 2.0;
  double r = 1.0;
  double tol = 1e-12;
  /// (sum_k ||g_k||_{p1'}^r ||h_k||_{p2}^r)^{1/r}, an upper bound for n_r.
  double quasi_norm_bound = 0.0;
  /// max_{i,j} |K_ij - sum_k h_k(x_i) g_k(x_j)|.
  double reconstruction_error = 0.0;
  /// max_{i,j} |K_ij| of the source kernel.
  double kernel_max = 0.0;

  std::size_t rank() const noexcept { return static_cast<std::size_t>(h.cols()); }
  std::span<const double> h_factor(std::size_t k) const;
  std::span<const double> g_factor(std::size_t k) const;
};

/// Quasi-norm of an arbitrary factor pair.
double factor_quasi_norm(const QuadratureGrid& grid, const Eigen::MatrixXd& h,
                         const Eigen::MatrixXd& g, double p1, double p2, double r);

/// SVD of B = D K D with D = diag(sqrt(W_i e^{|x_i|^2})), truncated at
/// singular values <= tol * s_max, mapped back to h_k = s_k u_k / D and
/// g_k = v_k / D. For p1 = p2 = 2 this is the optimal (trace-norm)
/// factorization of the discretized operator.
NuclearDecomposition decompose_kernel(const KernelMatrix& kernel, double p1, double p2, double r,
                                      double tol = 1e-12);

struct SymbolDecompositionReport {
  double max_residual = 0.0;
  MultiIndex worst_index;
  std::size_t worst_node = 0;
  std::size_t checked = 0;
};

/// Checks m(x_i, nu) phi_nu(x_i) = sum_k h_k(x_i) g_k^(phi_nu) for all
/// |nu| <= N and grid nodes x_i.
SymbolDecompositionReport verify_symbol_decomposition(const Symbol& symbol,
                                                      const NuclearDecomposition& decomposition,
                                                      int cutoff);

/// sum_k h_k^(phi_nu) g_k^(phi_nu), which equals m(nu) for multipliers.
double recover_multiplier_symbol(const NuclearDecomposition& decomposition, const MultiIndex& nu);

/// Operator rebuilt from the factors:
///   (T f)(x_i) = sum_k h_k(x_i) integral g_k(y) f(y) dy.
std::vector<double> synthesize(const NuclearDecomposition& decomposition,
                               std::span<const double> samples);

/// Writes manifest.json plus h_<k>.csv / g_<k>.csv sample files.
void save_decomposition(const NuclearDecomposition& decomposition,
                        const std::filesystem::path& directory);

}  // namespace hermnuc
