#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hermnuc/quadrature.hpp"
#include "hermnuc/symbol.hpp"
#include "hermnuc/transform.hpp"

namespace hermnuc {

/// Samples K_m(x_i, x_j) = sum_{|nu| <= N} m(x_i, nu) phi_nu(x_i) phi_nu(x_j)
/// over the grid points.
struct KernelMatrix {
  QuadratureGrid grid;
  int cutoff = 0;
  Eigen::MatrixXd entries;

  bool is_symmetric(double tolerance) const;
  /// Long-format CSV: i,j,x_i coordinates,y_j coordinates,value.
  void write_csv(std::ostream& out) const;
};

/// Galerkin matrix A[mu][nu] = <T_m phi_nu, phi_mu> on the truncated basis.
struct GalerkinMatrix {
  IndexSetPtr basis;
  Eigen::MatrixXd entries;

  double operator()(const MultiIndex& mu, const MultiIndex& nu) const;
};

/// M(i, a) = m(x_i, nu_a); throws EvaluationError on non-finite values.
Eigen::MatrixXd symbol_samples(const Symbol& symbol, const IndexSet& basis,
                               const QuadratureGrid& grid);

/// T_m f(x) = sum_{|nu| <= N} m(x, nu) f^(phi_nu) phi_nu(x), with the
/// coefficients taken from forward_transform on `grid`.
double apply(const Symbol& symbol, const Function& f, int cutoff, const QuadratureGrid& grid,
             std::span<const double> x);

/// T_m applied to known coefficients, evaluated at x.
double apply_coefficients(const Symbol& symbol, const CoefficientVector& coefficients,
                          std::span<const double> x);

/// T_m f at every grid point, f given by its samples.
std::vector<double> apply_on_grid(const Symbol& symbol, std::span<const double> samples,
                                  int cutoff, const QuadratureGrid& grid);

KernelMatrix assemble_kernel(const Symbol& symbol, int cutoff, const QuadratureGrid& grid);

/// Quadrature application sum_j W_j exp(|x_j|^2) K(x_i, x_j) f(x_j).
std::vector<double> apply_kernel(const KernelMatrix& kernel, std::span<const double> samples);

GalerkinMatrix coefficient_matrix(const Symbol& symbol, int cutoff, const QuadratureGrid& grid);

}  // namespace hermnuc
