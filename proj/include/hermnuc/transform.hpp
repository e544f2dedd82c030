#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "hermnuc/multi_index.hpp"
#include "hermnuc/quadrature.hpp"

namespace hermnuc {

/// Fourier-Hermite coefficients f^(phi_nu) for every |nu| <= N, stored
/// densely in graded order.
class CoefficientVector {
 public:
  CoefficientVector(IndexSetPtr basis, std::vector<double> values);
  /// All-zero vector over {|nu| <= N}.
  CoefficientVector(int dimension, int cutoff);

  /// Unit vector e_nu.
  static CoefficientVector unit(int dimension, int cutoff, const MultiIndex& nu);

  int dimension() const noexcept { return basis_->dimension(); }
  int cutoff() const noexcept { return basis_->cutoff(); }
  std::size_t size() const noexcept { return values_.size(); }
  const IndexSet& basis() const noexcept { return *basis_; }
  const IndexSetPtr& basis_ptr() const noexcept { return basis_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double operator[](const MultiIndex& nu) const;
  double& operator[](const MultiIndex& nu);
  double at(std::size_t i) const { return values_[i]; }

  /// CSV with columns nu1..nun,value.
  void write_csv(std::ostream& out) const;

 private:
  std::size_t position_or_throw(const MultiIndex& nu) const;

  IndexSetPtr basis_;
  std::vector<double> values_;
};

/// values[nu] = integrate(grid, f * phi_nu) for |nu| <= N.
CoefficientVector forward_transform(const Function& f, int cutoff, const QuadratureGrid& grid);

/// Same with f given by its samples at the grid points.
CoefficientVector forward_transform_samples(std::span<const double> samples, int cutoff,
                                            const QuadratureGrid& grid);

/// Truncated inversion sum_{|nu| <= N} c[nu] phi_nu(x).
double inverse_transform(const CoefficientVector& c, std::span<const double> x);

/// Synthesis at every grid point.
std::vector<double> inverse_transform_on_grid(const CoefficientVector& c,
                                              const QuadratureGrid& grid);

}  // namespace hermnuc
