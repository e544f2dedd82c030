#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hermnuc/multi_index.hpp"

namespace hermnuc {

using Function = std::function<double(std::span<const double>)>;

/// Per-axis weights integrate against exp(-x^2).
enum class WeightConvention { kGaussian };

/// Tensorized Gauss-Hermite rule on R^n. Points are ordered with the last
/// axis varying fastest. Besides the raw weights W_i (against exp(-|x|^2))
/// the grid stores the rescaled weights W_i exp(|x_i|^2), which are the
/// weights that approximate a plain integral over R^n.
class QuadratureGrid {
 public:
  /// Q-point rule per axis, 1 <= Q <= 512, tensorized over `dimension` axes.
  QuadratureGrid(int dimension, int nodes_per_axis);

  int dimension() const noexcept { return dimension_; }
  int nodes_per_axis() const noexcept { return nodes_per_axis_; }
  WeightConvention weight_convention() const noexcept { return WeightConvention::kGaussian; }
  std::size_t size() const noexcept { return weights_.size(); }

  const std::vector<double>& axis_nodes() const noexcept { return axis_nodes_; }
  const std::vector<double>& axis_weights() const noexcept { return axis_weights_; }
  const std::vector<double>& axis_scaled_weights() const noexcept { return axis_scaled_; }

  std::span<const double> point(std::size_t i) const {
    return {coordinates_.data() + i * static_cast<std::size_t>(dimension_),
            static_cast<std::size_t>(dimension_)};
  }
  /// Index of point i's node along `axis`.
  std::size_t axis_node(std::size_t i, int axis) const;
  double weight(std::size_t i) const { return weights_[i]; }
  double scaled_weight(std::size_t i) const { return scaled_[i]; }
  const std::vector<double>& scaled_weights() const noexcept { return scaled_; }

  /// CSV with one "node,weight" row per axis node.
  void write_csv(std::ostream& out) const;

  friend bool operator==(const QuadratureGrid& a, const QuadratureGrid& b) {
    return a.dimension_ == b.dimension_ && a.nodes_per_axis_ == b.nodes_per_axis_;
  }

 private:
  int dimension_;
  int nodes_per_axis_;
  std::vector<double> axis_nodes_;
  std::vector<double> axis_weights_;
  std::vector<double> axis_scaled_;
  std::vector<double> coordinates_;
  std::vector<double> weights_;
  std::vector<double> scaled_;
};

/// One-axis Gauss-Hermite rule (Golub-Welsch nodes).
QuadratureGrid gauss_hermite_rule(int nodes);

/// Default rule size for basis cutoff N.
inline int default_nodes(int cutoff) { return cutoff + 8; }

/// Approximates the integral of f over R^n: sum_i W_i exp(|x_i|^2) f(x_i).
double integrate(const QuadratureGrid& grid, const Function& f);

/// Same, for f already sampled on the grid points.
double integrate_samples(const QuadratureGrid& grid, std::span<const double> samples);

/// Matrix Phi with Phi(a, i) = phi_{nu_a}(x_i) for every nu in `basis`.
Eigen::MatrixXd basis_matrix(const IndexSet& basis, const QuadratureGrid& grid);

}  // namespace hermnuc
