#include "hermnuc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "hermnuc/errors.hpp"
#include "hermnuc/hermite.hpp"
#include "hermnuc/parallel.hpp"
#include "hermnuc/summation.hpp"

namespace hermnuc {

namespace {

constexpr int kMaxNodes = 512;

struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled;
};

AxisRule axis_rule(int q) {
  if (q < 1 || q > kMaxNodes) {
    throw InvalidArgument("Gauss-Hermite rule size must be in [1, 512], got " + std::to_string(q));
  }
  const auto n = static_cast<Eigen::Index>(q);
  // Jacobi matrix of the orthonormal polynomials for exp(-x^2).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index k = 1; k < n; ++k) sub(k - 1) = std::sqrt(static_cast<double>(k) / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (n > 1) {
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("Golub-Welsch eigensolve failed");
  }

  AxisRule rule;
  rule.nodes.resize(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) rule.nodes[i] = n > 1 ? solver.eigenvalues()(i) : 0.0;

  // Newton polish on phi_Q, with phi_Q' = sqrt(2Q) phi_{Q-1} - x phi_Q.
  for (auto& x : rule.nodes) {
    for (int it = 0; it < 3; ++it) {
      const auto t = hermite_table_1d(q, x);
      const double f = t[q];
      const double df = std::sqrt(2.0 * q) * t[q - 1] - x * f;
      if (df == 0.0) break;
      const double step = f / df;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
  }
  // Exact symmetry about 0.
  for (int i = 0; i < q / 2; ++i) {
    const double a = 0.5 * (rule.nodes[q - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -a;
    rule.nodes[q - 1 - i] = a;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;

  // W_i exp(x_i^2) = 1 / (Q phi_{Q-1}(x_i)^2), free of over/underflow.
  rule.scaled.resize(rule.nodes.size());
  rule.weights.resize(rule.nodes.size());
  for (int i = 0; i < q; ++i) {
    const double p = hermite_function_1d(q - 1, rule.nodes[i]);
    rule.scaled[i] = 1.0 / (q * p * p);
    rule.weights[i] = rule.scaled[i] * std::exp(-rule.nodes[i] * rule.nodes[i]);
  }
  for (int i = 0; i < q / 2; ++i) {
    const double s = 0.5 * (rule.scaled[i] + rule.scaled[q - 1 - i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[q - 1 - i]);
    rule.scaled[i] = rule.scaled[q - 1 - i] = s;
    rule.weights[i] = rule.weights[q - 1 - i] = w;
  }
  return rule;
}

}  // namespace

QuadratureGrid::QuadratureGrid(int dimension, int nodes_per_axis)
    : dimension_(dimension), nodes_per_axis_(nodes_per_axis) {
  if (dimension < 1) throw InvalidArgument("grid dimension must be >= 1");
  auto rule = axis_rule(nodes_per_axis);
  axis_nodes_ = std::move(rule.nodes);
  axis_weights_ = std::move(rule.weights);
  axis_scaled_ = std::move(rule.scaled);

  std::size_t total = 1;
  for (int j = 0; j < dimension; ++j) {
    total *= static_cast<std::size_t>(nodes_per_axis);
    if (total > (std::size_t{1} << 26)) throw InvalidArgument("tensor grid too large");
  }
  coordinates_.resize(total * static_cast<std::size_t>(dimension));
  weights_.resize(total);
  scaled_.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    double w = 1.0;
    double s = 1.0;
    for (int j = 0; j < dimension; ++j) {
      const std::size_t q = axis_node(i, j);
      coordinates_[i * dimension + j] = axis_nodes_[q];
      w *= axis_weights_[q];
      s *= axis_scaled_[q];
    }
    weights_[i] = w;
    scaled_[i] = s;
  }
}

std::size_t QuadratureGrid::axis_node(std::size_t i, int axis) const {
  const auto q = static_cast<std::size_t>(nodes_per_axis_);
  for (int j = dimension_ - 1; j > axis; --j) i /= q;
  return i % q;
}

void QuadratureGrid::write_csv(std::ostream& out) const {
  out << "node,weight\n";
  out.precision(17);
  for (std::size_t i = 0; i < axis_nodes_.size(); ++i) {
    out << axis_nodes_[i] << ',' << axis_weights_[i] << '\n';
  }
}

QuadratureGrid gauss_hermite_rule(int nodes) { return QuadratureGrid(1, nodes); }

double integrate(const QuadratureGrid& grid, const Function& f) {
  std::vector<double> samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid.point(i));
    if (!std::isfinite(v)) {
      std::string where = "(";
      for (int j = 0; j < grid.dimension(); ++j) {
        if (j) where += ", ";
        where += std::to_string(grid.point(i)[j]);
      }
      throw EvaluationError("integrand is not finite at node " + std::to_string(i) + " " +
                            where + ")");
    }
    samples[i] = v;
  }
  return integrate_samples(grid, samples);
}

double integrate_samples(const QuadratureGrid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) {
    throw InvalidArgument("sample count does not match grid size");
  }
  std::vector<double> terms(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) terms[i] = grid.scaled_weight(i) * samples[i];
  return pairwise_sum(terms);
}

Eigen::MatrixXd basis_matrix(const IndexSet& basis, const QuadratureGrid& grid) {
  if (basis.dimension() != grid.dimension()) {
    throw InvalidArgument("basis and grid dimensions differ");
  }
  const int q = grid.nodes_per_axis();
  const int cutoff = basis.cutoff();
  // table(k, node) = phi_k(axis node)
  Eigen::MatrixXd table(cutoff + 1, q);
  for (int node = 0; node < q; ++node) {
    const auto column = hermite_table_1d(cutoff, grid.axis_nodes()[node]);
    for (int k = 0; k <= cutoff; ++k) table(k, node) = column[k];
  }
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(basis.size()),
                      static_cast<Eigen::Index>(grid.size()));
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> nodes(static_cast<std::size_t>(grid.dimension()));
    for (std::size_t i = begin; i < end; ++i) {
      for (int j = 0; j < grid.dimension(); ++j) nodes[j] = grid.axis_node(i, j);
      for (std::size_t a = 0; a < basis.size(); ++a) {
        const auto& nu = basis[a];
        double v = 1.0;
        for (int j = 0; j < grid.dimension(); ++j) v *= table(nu[j], nodes[j]);
        phi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i)) = v;
      }
    }
  });
  return phi;
}

}  // namespace hermnuc
