#include "hermnuc/operator.hpp"

#include <cmath>
#include <ostream>

#include "hermnuc/errors.hpp"
#include "hermnuc/hermite.hpp"
#include "hermnuc/parallel.hpp"
#include "hermnuc/summation.hpp"

namespace hermnuc {

namespace {

void check_dimensions(const Symbol& symbol, const QuadratureGrid& grid) {
  if (symbol.dimension() != grid.dimension()) {
    throw InvalidArgument("symbol dimension " + std::to_string(symbol.dimension()) +
                          " does not match grid dimension " + std::to_string(grid.dimension()));
  }
}

Eigen::VectorXd scaled_weights(const QuadratureGrid& grid) {
  return Eigen::Map<const Eigen::VectorXd>(grid.scaled_weights().data(),
                                           static_cast<Eigen::Index>(grid.size()));
}

}  // namespace

bool KernelMatrix::is_symmetric(double tolerance) const {
  return (entries - entries.transpose()).cwiseAbs().maxCoeff() <= tolerance;
}

void KernelMatrix::write_csv(std::ostream& out) const {
  const int n = grid.dimension();
  out << "i,j";
  for (int d = 1; d <= n; ++d) out << ",x" << d;
  for (int d = 1; d <= n; ++d) out << ",y" << d;
  out << ",value\n";
  const auto old_precision = out.precision(17);
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    const auto xi = grid.point(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < entries.cols(); ++j) {
      const auto yj = grid.point(static_cast<std::size_t>(j));
      out << i << ',' << j;
      for (double v : xi) out << ',' << v;
      for (double v : yj) out << ',' << v;
      out << ',' << entries(i, j) << '\n';
    }
  }
  out.precision(old_precision);
}

double GalerkinMatrix::operator()(const MultiIndex& mu, const MultiIndex& nu) const {
  const auto a = basis->position(mu);
  const auto b = basis->position(nu);
  if (!a || !b) throw InvalidArgument("multi-index outside the Galerkin basis");
  return entries(static_cast<Eigen::Index>(*a), static_cast<Eigen::Index>(*b));
}

Eigen::MatrixXd symbol_samples(const Symbol& symbol, const IndexSet& basis,
                               const QuadratureGrid& grid) {
  check_dimensions(symbol, grid);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(grid.size()),
                    static_cast<Eigen::Index>(basis.size()));
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto x = grid.point(i);
      for (std::size_t a = 0; a < basis.size(); ++a) {
        const double v = symbol(x, basis[a]);
        if (!std::isfinite(v)) {
          throw EvaluationError("symbol " + symbol.describe() + " is not finite at node " +
                                std::to_string(i) + ", nu = " + basis[a].to_string());
        }
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) = v;
      }
    }
  });
  return m;
}

double apply_coefficients(const Symbol& symbol, const CoefficientVector& coefficients,
                          std::span<const double> x) {
  if (static_cast<int>(x.size()) != symbol.dimension() ||
      coefficients.dimension() != symbol.dimension()) {
    throw InvalidArgument("dimension mismatch in operator application");
  }
  std::vector<std::vector<double>> tables;
  for (double xj : x) tables.push_back(hermite_table_1d(coefficients.cutoff(), xj));
  std::vector<double> terms(coefficients.size());
  for (std::size_t a = 0; a < coefficients.size(); ++a) {
    const auto& nu = coefficients.basis()[a];
    double phi = 1.0;
    for (int j = 0; j < nu.dimension(); ++j) phi *= tables[j][nu[j]];
    const double c = coefficients.at(a);
    terms[a] = c == 0.0 ? 0.0 : symbol(x, nu) * c * phi;
  }
  const double value = pairwise_sum(terms);
  if (!std::isfinite(value)) throw EvaluationError("operator value is not finite");
  return value;
}

double apply(const Symbol& symbol, const Function& f, int cutoff, const QuadratureGrid& grid,
             std::span<const double> x) {
  check_dimensions(symbol, grid);
  return apply_coefficients(symbol, forward_transform(f, cutoff, grid), x);
}

std::vector<double> apply_on_grid(const Symbol& symbol, std::span<const double> samples,
                                  int cutoff, const QuadratureGrid& grid) {
  check_dimensions(symbol, grid);
  const auto coefficients = forward_transform_samples(samples, cutoff, grid);
  const auto& basis = coefficients.basis();
  const Eigen::MatrixXd phi = basis_matrix(basis, grid);
  const Eigen::MatrixXd m = symbol_samples(symbol, basis, grid);
  std::vector<double> out(grid.size());
  std::vector<double> terms(basis.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const auto aa = static_cast<Eigen::Index>(a);
      terms[a] = m(ii, aa) * coefficients.at(a) * phi(aa, ii);
    }
    out[i] = pairwise_sum(terms);
  }
  return out;
}

KernelMatrix assemble_kernel(const Symbol& symbol, int cutoff, const QuadratureGrid& grid) {
  check_dimensions(symbol, grid);
  if (cutoff < 0) throw InvalidArgument("degree cutoff must be >= 0");
  const IndexSet basis(grid.dimension(), cutoff);
  const Eigen::MatrixXd phi = basis_matrix(basis, grid);
  // P(i, a) = m(x_i, nu_a) phi_{nu_a}(x_i)
  const Eigen::MatrixXd p = symbol_samples(symbol, basis, grid).cwiseProduct(phi.transpose());
  return KernelMatrix{grid, cutoff, p * phi};
}

std::vector<double> apply_kernel(const KernelMatrix& kernel, std::span<const double> samples) {
  if (samples.size() != kernel.grid.size()) throw InvalidArgument("sample count mismatch");
  std::vector<double> out(samples.size());
  std::vector<double> terms(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = 0; j < samples.size(); ++j) {
      terms[j] = kernel.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                 kernel.grid.scaled_weight(j) * samples[j];
    }
    out[i] = pairwise_sum(terms);
  }
  return out;
}

GalerkinMatrix coefficient_matrix(const Symbol& symbol, int cutoff, const QuadratureGrid& grid) {
  check_dimensions(symbol, grid);
  if (cutoff < 0) throw InvalidArgument("degree cutoff must be >= 0");
  auto basis = std::make_shared<const IndexSet>(grid.dimension(), cutoff);
  const Eigen::MatrixXd phi = basis_matrix(*basis, grid);
  const Eigen::MatrixXd weighted = phi * scaled_weights(grid).asDiagonal();
  // Column nu of `gram` holds forward_transform(phi_nu).
  const Eigen::MatrixXd gram = weighted * phi.transpose();
  const Eigen::MatrixXd p = symbol_samples(symbol, *basis, grid).cwiseProduct(phi.transpose());
  return GalerkinMatrix{basis, weighted * (p * gram)};
}

}  // namespace hermnuc
