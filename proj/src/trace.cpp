#include "hermnuc/trace.hpp"

#include <algorithm>
#include <cmath>

#include "hermnuc/errors.hpp"
#include "hermnuc/hessenberg_qr.hpp"
#include "hermnuc/summation.hpp"

namespace hermnuc {

double nuclear_trace(const Symbol& symbol, int cutoff, const QuadratureGrid& grid) {
  if (symbol.dimension() != grid.dimension()) throw InvalidArgument("dimension mismatch");
  if (cutoff < 0) throw InvalidArgument("degree cutoff must be >= 0");
  const IndexSet basis(grid.dimension(), cutoff);
  const Eigen::MatrixXd phi = basis_matrix(basis, grid);
  const Eigen::MatrixXd m = symbol_samples(symbol, basis, grid);
  std::vector<double> diagonal(grid.size());
  std::vector<double> terms(basis.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const double p = phi(static_cast<Eigen::Index>(a), ii);
      terms[a] = m(ii, static_cast<Eigen::Index>(a)) * p * p;
    }
    diagonal[i] = pairwise_sum(terms);
  }
  return integrate_samples(grid, diagonal);
}

double trace_from_decomposition(const NuclearDecomposition& decomposition,
                                const QuadratureGrid& grid) {
  if (!(decomposition.grid == grid)) {
    throw InvalidArgument("decomposition was built on a different grid");
  }
  std::vector<double> terms(decomposition.rank());
  std::vector<double> product(grid.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto h = decomposition.h_factor(k);
    const auto g = decomposition.g_factor(k);
    for (std::size_t i = 0; i < grid.size(); ++i) product[i] = h[i] * g[i];
    terms[k] = integrate_samples(grid, product);
  }
  return pairwise_sum(terms);
}

double trace_matrix(const Symbol& symbol, int cutoff, const QuadratureGrid& grid) {
  const auto a = coefficient_matrix(symbol, cutoff, grid);
  std::vector<double> diagonal(static_cast<std::size_t>(a.entries.rows()));
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    diagonal[i] = a.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
  }
  return pairwise_sum(diagonal);
}

double r_condition(double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidArgument("p must lie in [1, infinity]");
  const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
  return 1.0 / (1.0 + std::abs(inv - 0.5));
}

TraceReport spectral_trace(const Symbol& symbol, int cutoff, const QuadratureGrid& grid,
                           const TraceOptions& options) {
  TraceReport report;
  report.dimension = grid.dimension();
  report.cutoff = cutoff;
  report.nodes_per_axis = grid.nodes_per_axis();
  report.symbol = symbol.describe();
  report.p = options.p;
  report.r_condition = r_condition(options.p);

  report.trace_integral = nuclear_trace(symbol, cutoff, grid);

  const auto galerkin = coefficient_matrix(symbol, cutoff, grid);
  std::vector<double> diagonal(static_cast<std::size_t>(galerkin.entries.rows()));
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    diagonal[i] = galerkin.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
  }
  report.trace_matrix = pairwise_sum(diagonal);

  report.eigenvalues = eigenvalues(galerkin.entries);
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](const auto& a, const auto& b) {
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() > b.imag();
            });
  std::vector<double> real_parts;
  for (const auto& e : report.eigenvalues) {
    real_parts.push_back(e.real());
    report.max_imaginary = std::max(report.max_imaginary, std::abs(e.imag()));
  }
  report.spectral_sum = pairwise_sum(real_parts);

  const auto kernel = assemble_kernel(symbol, cutoff, grid);
  const auto decomposition = decompose_kernel(kernel, 2.0, 2.0, 1.0, options.tol);
  report.trace_decomposition = trace_from_decomposition(decomposition, grid);
  report.decomposition_rank = decomposition.rank();

  report.tolerance = 1e-6 * (1.0 + std::abs(report.trace_integral));
  report.spectral_matches =
      std::abs(report.spectral_sum - report.trace_integral) < report.tolerance;
  report.matrix_matches = std::abs(report.trace_matrix - report.trace_integral) < report.tolerance;
  report.decomposition_matches =
      std::abs(report.trace_decomposition - report.trace_integral) < report.tolerance;
  return report;
}

nlohmann::json TraceReport::to_json() const {
  nlohmann::json eig = nlohmann::json::array();
  for (const auto& e : eigenvalues) eig.push_back({e.real(), e.imag()});
  return {
      {"n", dimension},
      {"N", cutoff},
      {"Q", nodes_per_axis},
      {"symbol", symbol},
      {"truncated", true},
      {"trace_integral", trace_integral},
      {"trace_matrix", trace_matrix},
      {"trace_decomposition", trace_decomposition},
      {"decomposition_rank", decomposition_rank},
      {"eigenvalues", eig},
      {"spectral_sum", spectral_sum},
      {"max_imaginary", max_imaginary},
      {"p", std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p)},
      {"r_condition", r_condition},
      {"tolerance", tolerance},
      {"tolerances_met",
       {{"spectral_vs_integral", spectral_matches},
        {"matrix_vs_integral", matrix_matches},
        {"decomposition_vs_integral", decomposition_matches}}},
  };
}

}  // namespace hermnuc
