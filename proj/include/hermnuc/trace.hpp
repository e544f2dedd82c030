#pragma once

#include <complex>
#include <vector>

#include <json.hpp>

#include "hermnuc/nuclearity.hpp"
#include "hermnuc/operator.hpp"

namespace hermnuc {

/// integral sum_{|nu| <= N} m(x, nu) phi_nu(x)^2 dx, i.e. the kernel diagonal.
double nuclear_trace(const Symbol& symbol, int cutoff, const QuadratureGrid& grid);

/// sum_k integral h_k g_k over the decomposition's grid.
double trace_from_decomposition(const NuclearDecomposition& decomposition,
                                const QuadratureGrid& grid);

/// Sum of the Galerkin diagonal A[nu][nu].
double trace_matrix(const Symbol& symbol, int cutoff, const QuadratureGrid& grid);

struct TraceOptions {
  /// Exponent used for the reported r-condition 1/(1 + |1/p - 1/2|).
  double p = 2.0;
  /// Relative singular-value cutoff for the decomposition route.
  double tol = 1e-12;
};

struct TraceReport {
  int dimension = 1;
  int cutoff = 0;
  int nodes_per_axis = 0;
  std::string symbol;
  double trace_integral = 0.0;
  double trace_matrix = 0.0;
  double trace_decomposition = 0.0;
  std::size_t decomposition_rank = 0;
  std::vector<std::complex<double>> eigenvalues;
  double spectral_sum = 0.0;
  double max_imaginary = 0.0;
  double p = 2.0;
  double r_condition = 1.0;
  /// Tolerance applied to every pairwise comparison: 1e-6 (1 + |trace_integral|).
  double tolerance = 0.0;
  bool spectral_matches = false;
  bool matrix_matches = false;
  bool decomposition_matches = false;

  nlohmann::json to_json() const;
};

/// Galerkin eigenvalues (Hessenberg QR) and all three trace routes.
TraceReport spectral_trace(const Symbol& symbol, int cutoff, const QuadratureGrid& grid,
                           const TraceOptions& options = {});

/// 1 / (1 + |1/p - 1/2|).
double r_condition(double p);

}  // namespace hermnuc
