#include "hermnuc/transform.hpp"

#include <cmath>
#include <iostream>
#include <ostream>

#include "hermnuc/errors.hpp"
#include "hermnuc/hermite.hpp"
#include "hermnuc/summation.hpp"

namespace hermnuc {

CoefficientVector::CoefficientVector(IndexSetPtr basis, std::vector<double> values)
    : basis_(std::move(basis)), values_(std::move(values)) {
  if (!basis_) throw InvalidArgument("coefficient vector needs an index set");
  if (values_.size() != basis_->size()) {
    throw InvalidArgument("coefficient count " + std::to_string(values_.size()) +
                          " does not match C(N+n, n) = " + std::to_string(basis_->size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw EvaluationError("non-finite Fourier-Hermite coefficient");
  }
}

CoefficientVector::CoefficientVector(int dimension, int cutoff)
    : basis_(std::make_shared<const IndexSet>(dimension, cutoff)),
      values_(basis_->size(), 0.0) {}

CoefficientVector CoefficientVector::unit(int dimension, int cutoff, const MultiIndex& nu) {
  CoefficientVector c(dimension, cutoff);
  c[nu] = 1.0;
  return c;
}

std::size_t CoefficientVector::position_or_throw(const MultiIndex& nu) const {
  auto pos = basis_->position(nu);
  if (!pos) {
    throw InvalidArgument("multi-index " + nu.to_string() + " outside the truncated index set");
  }
  return *pos;
}

double CoefficientVector::operator[](const MultiIndex& nu) const {
  return values_[position_or_throw(nu)];
}

double& CoefficientVector::operator[](const MultiIndex& nu) {
  return values_[position_or_throw(nu)];
}

void CoefficientVector::write_csv(std::ostream& out) const {
  for (int j = 1; j <= dimension(); ++j) out << "nu" << j << ',';
  out << "value\n";
  const auto old_precision = out.precision(17);
  for (std::size_t a = 0; a < values_.size(); ++a) {
    for (int e : (*basis_)[a].entries()) out << e << ',';
    out << values_[a] << '\n';
  }
  out.precision(old_precision);
}

CoefficientVector forward_transform(const Function& f, int cutoff, const QuadratureGrid& grid) {
  std::vector<double> samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    samples[i] = f(grid.point(i));
    if (!std::isfinite(samples[i])) {
      throw EvaluationError("function is not finite at grid node " + std::to_string(i));
    }
  }
  return forward_transform_samples(samples, cutoff, grid);
}

CoefficientVector forward_transform_samples(std::span<const double> samples, int cutoff,
                                            const QuadratureGrid& grid) {
  if (samples.size() != grid.size()) throw InvalidArgument("sample count does not match grid");
  if (grid.nodes_per_axis() < cutoff + 1) {
    std::clog << "warning: Q = " << grid.nodes_per_axis() << " < N + 1 = " << cutoff + 1
              << "; coefficients are not exact for the truncated span\n";
  }
  auto basis = std::make_shared<const IndexSet>(grid.dimension(), cutoff);
  const Eigen::MatrixXd phi = basis_matrix(*basis, grid);
  std::vector<double> values(basis->size());
  std::vector<double> terms(grid.size());
  for (std::size_t a = 0; a < basis->size(); ++a) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      terms[i] = grid.scaled_weight(i) * samples[i] *
                 phi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i));
    }
    values[a] = pairwise_sum(terms);
  }
  return CoefficientVector(std::move(basis), std::move(values));
}

double inverse_transform(const CoefficientVector& c, std::span<const double> x) {
  if (static_cast<int>(x.size()) != c.dimension()) {
    throw InvalidArgument("point dimension does not match coefficient vector dimension");
  }
  std::vector<std::vector<double>> tables;
  tables.reserve(x.size());
  for (double xj : x) tables.push_back(hermite_table_1d(c.cutoff(), xj));
  std::vector<double> terms(c.size());
  for (std::size_t a = 0; a < c.size(); ++a) {
    double v = c.at(a);
    const auto& nu = c.basis()[a];
    for (int j = 0; j < c.dimension(); ++j) v *= tables[j][nu[j]];
    terms[a] = v;
  }
  return pairwise_sum(terms);
}

std::vector<double> inverse_transform_on_grid(const CoefficientVector& c,
                                              const QuadratureGrid& grid) {
  if (grid.dimension() != c.dimension()) throw InvalidArgument("grid dimension mismatch");
  const Eigen::MatrixXd phi = basis_matrix(c.basis(), grid);
  std::vector<double> out(grid.size());
  std::vector<double> terms(c.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t a = 0; a < c.size(); ++a) {
      terms[a] = c.at(a) * phi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i));
    }
    out[i] = pairwise_sum(terms);
  }
  return out;
}

}  // namespace hermnuc
