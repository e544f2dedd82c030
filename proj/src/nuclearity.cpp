#include "hermnuc/nuclearity.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <json.hpp>

#include "hermnuc/errors.hpp"
#include "hermnuc/hermite.hpp"
#include "hermnuc/summation.hpp"

namespace hermnuc {

namespace {

void check_exponent(double p, const char* name) {
  if (std::isnan(p) || p < 1.0) {
    throw InvalidArgument(std::string(name) + " must lie in [1, infinity]");
  }
}

std::span<const double> column(const Eigen::MatrixXd& m, std::size_t k) {
  return {m.data() + k * static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.rows())};
}

// Coefficients phi_nu^(f_k) = integral f_k phi_nu for every column k.
Eigen::MatrixXd hermite_coefficients(const QuadratureGrid& grid, const Eigen::MatrixXd& factors,
                                     const Eigen::MatrixXd& phi) {
  const Eigen::Map<const Eigen::VectorXd> w(grid.scaled_weights().data(),
                                            static_cast<Eigen::Index>(grid.size()));
  return phi * w.asDiagonal() * factors;
}

}  // namespace

double conjugate_exponent(double p) {
  check_exponent(p, "exponent");
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double lp_norm(const QuadratureGrid& grid, std::span<const double> samples, double p) {
  check_exponent(p, "p");
  if (samples.size() != grid.size()) throw InvalidArgument("sample count does not match grid");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : samples) m = std::max(m, std::abs(v));
    return m;
  }
  std::vector<double> terms(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    terms[i] = grid.scaled_weight(i) * std::pow(std::abs(samples[i]), p);
  }
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

std::span<const double> NuclearDecomposition::h_factor(std::size_t k) const { return column(h, k); }
std::span<const double> NuclearDecomposition::g_factor(std::size_t k) const { return column(g, k); }

double factor_quasi_norm(const QuadratureGrid& grid, const Eigen::MatrixXd& h,
                         const Eigen::MatrixXd& g, double p1, double p2, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("r must lie in (0, 1]");
  if (h.cols() != g.cols()) throw InvalidArgument("factor counts differ");
  const double p1_dual = conjugate_exponent(p1);
  check_exponent(p2, "p2");
  std::vector<double> terms(static_cast<std::size_t>(h.cols()));
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double gn = lp_norm(grid, column(g, k), p1_dual);
    const double hn = lp_norm(grid, column(h, k), p2);
    terms[k] = std::pow(gn * hn, r);
  }
  return std::pow(pairwise_sum(terms), 1.0 / r);
}

NuclearDecomposition decompose_kernel(const KernelMatrix& kernel, double p1, double p2, double r,
                                      double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tol must be > 0");
  if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("r must lie in (0, 1]");
  check_exponent(p1, "p1");
  check_exponent(p2, "p2");
  const auto& grid = kernel.grid;
  const auto size = static_cast<Eigen::Index>(grid.size());
  if (kernel.entries.rows() != size || kernel.entries.cols() != size) {
    throw InvalidArgument("kernel shape does not match its grid");
  }

  Eigen::VectorXd d(size);
  for (Eigen::Index i = 0; i < size; ++i) d(i) = std::sqrt(grid.scaled_weight(static_cast<std::size_t>(i)));
  const Eigen::MatrixXd b = d.asDiagonal() * kernel.entries * d.asDiagonal();

  // Rank-revealing QR first, then a Jacobi SVD of the small factor: B = Q_r C
  // with C = R_r P^T. Divide-and-conquer SVD loses accuracy on the heavily
  // repeated singular values typical of radial symbols.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(size, size);
  qr.setThreshold(std::max(1e-3 * tol, std::numeric_limits<double>::epsilon()));
  qr.compute(b);
  const Eigen::Index qr_rank = qr.rank();
  Eigen::MatrixXd u_full(size, qr_rank);
  Eigen::MatrixXd v_full(size, qr_rank);
  Eigen::VectorXd s(qr_rank);
  if (qr_rank > 0) {
    const Eigen::MatrixXd r =
        qr.matrixR().topRows(qr_rank).template triangularView<Eigen::Upper>();
    const Eigen::MatrixXd c = r * qr.colsPermutation().transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NumericalError("SVD of the weighted kernel failed");
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(size, qr_rank);
    padded.topRows(qr_rank) = svd.matrixU();
    u_full = qr.householderQ() * padded;
    v_full = svd.matrixV();
    s = svd.singularValues();
  }

  const double s_max = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index rank = 0;
  if (s_max > 0.0) {
    while (rank < s.size() && s(rank) > tol * s_max) ++rank;
  }

  NuclearDecomposition out{grid};
  out.cutoff = kernel.cutoff;
  out.p1 = p1;
  out.p2 = p2;
  out.r = r;
  out.tol = tol;
  out.singular_values = s.head(rank);
  const Eigen::VectorXd d_inv = d.cwiseInverse();
  out.h = d_inv.asDiagonal() * u_full.leftCols(rank) * out.singular_values.asDiagonal();
  out.g = d_inv.asDiagonal() * v_full.leftCols(rank);
  out.quasi_norm_bound = factor_quasi_norm(grid, out.h, out.g, p1, p2, r);
  out.kernel_max = kernel.entries.size() ? kernel.entries.cwiseAbs().maxCoeff() : 0.0;
  out.reconstruction_error =
      kernel.entries.size() ? (kernel.entries - out.h * out.g.transpose()).cwiseAbs().maxCoeff()
                            : 0.0;
  return out;
}

SymbolDecompositionReport verify_symbol_decomposition(const Symbol& symbol,
                                                      const NuclearDecomposition& decomposition,
                                                      int cutoff) {
  const auto& grid = decomposition.grid;
  const IndexSet basis(grid.dimension(), cutoff);
  const Eigen::MatrixXd phi = basis_matrix(basis, grid);
  const Eigen::MatrixXd m = symbol_samples(symbol, basis, grid);
  // g_hat(a, k) = g_k^(phi_{nu_a})
  const Eigen::MatrixXd g_hat = hermite_coefficients(grid, decomposition.g, phi);
  // rhs(i, a) = sum_k h_k(x_i) g_hat(a, k)
  const Eigen::MatrixXd rhs = decomposition.h * g_hat.transpose();

  SymbolDecompositionReport report;
  report.worst_index = basis[0];
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const auto aa = static_cast<Eigen::Index>(a);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const double residual = std::abs(m(ii, aa) * phi(aa, ii) - rhs(ii, aa));
      ++report.checked;
      if (residual > report.max_residual) {
        report.max_residual = residual;
        report.worst_index = basis[a];
        report.worst_node = i;
      }
    }
  }
  return report;
}

double recover_multiplier_symbol(const NuclearDecomposition& decomposition, const MultiIndex& nu) {
  const auto& grid = decomposition.grid;
  if (nu.dimension() != grid.dimension()) throw InvalidArgument("multi-index dimension mismatch");
  std::vector<double> phi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) phi[i] = hermite_function_nd(nu, grid.point(i));
  std::vector<double> terms(decomposition.rank());
  std::vector<double> hp(grid.size());
  std::vector<double> gp(grid.size());
  for (std::size_t k = 0; k < decomposition.rank(); ++k) {
    const auto hk = decomposition.h_factor(k);
    const auto gk = decomposition.g_factor(k);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      hp[i] = hk[i] * phi[i];
      gp[i] = gk[i] * phi[i];
    }
    terms[k] = integrate_samples(grid, hp) * integrate_samples(grid, gp);
  }
  return pairwise_sum(terms);
}

std::vector<double> synthesize(const NuclearDecomposition& decomposition,
                               std::span<const double> samples) {
  const auto& grid = decomposition.grid;
  if (samples.size() != grid.size()) throw InvalidArgument("sample count does not match grid");
  std::vector<double> pairing(decomposition.rank());
  std::vector<double> product(grid.size());
  for (std::size_t k = 0; k < pairing.size(); ++k) {
    const auto gk = decomposition.g_factor(k);
    for (std::size_t i = 0; i < grid.size(); ++i) product[i] = gk[i] * samples[i];
    pairing[k] = integrate_samples(grid, product);
  }
  std::vector<double> out(grid.size());
  std::vector<double> terms(pairing.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t k = 0; k < pairing.size(); ++k) {
      terms[k] = decomposition.h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) *
                 pairing[k];
    }
    out[i] = pairwise_sum(terms);
  }
  return out;
}

namespace {

nlohmann::json exponent_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

void write_factor(const std::filesystem::path& path, const QuadratureGrid& grid,
                  std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw MissingFile("cannot write " + path.string());
  for (int d = 1; d <= grid.dimension(); ++d) out << 'x' << d << ',';
  out << "value\n";
  out.precision(17);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (double c : grid.point(i)) out << c << ',';
    out << values[i] << '\n';
  }
}

}  // namespace

void save_decomposition(const NuclearDecomposition& decomposition,
                        const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  nlohmann::json manifest;
  manifest["rank"] = decomposition.rank();
  manifest["p1"] = exponent_json(decomposition.p1);
  manifest["p2"] = exponent_json(decomposition.p2);
  manifest["r"] = decomposition.r;
  manifest["tol"] = decomposition.tol;
  manifest["quasi_norm_bound"] = decomposition.quasi_norm_bound;
  manifest["reconstruction_error"] = decomposition.reconstruction_error;
  manifest["kernel_max"] = decomposition.kernel_max;
  manifest["n"] = decomposition.grid.dimension();
  manifest["N"] = decomposition.cutoff;
  manifest["Q"] = decomposition.grid.nodes_per_axis();
  manifest["singular_values"] = std::vector<double>(
      decomposition.singular_values.data(),
      decomposition.singular_values.data() + decomposition.singular_values.size());
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t k = 0; k < decomposition.rank(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "%04zu", k);
    const std::string h_name = std::string("h_") + name + ".csv";
    const std::string g_name = std::string("g_") + name + ".csv";
    write_factor(directory / h_name, decomposition.grid, decomposition.h_factor(k));
    write_factor(directory / g_name, decomposition.grid, decomposition.g_factor(k));
    files.push_back({{"h", h_name}, {"g", g_name}});
  }
  manifest["factors"] = files;
  std::ofstream out(directory / "manifest.json");
  if (!out) throw MissingFile("cannot write manifest in " + directory.string());
  out << manifest.dump(2) << '\n';
}

}  // namespace hermnuc
