#include "hermnuc/hessenberg_qr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hermnuc/errors.hpp"

namespace hermnuc {

namespace {

// Iteration budget per matrix row, shared across all eigenvalues.
constexpr int kIterationsPerRow = 40;

double sign(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Diagonal similarity scaling by powers of two so that row and column norms
// are comparable; eigenvalues are unchanged and exactly representable.
void balance(Eigen::MatrixXd& a) {
  constexpr double radix = 2.0;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      }
      if (c != 0.0 && r != 0.0) {
        double g = r / radix;
        double f = 1.0;
        const double s = c + r;
        while (c < g) {
          f *= radix;
          c *= radix * radix;
        }
        g = r * radix;
        while (c > g) {
          f /= radix;
          c /= radix * radix;
        }
        if ((c + r) / f < 0.95 * s) {
          done = false;
          const double inv = 1.0 / f;
          a.row(i) *= inv;
          a.col(i) *= f;
        }
      }
    }
  }
}

}  // namespace

void reduce_to_hessenberg(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index len = n - k - 1;
    Eigen::VectorXd v = a.col(k).tail(len);
    const double norm = v.norm();
    if (norm == 0.0) continue;
    const double alpha = v(0) >= 0.0 ? -norm : norm;
    v(0) -= alpha;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    // A <- P A P with P = I - 2 v v^T acting on rows/cols k+1..n-1.
    auto rows = a.bottomRows(len);
    rows -= 2.0 * v * (v.transpose() * rows);
    auto cols = a.rightCols(len);
    cols -= 2.0 * (cols * v) * v.transpose();
    a.col(k).tail(len - 1).setZero();
    a(k + 1, k) = alpha;
  }
}

std::vector<std::complex<double>> eigenvalues(Eigen::MatrixXd a) {
  if (a.rows() != a.cols()) throw InvalidArgument("eigenvalues of a non-square matrix");
  const int n = static_cast<int>(a.rows());
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
  if (n == 0) return out;
  if (!a.allFinite()) throw NumericalError("matrix has non-finite entries");

  balance(a);
  reduce_to_hessenberg(a);

  double anorm = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double negligible = std::max(anorm * eps * eps, std::numeric_limits<double>::min());
  const long budget = static_cast<long>(kIterationsPerRow) * n;
  long total = 0;

  int nn = n - 1;
  double shift = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      // Look for a negligible subdiagonal element to split the problem.
      for (l = nn; l >= 1; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= std::max(eps * s, negligible)) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        out[static_cast<std::size_t>(nn)] = {x + shift, 0.0};
        --nn;
      } else {
        double y = a(nn - 1, nn - 1);
        double w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          // Trailing 2x2 block.
          const double p = 0.5 * (y - x);
          const double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += shift;
          if (q >= 0.0) {
            z = p + sign(z, p);
            const double hi = x + z;
            const double lo = z != 0.0 ? x - w / z : hi;
            out[static_cast<std::size_t>(nn - 1)] = {hi, 0.0};
            out[static_cast<std::size_t>(nn)] = {lo, 0.0};
          } else {
            out[static_cast<std::size_t>(nn - 1)] = {x + p, z};
            out[static_cast<std::size_t>(nn)] = {x + p, -z};
          }
          nn -= 2;
        } else {
          if (total == budget) {
            throw NumericalError("QR iteration did not converge for eigenvalue " +
                                 std::to_string(nn));
          }
          if (its > 0 && its % 10 == 0) {
            // Exceptional shift.
            shift += x;
            for (int i = 0; i <= nn; ++i) a(i, i) -= x;
            const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          ++total;
          // Two consecutive small subdiagonal elements.
          int m = nn - 2;
          double p = 0.0;
          double q = 0.0;
          double r = 0.0;
          for (; m >= l; --m) {
            const double z = a(m, m);
            r = x - z;
            const double s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            const double scale = std::abs(p) + std::abs(q) + std::abs(r);
            p /= scale;
            q /= scale;
            r /= scale;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v =
                std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          // Double-shift QR sweep on rows/cols l..nn.
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = k != nn - 1 ? a(k + 2, k - 1) : 0.0;
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            const double z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              double t = a(k, j) + q * a(k + 1, j);
              if (k != nn - 1) {
                t += r * a(k + 2, j);
                a(k + 2, j) -= t * z;
              }
              a(k + 1, j) -= t * y;
              a(k, j) -= t * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              double t = x * a(i, k) + y * a(i, k + 1);
              if (k != nn - 1) {
                t += z * a(i, k + 2);
                a(i, k + 2) -= t * r;
              }
              a(i, k + 1) -= t * q;
              a(i, k) -= t;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return out;
}

}  // namespace hermnuc
