#include "hermnuc/hermite.hpp"

#include <cmath>
#include <numbers>

#include "hermnuc/errors.hpp"

namespace hermnuc {

namespace {

constexpr double kRescaleThreshold = 1e150;
const double kLogRescale = std::log(kRescaleThreshold);

void check_point(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("Hermite function evaluated at non-finite x");
}

// Runs the recurrence up to max_order; `emit(k, value)` receives phi_k(x).
template <class Emit>
void run_recurrence(int max_order, double x, Emit&& emit) {
  double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  double prev = 0.0;
  double cur = 1.0;
  emit(0, std::exp(log_scale));
  for (int k = 0; k < max_order; ++k) {
    const double kk = static_cast<double>(k);
    const double next = x * std::sqrt(2.0 / (kk + 1.0)) * cur - std::sqrt(kk / (kk + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleThreshold) {
      cur /= kRescaleThreshold;
      prev /= kRescaleThreshold;
      log_scale += kLogRescale;
    }
    emit(k + 1, cur * std::exp(log_scale));
  }
}

}  // namespace

double hermite_function_1d(int order, double x) {
  if (order < 0) throw InvalidArgument("Hermite order must be >= 0");
  check_point(x);
  double value = 0.0;
  run_recurrence(order, x, [&](int k, double v) {
    if (k == order) value = v;
  });
  return value;
}

std::vector<double> hermite_table_1d(int max_order, double x) {
  if (max_order < 0) throw InvalidArgument("Hermite order must be >= 0");
  check_point(x);
  std::vector<double> table(static_cast<std::size_t>(max_order) + 1);
  run_recurrence(max_order, x, [&](int k, double v) { table[static_cast<std::size_t>(k)] = v; });
  return table;
}

double hermite_function_nd(const MultiIndex& nu, std::span<const double> x) {
  if (static_cast<int>(x.size()) != nu.dimension()) {
    throw InvalidArgument("point dimension " + std::to_string(x.size()) +
                          " does not match multi-index dimension " +
                          std::to_string(nu.dimension()));
  }
  double value = 1.0;
  for (int j = 0; j < nu.dimension(); ++j) value *= hermite_function_1d(nu[j], x[j]);
  return value;
}

double eigenvalue(const MultiIndex& nu) {
  return 2.0 * nu.degree() + nu.dimension();
}

}  // namespace hermnuc
