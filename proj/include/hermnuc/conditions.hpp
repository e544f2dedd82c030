#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermnuc/multi_index.hpp"
#include "hermnuc/symbol.hpp"

namespace hermnuc {

/// Splits N_0^n into classes I_0..I_n. The default classifier puts nu in
/// I_s with s = #{j : nu_j <= k}; any other rule can be supplied.
class RegimePartition {
 public:
  using Classifier = std::function<int(const MultiIndex&)>;

  RegimePartition(int dimension, int cutoff);
  RegimePartition(int dimension, int cutoff, Classifier classifier);

  int dimension() const noexcept { return dimension_; }
  int cutoff() const noexcept { return cutoff_; }
  int classify(const MultiIndex& nu) const;

 private:
  int dimension_;
  int cutoff_;
  Classifier classifier_;
};

inline int classify(const RegimePartition& part, const MultiIndex& nu) { return part.classify(nu); }

/// One of the nine (p1, p2) cells. A term of the kappa sum is
///   (k^s prod_{nu_j > k} nu_j)^{alpha r}
///   * (ln+(k)^s prod_{nu_j > k} ln+(nu_j))^{beta r} * |m(nu)|^r.
struct Regime {
  int id = 0;
  double alpha = 0.0;
  int log_power = 0;
  std::string cell;
  std::string weight_expression;
};

/// Cell of (p1, p2): rows p2 in [1,4) | {4} | (4,inf], columns
/// p1 in (4/3,inf) | {4/3} | (1,4/3). Throws UnsupportedExponent outside.
int select_regime(double p1, double p2);

/// Regime with its exponent evaluated at (p1, p2).
Regime regime(double p1, double p2);

/// The nine cells with their weight expressions, for display.
std::vector<std::string> regime_table();

/// ln(max(t, e)): keeps the logarithmic weights >= 1 and defined at t <= 1.
double log_plus(double t);

/// Weight multiplying |m(nu)|^r in the regime's sum.
double kappa_weight(const Regime& regime, double r, const RegimePartition& part,
                    const MultiIndex& nu);

enum class Verdict { kConverged, kDiverging, kInconclusive };
std::string to_string(Verdict verdict);

struct ConditionReport {
  int regime_id = 0;
  double p1 = 2.0;
  double p2 = 2.0;
  double r = 1.0;
  int k = 10;
  int dimension = 1;
  int max_degree = 0;
  /// partial_sums[d] = sum over |nu| <= d.
  std::vector<double> partial_sums;
  /// Largest ratio of consecutive shell increments over the last five shells.
  double ratio = 0.0;
  double tail_estimate = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  std::string weight_expression;
  std::string log_guard = "ln+(t) = ln(max(t, e))";

  nlohmann::json to_json() const;
};

/// Partial sums of kappa(m, p1, p2) over degree shells 0..max_degree.
ConditionReport kappa(const Symbol& symbol, double p1, double p2, double r,
                      const RegimePartition& part, int max_degree);

}  // namespace hermnuc
