#include "hermnuc/conditions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hermnuc/errors.hpp"
#include "hermnuc/summation.hpp"

namespace hermnuc {

namespace {

constexpr double kFourThirds = 4.0 / 3.0;
constexpr double kBoundaryTolerance = 1e-12;
constexpr int kRatioWindow = 5;

bool near(double a, double b) { return std::abs(a - b) <= kBoundaryTolerance * std::abs(b); }

const char* const kWeights[9] = {
    "k^{(sr/2)(1/p2 - 1/p1)} (prod_{nu_j>k} nu_j)^{(r/2)(1/p2 - 1/p1)} |m|^r",
    "k^{(sr/2)(1/p2 - 3/4)} (ln k)^{sr} prod_{nu_j>k}[nu_j^{(r/2)(1/p2 - 3/4)} (ln nu_j)^r] |m|^r",
    "k^{(sr/2)(1/p2 + 1/(3p1) - 1)} (prod_{nu_j>k} nu_j)^{(r/2)(1/p2 + 1/(3p1) - 1)} |m|^r",
    "k^{(sr/2)(1/4 - 1/p1)} (ln k)^{sr} prod_{nu_j>k}[(ln nu_j)^r nu_j^{(r/2)(1/4 - 1/p1)}] |m|^r",
    "k^{-sr/4} (ln k)^{2sr} prod_{nu_j>k}[nu_j^{-r/4} (ln nu_j)^{2r}] |m|^r",
    "k^{(sr/6)(1/p1 - 9/4)} (ln k)^{sr} prod_{nu_j>k}[nu_j^{(r/6)(1/p1 - 9/4)} (ln nu_j)^r] |m|^r",
    "k^{(sr/2)(1/(3p2') - 1/p1)} (prod_{nu_j>k} nu_j)^{(r/2)(1/(3p2') - 1/p1)} |m|^r",
    "k^{-(sr/6)(1/p2 + 5/4)} (ln k)^{sr} prod_{nu_j>k}[nu_j^{-(r/6)(1/p2 + 5/4)} (ln nu_j)^r] |m|^r",
    "k^{(sr/6)(1/p1 - 1/p2 - 2)} (prod_{nu_j>k} nu_j)^{(r/6)(1/p1 - 1/p2 - 2)} |m|^r",
};

const char* const kCells[9] = {
    "1 <= p2 < 4, 4/3 < p1 < inf", "1 <= p2 < 4, p1 = 4/3", "1 <= p2 < 4, 1 < p1 < 4/3",
    "p2 = 4, 4/3 < p1 < inf",      "p2 = 4, p1 = 4/3",      "p2 = 4, 1 < p1 < 4/3",
    "4 < p2 <= inf, 4/3 < p1 < inf", "4 < p2 <= inf, p1 = 4/3", "4 < p2 <= inf, 1 < p1 < 4/3",
};

double inverse(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

}  // namespace

RegimePartition::RegimePartition(int dimension, int cutoff)
    : RegimePartition(dimension, cutoff, {}) {}

RegimePartition::RegimePartition(int dimension, int cutoff, Classifier classifier)
    : dimension_(dimension), cutoff_(cutoff), classifier_(std::move(classifier)) {
  if (dimension < 1) throw InvalidArgument("partition dimension must be >= 1");
  if (cutoff < 1) throw InvalidArgument("partition cutoff k must be >= 1");
  if (!classifier_) {
    classifier_ = [cutoff](const MultiIndex& nu) {
      int small = 0;
      for (int e : nu.entries()) small += e <= cutoff ? 1 : 0;
      return small;
    };
  }
}

int RegimePartition::classify(const MultiIndex& nu) const {
  if (nu.dimension() != dimension_) throw InvalidArgument("multi-index dimension mismatch");
  const int s = classifier_(nu);
  if (s < 0 || s > dimension_) throw InvalidArgument("classifier returned a class outside 0..n");
  return s;
}

int select_regime(double p1, double p2) {
  if (std::isnan(p1) || std::isnan(p2)) throw UnsupportedExponent("exponent is NaN");
  if (p2 < 1.0) throw UnsupportedExponent("p2 must satisfy 1 <= p2 <= inf");
  if (!(p1 > 1.0) || std::isinf(p1)) {
    throw UnsupportedExponent("p1 must satisfy 1 < p1 < inf");
  }
  int row = 0;
  if (near(p2, 4.0)) {
    row = 1;
  } else if (p2 > 4.0) {
    row = 2;
  }
  int col = 0;
  if (near(p1, kFourThirds)) {
    col = 1;
  } else if (p1 < kFourThirds) {
    col = 2;
  }
  return 3 * row + col + 1;
}

Regime regime(double p1, double p2) {
  Regime g;
  g.id = select_regime(p1, p2);
  g.cell = kCells[g.id - 1];
  g.weight_expression = kWeights[g.id - 1];
  const double ip1 = inverse(p1);
  const double ip2 = inverse(p2);
  const double ip2_dual = 1.0 - ip2;
  switch (g.id) {
    case 1: g.alpha = 0.5 * (ip2 - ip1); break;
    case 2: g.alpha = 0.5 * (ip2 - 0.75); g.log_power = 1; break;
    case 3: g.alpha = 0.5 * (ip2 + ip1 / 3.0 - 1.0); break;
    case 4: g.alpha = 0.5 * (0.25 - ip1); g.log_power = 1; break;
    case 5: g.alpha = -0.25; g.log_power = 2; break;
    case 6: g.alpha = (ip1 - 2.25) / 6.0; g.log_power = 1; break;
    case 7: g.alpha = 0.5 * (ip2_dual / 3.0 - ip1); break;
    case 8: g.alpha = -(ip2 + 1.25) / 6.0; g.log_power = 1; break;
    case 9: g.alpha = (ip1 - ip2 - 2.0) / 6.0; break;
    default: break;
  }
  return g;
}

std::vector<std::string> regime_table() {
  std::vector<std::string> rows;
  for (int i = 0; i < 9; ++i) {
    rows.push_back(std::to_string(i + 1) + " | " + kCells[i] + " | " + kWeights[i]);
  }
  return rows;
}

double log_plus(double t) { return std::log(std::max(t, std::numbers::e)); }

double kappa_weight(const Regime& regime, double r, const RegimePartition& part,
                    const MultiIndex& nu) {
  const int s = part.classify(nu);
  const double k = part.cutoff();
  double log_power_sum = s * std::log(k);
  double log_log_sum = s * std::log(log_plus(k));
  for (int e : nu.entries()) {
    if (e > part.cutoff()) {
      log_power_sum += std::log(static_cast<double>(e));
      log_log_sum += std::log(log_plus(e));
    }
  }
  return std::exp(r * (regime.alpha * log_power_sum + regime.log_power * log_log_sum));
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kConverged: return "converged";
    case Verdict::kDiverging: return "diverging";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

nlohmann::json ConditionReport::to_json() const {
  auto number = [](double v) -> nlohmann::json {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  auto exponent = [](double p) -> nlohmann::json {
    if (std::isinf(p)) return "inf";
    return p;
  };
  return {
      {"regime_id", regime_id},
      {"parameters",
       {{"p1", exponent(p1)}, {"p2", exponent(p2)}, {"r", r}, {"k", k}, {"n", dimension},
        {"Nmax", max_degree}}},
      {"partial_sums", partial_sums},
      {"ratio", number(ratio)},
      {"tail_estimate", number(tail_estimate)},
      {"verdict", to_string(verdict)},
      {"weight", weight_expression},
      {"log_guard", log_guard},
  };
}

ConditionReport kappa(const Symbol& symbol, double p1, double p2, double r,
                      const RegimePartition& part, int max_degree) {
  if (!symbol.is_multiplier()) throw InvalidArgument("kappa requires a multiplier symbol");
  if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("r must lie in (0, 1]");
  if (max_degree < 0) throw InvalidArgument("Nmax must be >= 0");
  if (symbol.dimension() != part.dimension()) throw InvalidArgument("partition dimension mismatch");

  const Regime reg = regime(p1, p2);
  ConditionReport report;
  report.regime_id = reg.id;
  report.p1 = p1;
  report.p2 = p2;
  report.r = r;
  report.k = part.cutoff();
  report.dimension = part.dimension();
  report.max_degree = max_degree;
  report.weight_expression = reg.weight_expression;

  std::vector<double> increments;
  double total = 0.0;
  for (int d = 0; d <= max_degree; ++d) {
    const auto shell = degree_shell(part.dimension(), d);
    std::vector<double> terms(shell.size());
    for (std::size_t i = 0; i < shell.size(); ++i) {
      const double m = symbol(shell[i]);
      if (!std::isfinite(m)) {
        throw EvaluationError("symbol is not finite at nu = " + shell[i].to_string());
      }
      terms[i] = m == 0.0 ? 0.0 : kappa_weight(reg, r, part, shell[i]) * std::pow(std::abs(m), r);
    }
    const double increment = pairwise_sum(terms);
    increments.push_back(increment);
    total += increment;
    report.partial_sums.push_back(total);
  }

  const double last_sum = report.partial_sums.back();
  if (!std::isfinite(last_sum)) {
    report.verdict = Verdict::kDiverging;
    report.ratio = std::numeric_limits<double>::infinity();
    report.tail_estimate = last_sum;
    return report;
  }
  if (static_cast<int>(increments.size()) <= kRatioWindow) {
    report.verdict = Verdict::kInconclusive;
    report.ratio = std::numeric_limits<double>::quiet_NaN();
    report.tail_estimate = std::numeric_limits<double>::quiet_NaN();
    return report;
  }

  double ratio = 0.0;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t d = increments.size() - kRatioWindow; d < increments.size(); ++d) {
    const double prev = increments[d - 1];
    const double cur = increments[d];
    double q = 0.0;
    if (cur != 0.0) q = prev == 0.0 ? std::numeric_limits<double>::infinity() : cur / prev;
    ratio = std::max(ratio, q);
    min_ratio = std::min(min_ratio, q);
  }
  report.ratio = ratio;
  const double last_increment = increments.back();
  if (ratio < 1.0) {
    report.tail_estimate = last_increment / (1.0 - ratio);
    report.verdict = report.tail_estimate < 1e-6 * last_sum || last_increment == 0.0
                         ? Verdict::kConverged
                         : Verdict::kInconclusive;
  } else {
    report.tail_estimate = std::numeric_limits<double>::infinity();
    // Diverging only when no increment in the window decays.
    report.verdict = min_ratio >= 1.0 ? Verdict::kDiverging : Verdict::kInconclusive;
  }
  return report;
}

}  // namespace hermnuc
