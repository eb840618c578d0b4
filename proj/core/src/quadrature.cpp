#include "spbvp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

namespace spbvp {

void QuadConfig::validate() const {
  if (panels_per_period <= 0 || gauss_order <= 0 || min_panels <= 0 || max_panels <= 0) {
    throw InvalidArgument("quadrature configuration fields must be positive");
  }
  if (gauss_order > kMaxGaussOrder) {
    throw InvalidArgument("gauss_order above " + std::to_string(kMaxGaussOrder));
  }
}

namespace {

// Newton iteration on P_n from the Chebyshev-like initial guess; weights from
// 2 / ((1 - x^2) P_n'(x)^2).
GaussRule BuildRule(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > kMaxGaussOrder) throw InvalidArgument("unsupported Gauss-Legendre order");
  static const auto rules = [] {
    std::array<GaussRule, kMaxGaussOrder + 1> all;
    for (int n = 1; n <= kMaxGaussOrder; ++n) all[static_cast<std::size_t>(n)] = BuildRule(n);
    return all;
  }();
  return rules[static_cast<std::size_t>(order)];
}

namespace detail {

void check_integral_args(double omega, double lo, double hi) {
  if (!(omega > 0.0 && std::isfinite(omega))) throw InvalidArgument("omega must be positive");
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi)) {
    throw InvalidArgument("integration bounds must satisfy lo <= hi");
  }
}

}  // namespace detail

namespace {

// Uncapped panel requirement; NaN-free for validated arguments.
double RequiredPanels(double omega, double lo, double hi, const QuadConfig& cfg) {
  if (hi == lo) return 0.0;
  const double needed =
      std::ceil((hi - lo) * omega * cfg.panels_per_period / (2.0 * std::numbers::pi));
  return std::max(static_cast<double>(cfg.min_panels), needed);
}

}  // namespace

long long panel_count(double omega, double lo, double hi, const QuadConfig& cfg) {
  detail::check_integral_args(omega, lo, hi);
  const double needed = RequiredPanels(omega, lo, hi, cfg);
  if (!(needed <= static_cast<double>(cfg.max_panels))) {
    const long long required = needed < 9e18 ? static_cast<long long>(needed)
                                             : std::numeric_limits<long long>::max();
    throw BudgetExceeded(required, cfg.max_panels);
  }
  return static_cast<long long>(needed);
}

long long estimate_cost(double omega, double lo, double hi, const QuadConfig& cfg) {
  cfg.validate();
  detail::check_integral_args(omega, lo, hi);
  const double evals = RequiredPanels(omega, lo, hi, cfg) * cfg.gauss_order;
  return evals < 9e18 ? static_cast<long long>(evals) : std::numeric_limits<long long>::max();
}

double osc_integral(const OscIntegrand& q, double lo, double hi, const QuadConfig& cfg) {
  if (q.derivative_order < 0 || q.derivative_order > 3) {
    throw InvalidArgument("derivative order must be in 0..3");
  }
  const int order = q.derivative_order;
  return osc_integral(
      q.kind, q.omega, q.shift, [&](double s) { return q.g.eval(s, order); }, lo, hi, cfg);
}

}  // namespace spbvp
