#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "spbvp/errors.hpp"
#include "spbvp/fnmodel.hpp"

namespace spbvp {

enum class Kernel { kSin, kCos };

struct QuadConfig {
  int panels_per_period = 4;
  int gauss_order = 8;
  int min_panels = 4;
  long long max_panels = 10'000'000;

  // Throws InvalidArgument on non-positive fields or an unsupported order.
  void validate() const;
};

// s -> trig(omega*(shift - s)) * g^(derivative_order)(s).
struct OscIntegrand {
  Kernel kind = Kernel::kCos;
  double omega = 1.0;
  double shift = 0.0;
  SmoothFunction g;
  int derivative_order = 0;
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

inline constexpr int kMaxGaussOrder = 64;

// Gauss-Legendre rule of the given order, computed once per process.
const GaussRule& gauss_legendre(int order);

// Number of panels used on [lo, hi]: the smallest count whose width is at most
// both (hi-lo)/min_panels and 2*pi/(omega*panels_per_period). Zero for an
// empty interval. Throws BudgetExceeded above cfg.max_panels.
long long panel_count(double omega, double lo, double hi, const QuadConfig& cfg);

// Exact number of integrand evaluations osc_integral performs.
long long estimate_cost(double omega, double lo, double hi, const QuadConfig& cfg = {});

struct SinCosPair {
  double sin = 0.0;
  double cos = 0.0;
};

namespace detail {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void check_integral_args(double omega, double lo, double hi);

}  // namespace detail

// Both kernels against the same g in one sweep over the nodes:
//   sin: int_lo^hi sin(omega*(shift-s)) g(s) ds,  cos: same with cos.
// Composite Gauss-Legendre on uniform panels; deterministic for fixed inputs.
template <typename G>
SinCosPair osc_integral_pair(double omega, double shift, G&& g, double lo, double hi,
                             const QuadConfig& cfg = {}) {
  detail::check_integral_args(omega, lo, hi);
  cfg.validate();
  const long long panels = panel_count(omega, lo, hi, cfg);
  if (panels == 0) return {};
  const GaussRule& rule = gauss_legendre(cfg.gauss_order);
  const double width = (hi - lo) / static_cast<double>(panels);
  const double half = 0.5 * width;
  detail::CompensatedSum s_acc;
  detail::CompensatedSum c_acc;
  for (long long j = 0; j < panels; ++j) {
    const double mid = lo + (static_cast<double>(j) + 0.5) * width;
    const double offset = shift - mid;
    double s_panel = 0.0;
    double c_panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = half * rule.nodes[i];
      const double arg = omega * (offset - x);
      const double gw = rule.weights[i] * g(mid + x);
      s_panel += gw * std::sin(arg);
      c_panel += gw * std::cos(arg);
    }
    s_acc.add(half * s_panel);
    c_acc.add(half * c_panel);
  }
  return {s_acc.value(), c_acc.value()};
}

template <typename G>
double osc_integral(Kernel kind, double omega, double shift, G&& g, double lo, double hi,
                    const QuadConfig& cfg = {}) {
  detail::check_integral_args(omega, lo, hi);
  cfg.validate();
  const long long panels = panel_count(omega, lo, hi, cfg);
  if (panels == 0) return 0.0;
  const GaussRule& rule = gauss_legendre(cfg.gauss_order);
  const double width = (hi - lo) / static_cast<double>(panels);
  const double half = 0.5 * width;
  detail::CompensatedSum acc;
  for (long long j = 0; j < panels; ++j) {
    const double mid = lo + (static_cast<double>(j) + 0.5) * width;
    const double offset = shift - mid;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = half * rule.nodes[i];
      const double arg = omega * (offset - x);
      const double k = kind == Kernel::kSin ? std::sin(arg) : std::cos(arg);
      panel += rule.weights[i] * k * g(mid + x);
    }
    acc.add(half * panel);
  }
  return acc.value();
}

double osc_integral(const OscIntegrand& q, double lo, double hi, const QuadConfig& cfg = {});

}  // namespace spbvp
