#include "spbvp/fnmodel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spbvp/errors.hpp"

namespace spbvp {

SmoothFunction::SmoothFunction(Expr expr, Interval domain, FunctionOptions options)
    : expr_(std::move(expr)), domain_(domain), options_(options), label_(to_string(expr_)) {
  if (!(std::isfinite(domain.lo) && std::isfinite(domain.hi) && domain.lo < domain.hi)) {
    throw InvalidProblem("function domain must be a finite interval with lo < hi");
  }
  if (options_.validation_samples < 2) throw InvalidArgument("validation_samples must be >= 2");
  const int n = options_.validation_samples;
  for (int i = 0; i < n; ++i) {
    const double t = domain.lo + domain.length() * i / (n - 1);
    const Jet3 j = eval_jet(expr_, t, options_.min_denominator);
    for (double c : j.c) {
      if (!std::isfinite(c)) {
        std::ostringstream os;
        os.precision(17);
        os << "DomainError: " << label_ << " is not finite at t = " << t;
        throw DomainError(os.str());
      }
    }
  }
}

SmoothFunction SmoothFunction::parse(std::string_view src, Interval domain, FunctionOptions options) {
  return SmoothFunction(parse_expr(src), domain, options);
}

Jet3 SmoothFunction::jet(double t) const {
  // Quadrature nodes and grids computed as lo + i*h may overshoot by an ulp.
  const double slack = 1e-12 * (1.0 + std::abs(domain_.lo) + std::abs(domain_.hi));
  if (!(t >= domain_.lo - slack && t <= domain_.hi + slack)) {
    std::ostringstream os;
    os.precision(17);
    os << "evaluation point t = " << t << " outside [" << domain_.lo << ", " << domain_.hi << "]";
    throw InvalidArgument(os.str());
  }
  return eval_jet(expr_, t, options_.min_denominator);
}

double SmoothFunction::eval(double t, int order) const {
  if (order < 0 || order > 3) throw InvalidArgument("derivative order must be in 0..3");
  return jet(t).derivative(order);
}

SmoothFunction with_label(SmoothFunction f, std::string label) {
  f.label_ = std::move(label);
  return f;
}

namespace builtin {

SmoothFunction constant(double c, Interval domain) {
  return SmoothFunction(Expr::constant(c), domain);
}

SmoothFunction exponential(Interval domain) {
  return with_label(SmoothFunction(Expr::exp(Expr::variable()), domain), "exp(t)");
}

SmoothFunction cosine(double angular_frequency, Interval domain) {
  return SmoothFunction(Expr::cos(Expr::constant(angular_frequency) * Expr::variable()), domain);
}

SmoothFunction sine(double angular_frequency, Interval domain) {
  return SmoothFunction(Expr::sin(Expr::constant(angular_frequency) * Expr::variable()), domain);
}

SmoothFunction polynomial(std::span<const double> coefficients, Interval domain) {
  if (coefficients.empty()) return constant(0.0, domain);
  // Horner form keeps the tree shallow in the number of multiplications.
  Expr acc = Expr::constant(coefficients.back());
  for (std::size_t i = coefficients.size() - 1; i-- > 0;) {
    acc = acc * Expr::variable() + Expr::constant(coefficients[i]);
  }
  return SmoothFunction(std::move(acc), domain);
}

}  // namespace builtin

double sup_norm_deriv(const SmoothFunction& f, int order, Interval interval, SupNormOptions options) {
  if (options.n_samples < 2) throw InvalidArgument("sup_norm_deriv needs n_samples >= 2");
  if (order < 0 || order > 3) throw InvalidArgument("derivative order must be in 0..3");
  const int n = options.n_samples;
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = i == n - 1 ? interval.hi : interval.lo + interval.length() * i / (n - 1);
    m = std::max(m, std::abs(f.eval(t, order)));
  }
  return m * options.safety_factor;
}

}  // namespace spbvp
