#pragma once

#include <span>
#include <string>
#include <string_view>

#include "spbvp/expr.hpp"
#include "spbvp/jet.hpp"

namespace spbvp {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool contains(double t) const { return t >= lo && t <= hi; }
};

struct FunctionOptions {
  // Division nodes must keep |denominator| above this on the validation sample.
  double min_denominator = 1e-8;
  int validation_samples = 1025;
};

// A C^3 right-hand side f on a closed interval, evaluated with its first three
// derivatives by Taylor-mode propagation through the expression tree.
class SmoothFunction {
 public:
  // Validates the expression on a uniform sample of the domain; throws
  // DomainError on a near-zero denominator or a non-finite value.
  SmoothFunction(Expr expr, Interval domain, FunctionOptions options = {});

  static SmoothFunction parse(std::string_view src, Interval domain, FunctionOptions options = {});

  Jet3 jet(double t) const;
  // order in 0..3.
  double eval(double t, int order = 0) const;

  const Expr& expr() const { return expr_; }
  Interval domain() const { return domain_; }
  const std::string& label() const { return label_; }

 private:
  friend SmoothFunction with_label(SmoothFunction f, std::string label);

  Expr expr_;
  Interval domain_;
  FunctionOptions options_;
  std::string label_;
};

// Built-in right-hand sides.
namespace builtin {

SmoothFunction constant(double c, Interval domain);
SmoothFunction exponential(Interval domain);                     // e^t
SmoothFunction cosine(double angular_frequency, Interval domain);  // cos(w t)
SmoothFunction sine(double angular_frequency, Interval domain);    // sin(w t)
// coefficients[i] multiplies t^i.
SmoothFunction polynomial(std::span<const double> coefficients, Interval domain);

}  // namespace builtin

struct SupNormOptions {
  int n_samples = 4097;
  double safety_factor = 1.05;
};

// Heuristic upper estimate of sup |f^(order)| on `interval`: the maximum over a
// uniform grid (endpoints included) times the safety factor.
double sup_norm_deriv(const SmoothFunction& f, int order, Interval interval,
                      SupNormOptions options = {});

}  // namespace spbvp
