#pragma once

#include <span>
#include <vector>

#include "spbvp/fnmodel.hpp"
#include "spbvp/quadrature.hpp"
#include "spbvp/windows.hpp"

namespace spbvp {

// eps*y'' + k*y = f(t) on [a, b] with y'(a) = y'(b) = 0.
struct ProblemSpec {
  double a;
  double b;
  double k;
  SmoothFunction f;

  // Throws InvalidProblem unless a < b, k > 0 and f is defined on [a, b].
  ProblemSpec(double a, double b, double k, SmoothFunction f);

  ProblemConstants constants() const { return {k, a, b}; }
  Interval interval() const { return {a, b}; }
};

enum class EvalForm {
  kNaive,    // kernels against f/eps
  kReduced,  // f/k plus kernels against f'/k, one power of 1/eps better conditioned
};

struct SolveOptions {
  double lambda = 0.5;
  QuadConfig quad;
  EvalForm form = EvalForm::kReduced;
  // Skip the window check. Only the near-resonance sweep sets this.
  bool allow_near_resonance = false;
};

// Everything about one (problem, eps) pair that does not depend on t,
// including the two full-interval integrals. Immutable once built.
class SolveContext {
 public:
  // Throws NearResonanceError unless eps lies in a window for options.lambda
  // (or the override is set), and BudgetExceeded from the quadrature.
  SolveContext(const ProblemSpec& p, double eps, const SolveOptions& options = {});

  double eps() const { return eps_; }
  double lambda() const { return lambda_; }
  double omega() const { return omega_; }
  double theta() const { return theta_; }
  double sin_theta() const { return sin_theta_; }
  const Classification& window() const { return window_; }
  const QuadConfig& quad() const { return quad_; }
  EvalForm form() const { return form_; }

  // int_a^b cos(omega*(b-s)) f(s)/eps ds
  double full_cos_integral() const { return full_cos_; }
  // int_a^b sin(omega*(b-s)) f'(s)/k ds
  double full_sin_derivative_integral() const { return full_sin_deriv_; }

  // Throws InvalidArgument if p is not the problem this context was built for.
  void check_matches(const ProblemSpec& p) const;

 private:
  ProblemConstants constants_;
  double eps_;
  double lambda_;
  double omega_;
  double theta_;
  double sin_theta_;
  Classification window_;
  QuadConfig quad_;
  EvalForm form_;
  double full_cos_ = 0.0;
  double full_sin_deriv_ = 0.0;
};

struct SolutionProfile {
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> y1;
  std::vector<double> y2;
  // eps*y2 + k*y - f(t), as computed.
  std::vector<double> residual;
};

double evaluate_naive(const ProblemSpec& p, const SolveContext& ctx, double t);
double evaluate_reduced(const ProblemSpec& p, const SolveContext& ctx, double t);
// Dispatches on ctx.form().
double evaluate(const ProblemSpec& p, const SolveContext& ctx, double t);
// y(t) - f(t)/k. The reduced form returns the correction terms directly.
double deviation_from_reduced(const ProblemSpec& p, const SolveContext& ctx, double t);

double derivative(const ProblemSpec& p, const SolveContext& ctx, double t);
double second_derivative(const ProblemSpec& p, const SolveContext& ctx, double t);

// grid must be sorted and inside [a, b].
SolutionProfile solve_grid(const ProblemSpec& p, const SolveContext& ctx,
                           std::span<const double> grid);

// n points from a to b inclusive, endpoints exact.
std::vector<double> uniform_grid(double a, double b, int n);

}  // namespace spbvp
