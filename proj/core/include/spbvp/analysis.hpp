#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spbvp/fnmodel.hpp"
#include "spbvp/solver.hpp"

namespace spbvp {

// A priori estimate of sup |y_eps - f/k| from endpoint derivatives of f, the
// sup norms mu1 = sup|f''| and mu2 = sup|f'''|, and 1/sin(lambda).
struct BoundReport {
  double eps = 0.0;
  double lambda = 0.0;
  double k = 0.0;
  double interval_length = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double fp_a = 0.0;   // |f'(a)|
  double fp_b = 0.0;   // |f'(b)|
  double fpp_a = 0.0;  // |f''(a)|
  double bound = 0.0;
  std::optional<double> sup_error_measured;
  bool certified = false;
  std::string caveat;
};

// The estimate assembled from its ingredients:
//   1/(k sin l) r {|f'(a)| + |f'(b)| + r (|f''(a)| + mu2 L)}
//   + 1/k r {|f'(a)| + r (mu1 + |f''(a)| + mu2 L)},   r = sqrt(eps/k).
double bound_expression(double k, double eps, double lambda, double interval_length, double fp_a,
                        double fp_b, double fpp_a, double mu1, double mu2);

// Bound part only; throws NearResonanceError unless eps is in a window.
BoundReport apriori_bound(const ProblemSpec& p, double eps, double lambda,
                          SupNormOptions sup_options = {});

// apriori_bound plus the measured sup |y - f/k| over grid and the verdict.
BoundReport certify_bound(const ProblemSpec& p, const SolveContext& ctx,
                          std::span<const double> grid, SupNormOptions sup_options = {});

// Closed-form solution for f = e^t. Throws NearResonanceError if
// sin(sqrt(k/eps)(b-a)) vanishes to working precision.
double oracle_example1(double a, double b, double k, double eps, double t);

struct FdOptions {
  // Reciprocal condition estimate below which the discrete system counts as singular.
  double min_rcond = 1e-13;
};

// Second-order central differences with ghost-node Neumann reflection, solved
// by LU with partial pivoting. n_nodes >= max(11, 20*theta/pi).
// Throws SingularSystem near (discrete) resonance.
SolutionProfile fd_oracle(const ProblemSpec& p, double eps, int n_nodes, FdOptions options = {});

// max over grid of |y_eps(t) - f(t)/k|.
double sup_error_vs_reduced(const ProblemSpec& p, const SolveContext& ctx,
                            std::span<const double> grid);

enum class ExpectedOrder { kHalf, kOne };

const char* to_string(ExpectedOrder order);

struct RatePoint {
  int n = 0;
  double eps = 0.0;
  double sup_error = 0.0;
};

struct RateFit {
  std::vector<RatePoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  ExpectedOrder expected_order = ExpectedOrder::kHalf;

  // [0.4, 0.6] for kHalf, [0.9, 1.1] for kOne.
  bool slope_within_order_window() const;
};

// Least-squares fit of log(sup_error) against log(eps) over points with
// positive error. Throws DegenerateFit when at least half the errors are at
// or below underflow_tol, or fewer than two points remain.
RateFit fit_loglog(std::vector<RatePoint> points, ExpectedOrder expected,
                   double underflow_tol = 1e-13);

struct RateOptions {
  QuadConfig quad;
  EvalForm form = EvalForm::kReduced;
  double underflow_tol = 1e-13;
};

// One when |f'(a)| and |f'(b)| are both <= 1e-12, else Half.
ExpectedOrder expected_order_for(const ProblemSpec& p);

// Sup error over a uniform grid along the theta-midpoint sequence n_from..n_to.
RateFit rate_fit(const ProblemSpec& p, double lambda, int n_from, int n_to, int grid_size,
                 const RateOptions& options = {});

struct ResonanceSample {
  double delta = 0.0;
  double eps = 0.0;
  double sup_abs_y = 0.0;
};

struct SweepOptions {
  int grid_size = 101;
  double delta_floor = 1e-3;
  QuadConfig quad;
  EvalForm form = EvalForm::kReduced;
};

// For theta = m*pi + delta, eps = k((b-a)/theta)^2, sup |y_eps| over a uniform
// grid. Bypasses the window check. deltas must be positive, strictly
// decreasing and >= options.delta_floor (InvalidArgument otherwise).
std::vector<ResonanceSample> near_resonance_sweep(const ProblemSpec& p, int m,
                                                  std::span<const double> deltas,
                                                  const SweepOptions& options = {});

}  // namespace spbvp
