#include "spbvp/analysis.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spbvp/errors.hpp"

namespace spbvp {

double bound_expression(double k, double eps, double lambda, double interval_length, double fp_a,
                        double fp_b, double fpp_a, double mu1, double mu2) {
  const double r = std::sqrt(eps / k);
  const double boundary_part =
      r * (fp_a + fp_b + r * (fpp_a + mu2 * interval_length)) / (k * std::sin(lambda));
  const double interior_part = r * (fp_a + r * (mu1 + fpp_a + mu2 * interval_length)) / k;
  return boundary_part + interior_part;
}

BoundReport apriori_bound(const ProblemSpec& p, double eps, double lambda,
                          SupNormOptions sup_options) {
  const Classification window = classify(eps, lambda, p.constants());
  if (const auto* near = std::get_if<NearResonance>(&window)) {
    throw NearResonanceError(eps, near->nearest_m, near->distance_theta);
  }
  BoundReport r;
  r.eps = eps;
  r.lambda = lambda;
  r.k = p.k;
  r.interval_length = p.b - p.a;
  r.mu1 = sup_norm_deriv(p.f, 2, p.interval(), sup_options);
  r.mu2 = sup_norm_deriv(p.f, 3, p.interval(), sup_options);
  r.fp_a = std::abs(p.f.eval(p.a, 1));
  r.fp_b = std::abs(p.f.eval(p.b, 1));
  r.fpp_a = std::abs(p.f.eval(p.a, 2));
  r.bound = bound_expression(r.k, r.eps, r.lambda, r.interval_length, r.fp_a, r.fp_b, r.fpp_a,
                             r.mu1, r.mu2);
  std::ostringstream os;
  os << "mu1, mu2 estimated as max over a " << sup_options.n_samples
     << "-point uniform grid times safety factor " << sup_options.safety_factor
     << "; heuristic upper estimates, not rigorous suprema";
  r.caveat = os.str();
  return r;
}

BoundReport certify_bound(const ProblemSpec& p, const SolveContext& ctx,
                          std::span<const double> grid, SupNormOptions sup_options) {
  BoundReport r = apriori_bound(p, ctx.eps(), ctx.lambda(), sup_options);
  const double measured = sup_error_vs_reduced(p, ctx, grid);
  r.sup_error_measured = measured;
  r.certified = measured <= r.bound;
  return r;
}

double oracle_example1(double a, double b, double k, double eps, double t) {
  const double omega = std::sqrt(k / eps);
  const double s = std::sin(omega * (b - a));
  if (std::abs(s) < 1e-12) {
    const double theta = omega * (b - a);
    const double m = std::round(theta / std::numbers::pi);
    throw NearResonanceError(eps, static_cast<int>(m), std::abs(theta - m * std::numbers::pi));
  }
  return (-std::exp(a) * std::cos(omega * (b - t)) + std::exp(b) * std::cos(omega * (t - a))) /
             (omega * (k + eps) * s) +
         std::exp(t) / (k + eps);
}

SolutionProfile fd_oracle(const ProblemSpec& p, double eps, int n_nodes, FdOptions options) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const double theta = phase(eps, p.constants());
  const double min_nodes = std::max(11.0, std::ceil(20.0 * theta / std::numbers::pi));
  if (n_nodes < min_nodes) {
    throw InvalidArgument("fd_oracle needs at least " + std::to_string(static_cast<long>(min_nodes)) +
                          " nodes to resolve the oscillation");
  }
  const auto n = static_cast<std::size_t>(n_nodes);
  const std::vector<double> grid = uniform_grid(p.a, p.b, n_nodes);
  const double h = (p.b - p.a) / (n_nodes - 1);
  const double c = eps / (h * h);

  std::vector<double> dl(n - 1, c);
  std::vector<double> d(n, p.k - 2.0 * c);
  std::vector<double> du(n - 1, c);
  // Ghost nodes y[-1] = y[1], y[N+1] = y[N-1].
  du.front() = 2.0 * c;
  dl.back() = 2.0 * c;

  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = p.f.eval(grid[i]);

  // One-norm: largest absolute column sum.
  double anorm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = std::abs(d[j]);
    if (j > 0) col += std::abs(du[j - 1]);
    if (j + 1 < n) col += std::abs(dl[j]);
    anorm = std::max(anorm, col);
  }

  std::vector<double> du2(n - 2);
  std::vector<lapack_int> ipiv(n);
  const auto ln = static_cast<lapack_int>(n);
  lapack_int info = LAPACKE_dgttrf(ln, dl.data(), d.data(), du.data(), du2.data(), ipiv.data());
  if (info != 0) throw SingularSystem("SingularSystem: exact zero pivot in finite-difference LU");
  double rcond = 0.0;
  info = LAPACKE_dgtcon('1', ln, dl.data(), d.data(), du.data(), du2.data(), ipiv.data(), anorm,
                        &rcond);
  if (info != 0 || !(rcond >= options.min_rcond)) {
    std::ostringstream os;
    os << "SingularSystem: finite-difference system reciprocal condition " << rcond
       << " below " << options.min_rcond << " (eps near a discrete resonance)";
    throw SingularSystem(os.str());
  }
  std::vector<double> y = rhs;
  info = LAPACKE_dgttrs(LAPACK_COL_MAJOR, 'N', ln, 1, dl.data(), d.data(), du.data(), du2.data(),
                        ipiv.data(), y.data(), ln);
  if (info != 0) throw SingularSystem("SingularSystem: finite-difference back substitution failed");

  SolutionProfile out;
  out.t = grid;
  out.y = y;
  out.y1.assign(n, 0.0);
  out.y2.assign(n, 0.0);
  out.residual.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i == 0 ? y[1] : y[i - 1];
    const double right = i + 1 == n ? y[n - 2] : y[i + 1];
    if (i > 0 && i + 1 < n) out.y1[i] = (right - left) / (2.0 * h);
    out.y2[i] = (left - 2.0 * y[i] + right) / (h * h);
    out.residual[i] = eps * out.y2[i] + p.k * y[i] - rhs[i];
  }
  return out;
}

double sup_error_vs_reduced(const ProblemSpec& p, const SolveContext& ctx,
                            std::span<const double> grid) {
  double worst = 0.0;
  for (const double t : grid) worst = std::max(worst, std::abs(deviation_from_reduced(p, ctx, t)));
  return worst;
}

const char* to_string(ExpectedOrder order) { return order == ExpectedOrder::kHalf ? "half" : "one"; }

bool RateFit::slope_within_order_window() const {
  const double target = expected_order == ExpectedOrder::kHalf ? 0.5 : 1.0;
  return std::abs(slope - target) <= 0.1 + 1e-12;
}

RateFit fit_loglog(std::vector<RatePoint> points, ExpectedOrder expected, double underflow_tol) {
  std::size_t underflowed = 0;
  for (const RatePoint& pt : points) {
    if (!(pt.sup_error > underflow_tol)) ++underflowed;
  }
  if (points.empty() || 2 * underflowed >= points.size()) {
    throw DegenerateFit("DegenerateFit: " + std::to_string(underflowed) + " of " +
                        std::to_string(points.size()) + " errors at or below tolerance");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const RatePoint& pt : points) {
    if (pt.sup_error > 0.0 && pt.eps > 0.0) {
      xs.push_back(std::log(pt.eps));
      ys.push_back(std::log(pt.sup_error));
    }
  }
  if (xs.size() < 2) throw DegenerateFit("DegenerateFit: fewer than two usable points");
  const double m = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw DegenerateFit("DegenerateFit: all eps values coincide");
  RateFit fit;
  fit.points = std::move(points);
  fit.expected_order = expected;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

ExpectedOrder expected_order_for(const ProblemSpec& p) {
  const bool flat = std::abs(p.f.eval(p.a, 1)) <= 1e-12 && std::abs(p.f.eval(p.b, 1)) <= 1e-12;
  return flat ? ExpectedOrder::kOne : ExpectedOrder::kHalf;
}

RateFit rate_fit(const ProblemSpec& p, double lambda, int n_from, int n_to, int grid_size,
                 const RateOptions& options) {
  if (n_to - n_from < 5) throw InvalidArgument("rate_fit needs n_to - n_from >= 5");
  if (grid_size < 2) throw InvalidArgument("rate_fit needs grid_size >= 2");
  const std::vector<double> grid = uniform_grid(p.a, p.b, grid_size);
  SolveOptions solve;
  solve.lambda = lambda;
  solve.quad = options.quad;
  solve.form = options.form;
  std::vector<RatePoint> points;
  for (const SequencePoint& sp : sample_sequence(lambda, p.constants(), n_from, n_to)) {
    const SolveContext ctx(p, sp.eps, solve);
    points.push_back({sp.n, sp.eps, sup_error_vs_reduced(p, ctx, grid)});
  }
  return fit_loglog(std::move(points), expected_order_for(p), options.underflow_tol);
}

std::vector<ResonanceSample> near_resonance_sweep(const ProblemSpec& p, int m,
                                                  std::span<const double> deltas,
                                                  const SweepOptions& options) {
  if (m < 1) throw InvalidArgument("resonance index m must be >= 1");
  if (deltas.empty()) throw InvalidArgument("need at least one delta");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] >= options.delta_floor)) {
      std::ostringstream os;
      os << "delta " << deltas[i] << " below floor " << options.delta_floor;
      throw InvalidArgument(os.str());
    }
    if (!(deltas[i] < std::numbers::pi / 2)) throw InvalidArgument("delta must be below pi/2");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) {
      throw InvalidArgument("deltas must be strictly decreasing");
    }
  }
  const std::vector<double> grid = uniform_grid(p.a, p.b, options.grid_size);
  SolveOptions solve;
  solve.quad = options.quad;
  solve.form = options.form;
  solve.allow_near_resonance = true;
  std::vector<ResonanceSample> out;
  for (const double delta : deltas) {
    const double eps = eps_from_phase(m * std::numbers::pi + delta, p.constants());
    const SolveContext ctx(p, eps, solve);
    double sup = 0.0;
    for (const double t : grid) sup = std::max(sup, std::abs(evaluate(p, ctx, t)));
    out.push_back({delta, eps, sup});
  }
  return out;
}

}  // namespace spbvp
