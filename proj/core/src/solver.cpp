#include "spbvp/solver.hpp"

#include <cmath>
#include <numbers>

#include "spbvp/errors.hpp"

namespace spbvp {

ProblemSpec::ProblemSpec(double a_in, double b_in, double k_in, SmoothFunction f_in)
    : a(a_in), b(b_in), k(k_in), f(std::move(f_in)) {
  validate_problem(constants());
  const Interval d = f.domain();
  if (d.lo > a || d.hi < b) throw InvalidProblem("InvalidProblem: f is not defined on all of [a, b]");
}

SolveContext::SolveContext(const ProblemSpec& p, double eps, const SolveOptions& options)
    : constants_(p.constants()),
      eps_(eps),
      lambda_(options.lambda),
      omega_(0.0),
      theta_(0.0),
      sin_theta_(0.0),
      window_(classify(eps, options.lambda, p.constants())),
      quad_(options.quad),
      form_(options.form) {
  quad_.validate();
  if (const auto* near = std::get_if<NearResonance>(&window_)) {
    if (!options.allow_near_resonance) {
      throw NearResonanceError(eps, near->nearest_m, near->distance_theta);
    }
  }
  omega_ = std::sqrt(p.k / eps);
  theta_ = omega_ * (p.b - p.a);
  sin_theta_ = std::sin(theta_);
  if (sin_theta_ == 0.0) {
    throw NearResonanceError(eps, static_cast<int>(std::round(theta_ / std::numbers::pi)), 0.0);
  }

  const SinCosPair full =
      osc_integral_pair(omega_, p.b, [&](double s) { return p.f.eval(s); }, p.a, p.b, quad_);
  full_cos_ = full.cos / eps;
  full_sin_deriv_ = osc_integral(
                        Kernel::kSin, omega_, p.b, [&](double s) { return p.f.eval(s, 1); }, p.a,
                        p.b, quad_) /
                    p.k;
}

void SolveContext::check_matches(const ProblemSpec& p) const {
  if (p.a != constants_.a || p.b != constants_.b || p.k != constants_.k) {
    throw InvalidArgument("solve context was built for a different problem");
  }
}

namespace {

void CheckPoint(const ProblemSpec& p, double t) {
  if (!(t >= p.a && t <= p.b)) throw InvalidArgument("evaluation point outside [a, b]");
}

// int_a^t trig(omega*(t-s)) f(s)/eps ds, both kernels.
SinCosPair PartialIntegrals(const ProblemSpec& p, const SolveContext& ctx, double t) {
  if (t == p.a) return {};
  const SinCosPair r = osc_integral_pair(
      ctx.omega(), t, [&](double s) { return p.f.eval(s); }, p.a, t, ctx.quad());
  return {r.sin / ctx.eps(), r.cos / ctx.eps()};
}

// int_a^t cos(omega*(t-s)) f'(s)/k ds
double PartialDerivativeIntegral(const ProblemSpec& p, const SolveContext& ctx, double t) {
  if (t == p.a) return 0.0;
  return osc_integral(
             Kernel::kCos, ctx.omega(), t, [&](double s) { return p.f.eval(s, 1); }, p.a, t,
             ctx.quad()) /
         p.k;
}

double NaiveFrom(const SolveContext& ctx, double cos_ta, const SinCosPair& partial) {
  return cos_ta * ctx.full_cos_integral() / (ctx.omega() * ctx.sin_theta()) +
         partial.sin / ctx.omega();
}

double ReducedCorrection(const ProblemSpec& p, const SolveContext& ctx, double t) {
  const double cos_ta = std::cos(ctx.omega() * (t - p.a));
  return cos_ta / ctx.sin_theta() * ctx.full_sin_derivative_integral() -
         PartialDerivativeIntegral(p, ctx, t);
}

double DerivativeFrom(const SolveContext& ctx, double sin_ta, const SinCosPair& partial) {
  return -sin_ta * ctx.full_cos_integral() / ctx.sin_theta() + partial.cos;
}

double SecondDerivativeFrom(const SolveContext& ctx, double cos_ta, const SinCosPair& partial,
                            double f_t) {
  return -ctx.omega() * cos_ta * ctx.full_cos_integral() / ctx.sin_theta() -
         ctx.omega() * partial.sin + f_t / ctx.eps();
}

}  // namespace

double evaluate_naive(const ProblemSpec& p, const SolveContext& ctx, double t) {
  ctx.check_matches(p);
  CheckPoint(p, t);
  return NaiveFrom(ctx, std::cos(ctx.omega() * (t - p.a)), PartialIntegrals(p, ctx, t));
}

double evaluate_reduced(const ProblemSpec& p, const SolveContext& ctx, double t) {
  ctx.check_matches(p);
  CheckPoint(p, t);
  return p.f.eval(t) / p.k + ReducedCorrection(p, ctx, t);
}

double evaluate(const ProblemSpec& p, const SolveContext& ctx, double t) {
  return ctx.form() == EvalForm::kNaive ? evaluate_naive(p, ctx, t) : evaluate_reduced(p, ctx, t);
}

double deviation_from_reduced(const ProblemSpec& p, const SolveContext& ctx, double t) {
  if (ctx.form() == EvalForm::kNaive) return evaluate_naive(p, ctx, t) - p.f.eval(t) / p.k;
  ctx.check_matches(p);
  CheckPoint(p, t);
  return ReducedCorrection(p, ctx, t);
}

double derivative(const ProblemSpec& p, const SolveContext& ctx, double t) {
  ctx.check_matches(p);
  CheckPoint(p, t);
  return DerivativeFrom(ctx, std::sin(ctx.omega() * (t - p.a)), PartialIntegrals(p, ctx, t));
}

double second_derivative(const ProblemSpec& p, const SolveContext& ctx, double t) {
  ctx.check_matches(p);
  CheckPoint(p, t);
  return SecondDerivativeFrom(ctx, std::cos(ctx.omega() * (t - p.a)), PartialIntegrals(p, ctx, t),
                              p.f.eval(t));
}

SolutionProfile solve_grid(const ProblemSpec& p, const SolveContext& ctx,
                           std::span<const double> grid) {
  ctx.check_matches(p);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CheckPoint(p, grid[i]);
    if (i > 0 && grid[i] < grid[i - 1]) throw InvalidArgument("grid must be sorted");
  }
  SolutionProfile out;
  out.t.assign(grid.begin(), grid.end());
  out.y.reserve(grid.size());
  out.y1.reserve(grid.size());
  out.y2.reserve(grid.size());
  out.residual.reserve(grid.size());
  for (const double t : grid) {
    const double phase = ctx.omega() * (t - p.a);
    const double cos_ta = std::cos(phase);
    const double sin_ta = std::sin(phase);
    const SinCosPair partial = PartialIntegrals(p, ctx, t);
    const double f_t = p.f.eval(t);
    const double y = ctx.form() == EvalForm::kNaive ? NaiveFrom(ctx, cos_ta, partial)
                                                    : f_t / p.k + ReducedCorrection(p, ctx, t);
    const double y2 = SecondDerivativeFrom(ctx, cos_ta, partial, f_t);
    out.y.push_back(y);
    out.y1.push_back(DerivativeFrom(ctx, sin_ta, partial));
    out.y2.push_back(y2);
    out.residual.push_back(ctx.eps() * y2 + p.k * y - f_t);
  }
  return out;
}

std::vector<double> uniform_grid(double a, double b, int n) {
  if (n < 1) throw InvalidArgument("grid size must be >= 1");
  if (n == 1) return {a};
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  g.back() = b;
  return g;
}

}  // namespace spbvp
