#include "spbvp/windows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spbvp/errors.hpp"

namespace spbvp {

using std::numbers::pi;

void validate_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < pi / 2)) throw InvalidLambda(lambda);
}

void validate_problem(const ProblemConstants& p) {
  if (!(std::isfinite(p.k) && p.k > 0.0)) throw InvalidProblem("InvalidProblem: k must be > 0");
  if (!(std::isfinite(p.a) && std::isfinite(p.b) && p.a < p.b)) {
    throw InvalidProblem("InvalidProblem: need finite a < b");
  }
}

double phase(double eps, const ProblemConstants& p) { return std::sqrt(p.k / eps) * (p.b - p.a); }

double eps_from_phase(double theta, const ProblemConstants& p) {
  const double r = (p.b - p.a) / theta;
  return p.k * r * r;
}

EpsilonWindow window(int n, double lambda, const ProblemConstants& p) {
  validate_lambda(lambda);
  validate_problem(p);
  if (n < 0) throw InvalidArgument("window index must be >= 0");
  EpsilonWindow w;
  w.n = n;
  w.lambda = lambda;
  w.problem = p;
  w.lo = eps_from_phase((n + 1) * pi - lambda, p);
  w.hi = eps_from_phase(n * pi + lambda, p);
  return w;
}

std::vector<double> resonance_points(const ProblemConstants& p, int m_max) {
  validate_problem(p);
  if (m_max < 1) throw InvalidArgument("m_max must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m_max));
  for (int m = 1; m <= m_max; ++m) out.push_back(eps_from_phase(m * pi, p));
  return out;
}

Classification classify(double eps, double lambda, const ProblemConstants& p) {
  validate_lambda(lambda);
  validate_problem(p);
  if (!(eps > 0.0 && std::isfinite(eps))) throw InvalidArgument("eps must be positive and finite");
  const double theta = phase(eps, p);
  if (!(theta / pi < 1e9)) throw InvalidArgument("eps too small to index a window");
  // Membership is decided in eps against the same endpoints window() reports,
  // so window edges always classify as inside. Rounding in theta can only move
  // the candidate index by one.
  const int n0 = static_cast<int>(std::floor(theta / pi));
  for (int n = std::max(0, n0 - 1); n <= n0 + 1; ++n) {
    const double lo = eps_from_phase((n + 1) * pi - lambda, p);
    const double hi = eps_from_phase(n * pi + lambda, p);
    if (eps >= lo && eps <= hi) return InWindow{n, theta};
  }
  const double m = std::round(theta / pi);
  return NearResonance{static_cast<int>(m), std::abs(theta - m * pi)};
}

std::vector<SequencePoint> sample_sequence(double lambda, const ProblemConstants& p, int n_from,
                                           int n_to, Placement placement) {
  validate_lambda(lambda);
  validate_problem(p);
  if (n_from < 0 || n_from > n_to) throw InvalidArgument("need 0 <= n_from <= n_to");
  double fraction = 0.5;
  if (const auto* f = std::get_if<ThetaFraction>(&placement)) {
    if (!(f->r > 0.0 && f->r < 1.0)) throw InvalidArgument("theta fraction must lie in (0, 1)");
    fraction = f->r;
  }
  std::vector<SequencePoint> out;
  out.reserve(static_cast<std::size_t>(n_to - n_from + 1));
  for (int n = n_from; n <= n_to; ++n) {
    const double theta = std::holds_alternative<ThetaMidpoint>(placement)
                             ? (2 * n + 1) * pi / 2
                             : n * pi + lambda + fraction * (pi - 2 * lambda);
    out.push_back({n, eps_from_phase(theta, p)});
  }
  return out;
}

}  // namespace spbvp
