#pragma once

#include <variant>
#include <vector>

namespace spbvp {

// Constants of the problem eps*y'' + k*y = f on [a, b] that the window
// geometry depends on.
struct ProblemConstants {
  double k = 1.0;
  double a = 0.0;
  double b = 1.0;
};

// Closed non-resonance interval J_n of eps values. Its image under the phase
// map theta = sqrt(k/eps)*(b-a) is [n*pi + lambda, (n+1)*pi - lambda], where
// |sin theta| >= sin lambda.
struct EpsilonWindow {
  int n = 0;
  double lo = 0.0;
  double hi = 0.0;
  double lambda = 0.0;
  ProblemConstants problem;

  bool contains(double eps) const { return eps >= lo && eps <= hi; }
};

struct InWindow {
  int n = 0;
  double theta = 0.0;
};

struct NearResonance {
  int nearest_m = 0;
  double distance_theta = 0.0;
};

using Classification = std::variant<InWindow, NearResonance>;

inline bool is_in_window(const Classification& c) { return std::holds_alternative<InWindow>(c); }

// Throws InvalidLambda unless 0 < lambda < pi/2.
void validate_lambda(double lambda);
// Throws InvalidProblem unless k > 0 and a < b (all finite).
void validate_problem(const ProblemConstants& p);

double phase(double eps, const ProblemConstants& p);
// Inverse of phase(): the eps whose phase is theta.
double eps_from_phase(double theta, const ProblemConstants& p);

EpsilonWindow window(int n, double lambda, const ProblemConstants& p);

// eps*_m = k((b-a)/(m*pi))^2 for m = 1..m_max, strictly decreasing.
std::vector<double> resonance_points(const ProblemConstants& p, int m_max);

Classification classify(double eps, double lambda, const ProblemConstants& p);

struct ThetaMidpoint {};
// theta_n = n*pi + lambda + r*(pi - 2*lambda), r in (0, 1).
struct ThetaFraction {
  double r = 0.5;
};
using Placement = std::variant<ThetaMidpoint, ThetaFraction>;

struct SequencePoint {
  int n = 0;
  double eps = 0.0;
};

std::vector<SequencePoint> sample_sequence(double lambda, const ProblemConstants& p, int n_from,
                                           int n_to, Placement placement = ThetaMidpoint{});

}  // namespace spbvp
