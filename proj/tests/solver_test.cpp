#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "spbvp/analysis.hpp"
#include "spbvp/errors.hpp"
#include "spbvp/solver.hpp"

using namespace spbvp;

namespace {

constexpr double kPi = std::numbers::pi;
const Interval kUnit{0.0, 1.0};

ProblemSpec example1(double k = 1.0) { return ProblemSpec(0.0, 1.0, k, builtin::exponential(kUnit)); }

ProblemSpec constant_rhs() { return ProblemSpec(0.0, 1.0, 2.0, builtin::constant(1.0, kUnit)); }

SolveOptions naive_options() {
  SolveOptions o;
  o.form = EvalForm::kNaive;
  return o;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("problem validation") {
    CHECK_THROWS_AS(ProblemSpec(0.0, 1.0, 0.0, builtin::exponential(kUnit)), InvalidProblem);
    CHECK_THROWS_AS(ProblemSpec(1.0, 1.0, 1.0, builtin::exponential(kUnit)), InvalidProblem);
    CHECK_THROWS_AS(ProblemSpec(0.0, 2.0, 1.0, builtin::exponential(kUnit)), InvalidProblem);
  }

  TEST_CASE("constant right-hand side gives the constant solution") {
    const ProblemSpec p = constant_rhs();
    for (double eps : {0.4, 0.05, 0.003}) {
      if (!is_in_window(classify(eps, 0.5, p.constants()))) continue;
      const SolveContext naive(p, eps, naive_options());
      const SolveContext reduced(p, eps);
      for (double t : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        CHECK(evaluate_naive(p, naive, t) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(evaluate_reduced(p, reduced, t) == 0.5);
        CHECK(std::abs(derivative(p, naive, t)) <= 1e-9);
        CHECK(std::abs(second_derivative(p, naive, t)) <= 1e-8 / eps);
      }
    }
  }

  TEST_CASE("Example-1 closed form at t = 0") {
    const ProblemSpec p = example1();
    const double eps = 4.0 / (kPi * kPi);
    const double expected = 1.9430311108455145;  // mpmath, 30 digits
    CHECK(evaluate_naive(p, SolveContext(p, eps, naive_options()), 0.0) ==
          doctest::Approx(expected).epsilon(1e-12));
    const SolveContext ctx(p, eps);
    CHECK(evaluate_reduced(p, ctx, 0.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(second_derivative(p, ctx, 0.0) == doctest::Approx(-2.326836000491269).epsilon(1e-11));
  }

  TEST_CASE("naive and reduced forms agree along the midpoint sequence") {
    const ProblemSpec p = example1();
    const std::vector<double> grid = uniform_grid(0.0, 1.0, 11);
    for (const SequencePoint& sp : sample_sequence(0.5, p.constants(), 0, 12)) {
      const SolveContext naive(p, sp.eps, naive_options());
      const SolveContext reduced(p, sp.eps);
      for (double t : grid) {
        const double yn = evaluate_naive(p, naive, t);
        const double yr = evaluate_reduced(p, reduced, t);
        INFO("n=" << sp.n << " t=" << t);
        CHECK(std::abs(yn - yr) <= 1e-8 * (1.0 + std::abs(yr)));
      }
    }
  }

  TEST_CASE("boundary conditions") {
    const ProblemSpec p = example1();
    const double eps0 = 4.0 / (kPi * kPi);
    const SolveContext ctx(p, eps0);
    CHECK(derivative(p, ctx, 0.0) == 0.0);
    CHECK(std::abs(derivative(p, ctx, 1.0)) <= 1e-8);

    const std::vector<ProblemSpec> problems = {
        example1(), example1(4.0),
        ProblemSpec(0.0, 1.0, 1.0, SmoothFunction::parse("1 + 2*t^3", kUnit)),
        ProblemSpec(-1.0, 2.0, 3.0, SmoothFunction::parse("sin(t) + t^2", {-1.0, 2.0}))};
    for (const ProblemSpec& q : problems) {
      const double sup_f = sup_norm_deriv(q.f, 0, q.interval(), {1025, 1.0});
      for (const SequencePoint& sp : sample_sequence(0.3, q.constants(), 0, 12, ThetaFraction{0.2})) {
        const SolveContext c(q, sp.eps, SolveOptions{0.3, {}, EvalForm::kReduced, false});
        const double tol = 1e-8 * c.omega() * sup_f / q.k;
        CHECK(std::abs(derivative(q, c, q.a)) <= tol);
        CHECK(std::abs(derivative(q, c, q.b)) <= tol);
      }
    }
  }

  TEST_CASE("derivatives match the closed form") {
    const ProblemSpec p = example1();
    for (const SequencePoint& sp : sample_sequence(0.5, p.constants(), 0, 6)) {
      const SolveContext ctx(p, sp.eps);
      for (double t : {0.1, 0.45, 0.8}) {
        const double expected = testing::example1_derivative(0.0, 1.0, 1.0, sp.eps, t);
        CHECK(std::abs(derivative(p, ctx, t) - expected) <= 1e-9 * (1.0 + std::abs(expected)));
      }
    }
  }

  TEST_CASE("second derivative satisfies the ODE") {
    const ProblemSpec p = example1();
    for (const SequencePoint& sp : sample_sequence(0.5, p.constants(), 0, 12)) {
      const SolveContext ctx(p, sp.eps, naive_options());
      for (double t : uniform_grid(0.0, 1.0, 11)) {
        const double r =
            sp.eps * second_derivative(p, ctx, t) + evaluate_naive(p, ctx, t) - std::exp(t);
        CHECK(std::abs(r) <= 1e-7 * (1.0 + std::exp(t)));
      }
    }
  }

  TEST_CASE("solve_grid") {
    const ProblemSpec c = constant_rhs();
    const SolveContext cctx(c, 0.4);
    const std::vector<double> single{0.0};
    const SolutionProfile one = solve_grid(c, cctx, single);
    REQUIRE(one.t.size() == 1);
    CHECK(one.t[0] == 0.0);
    CHECK(one.y[0] == 0.5);
    CHECK(one.y1[0] == 0.0);
    CHECK(std::abs(one.y2[0]) <= 1e-8 / 0.4);
    CHECK(std::abs(one.residual[0]) <= 1e-12);

    const ProblemSpec p = example1();
    const double eps = 4.0 / (kPi * kPi);
    const SolveContext ctx(p, eps);
    const std::vector<double> grid = uniform_grid(0.0, 1.0, 101);
    const SolutionProfile prof = solve_grid(p, ctx, grid);
    double worst = 0.0;
    double worst_residual = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst = std::max(worst, std::abs(prof.y[i] - oracle_example1(0.0, 1.0, 1.0, eps, grid[i])));
      worst_residual = std::max(worst_residual, std::abs(prof.residual[i]));
      CHECK(prof.residual[i] == eps * prof.y2[i] + prof.y[i] - std::exp(grid[i]));
      CHECK(prof.y[i] == evaluate(p, ctx, grid[i]));
      CHECK(prof.y1[i] == derivative(p, ctx, grid[i]));
    }
    CHECK(worst <= 1e-8);
    CHECK(worst_residual <= 1e-7 * (1.0 + std::exp(1.0)));

    const std::vector<double> unsorted{0.5, 0.2};
    CHECK_THROWS_AS(solve_grid(p, ctx, unsorted), InvalidArgument);
    const std::vector<double> outside{0.5, 1.5};
    CHECK_THROWS_AS(solve_grid(p, ctx, outside), InvalidArgument);
  }

  TEST_CASE("near-resonant eps is refused") {
    const ProblemSpec p = example1();
    std::mt19937_64 rng(5);
    for (double lambda : {0.1, 0.5, 1.0}) {
      std::uniform_real_distribution<double> pick(-lambda * 0.999, lambda * 0.999);
      for (int m = 1; m <= 20; ++m) {
        const double eps = eps_from_phase(m * kPi + pick(rng), p.constants());
        SolveOptions o;
        o.lambda = lambda;
        CHECK_THROWS_AS(SolveContext(p, eps, o), NearResonanceError);
      }
    }
    CHECK_THROWS_AS(SolveContext(p, 0.1013211836), NearResonanceError);
  }

  TEST_CASE("tiny eps exceeds the quadrature budget") {
    const ProblemSpec p = example1();
    const double eps = eps_from_phase((2 * 20'000'000 + 1) * kPi / 2, p.constants());
    CHECK_THROWS_AS(SolveContext(p, eps), BudgetExceeded);
  }

  TEST_CASE("context must match the problem") {
    const ProblemSpec p = example1();
    const ProblemSpec q = example1(4.0);
    const SolveContext ctx(p, 0.05);
    CHECK_THROWS_AS(evaluate(q, ctx, 0.5), InvalidArgument);
    CHECK_THROWS_AS(evaluate(p, ctx, 1.5), InvalidArgument);
  }

  TEST_CASE("concurrent evaluation over a shared context") {
    const ProblemSpec p(0.0, 1.0, 1.0, SmoothFunction::parse("cos(2*pi*t) + t", kUnit));
    const SolveContext ctx(p, sample_sequence(0.5, p.constants(), 9, 9)[0].eps);
    const std::vector<double> grid = uniform_grid(0.0, 1.0, 64);
    std::vector<double> serial;
    for (double t : grid) serial.push_back(evaluate(p, ctx, t));
    std::vector<double> parallel(grid.size());
    std::vector<std::thread> workers;
    for (int w = 0; w < 4; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < grid.size(); i += 4) {
          parallel[i] = evaluate(p, ctx, grid[i]);
        }
      });
    }
    for (auto& th : workers) th.join();
    CHECK(parallel == serial);
  }
}
