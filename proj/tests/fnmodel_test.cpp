#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "spbvp/errors.hpp"
#include "spbvp/fnmodel.hpp"

using namespace spbvp;

namespace {

const Expr t_ = Expr::variable();

double derivative_at(const std::string& src, double t, int order) {
  return eval_jet(parse_expr(src), t).derivative(order);
}

bool close(double actual, double expected, double rel) {
  return std::abs(actual - expected) <= rel * std::max(1.0, std::abs(expected));
}

// Random trees whose denominators are bounded away from zero.
class ExprGenerator {
 public:
  explicit ExprGenerator(std::uint64_t seed) : rng_(seed) {}

  Expr operator()(int depth) {
    if (depth <= 1 || Uniform(0, 5) == 0) return Leaf();
    const int depth_next = depth - 1;
    switch (Uniform(0, 9)) {
      case 0:
        return Expr::neg((*this)(depth_next));
      case 1:
        return Expr::sin((*this)(depth_next));
      case 2:
        return Expr::cos((*this)(depth_next));
      case 3:
        return Expr::exp(Expr::sin((*this)(depth_next - 1)));
      case 4:
        return Expr::pow((*this)(depth_next), static_cast<unsigned>(Uniform(0, 3)));
      case 5:
        return (*this)(depth_next) + (*this)(depth_next);
      case 6:
        return (*this)(depth_next) - (*this)(depth_next);
      case 7:
        return (*this)(depth_next) * (*this)(depth_next);
      default:
        return (*this)(depth_next) /
               (Expr::constant(2.0) + Expr::cos((*this)(depth_next - 1)));
    }
  }

 private:
  int Uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Expr Leaf() {
    switch (Uniform(0, 3)) {
      case 0:
        return Expr::pi();
      case 1:
        return Expr::constant(std::uniform_real_distribution<double>(-3.0, 3.0)(rng_));
      default:
        return t_;
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace

TEST_SUITE("fnmodel") {
  TEST_CASE("parse_expr builds the expected trees") {
    CHECK(parse_expr("exp(t)") == Expr::exp(t_));
    CHECK(parse_expr("1 + 2*t^3") ==
          Expr::constant(1) + Expr::constant(2) * Expr::pow(t_, 3));
    CHECK(parse_expr("cos(2*pi*t)") == Expr::cos(Expr::constant(2) * Expr::pi() * t_));
    CHECK(parse_expr("-t^2") == Expr::neg(Expr::pow(t_, 2)));
    CHECK(parse_expr("t - 1 - 2") == (t_ - Expr::constant(1)) - Expr::constant(2));
    CHECK(parse_expr("8/4/2") == (Expr::constant(8) / Expr::constant(4)) / Expr::constant(2));
    CHECK(parse_expr("  2.5e-1 *\t(t)  ") == Expr::constant(0.25) * t_);
    CHECK(parse_expr("2*-t") == Expr::constant(2) * Expr::neg(t_));
    CHECK(parse_expr(".5") == Expr::constant(0.5));
  }

  TEST_CASE("parse_expr reports syntax errors with position") {
    CHECK_THROWS_AS(parse_expr(""), SyntaxError);
    try {
      parse_expr("2*");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.position() == 2);
    }
    try {
      parse_expr("(t");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.expected() == "')'");
    }
    CHECK_THROWS_AS(parse_expr("t^2.5"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("t^-1"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("2t"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("exp t"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("t \xc3\xa9"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("1e999"), SyntaxError);
  }

  TEST_CASE("parse_expr rejects unknown identifiers") {
    try {
      parse_expr("1 + tan(t)");
      FAIL("expected UnknownIdentifier");
    } catch (const UnknownIdentifier& e) {
      CHECK(e.name() == "tan");
      CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse_expr("x"), UnknownIdentifier);
    CHECK_THROWS_AS(parse_expr("e"), UnknownIdentifier);
  }

  TEST_CASE("eval_jet spot values") {
    CHECK(derivative_at("t^2", 3.0, 1) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(derivative_at("exp(t)", 1.0, 0) == doctest::Approx(2.718281828459045).epsilon(1e-15));
    CHECK(derivative_at("sin(2*pi*t)", 0.0, 3) ==
          doctest::Approx(-248.05021344239856).epsilon(1e-14));
  }

  TEST_CASE("Jet3 products follow the truncated Cauchy product exactly") {
    // (1 + 2x) * (3 - x + x^2 + 4x^3) = 3 + 5x - x^2 + 6x^3 + O(x^4)
    const Jet3 p{{1.0, 2.0, 0.0, 0.0}};
    const Jet3 q{{3.0, -1.0, 1.0, 4.0}};
    CHECK((p * q) == Jet3{{3.0, 5.0, -1.0, 6.0}});
    // (3 + 5x - x^2 + 6x^3) / (1 + 2x) recovers q through order 3.
    CHECK((Jet3{{3.0, 5.0, -1.0, 6.0}} / p) == q);
    CHECK(pow(p, 3) == Jet3{{1.0, 6.0, 12.0, 8.0}});
    CHECK(pow(q, 0) == Jet3::constant(1.0));
  }

  TEST_CASE("third derivatives match a closed-form catalogue") {
    struct Pair {
      const char* f;
      std::function<double(double)> d3;
    };
    const double pi = std::numbers::pi;
    const std::vector<Pair> catalogue = {
        {"exp(t)", [](double t) { return std::exp(t); }},
        {"sin(t)", [](double t) { return -std::cos(t); }},
        {"cos(t)", [](double t) { return std::sin(t); }},
        {"t^4", [](double t) { return 24.0 * t; }},
        {"exp(2*t)", [](double t) { return 8.0 * std::exp(2.0 * t); }},
        {"sin(3*t)", [](double t) { return -27.0 * std::cos(3.0 * t); }},
        {"1/t", [](double t) { return -6.0 / std::pow(t, 4); }},
        {"t*exp(t)", [](double t) { return (t + 3.0) * std::exp(t); }},
        {"exp(t)*sin(t)", [](double t) { return 2.0 * std::exp(t) * (std::cos(t) - std::sin(t)); }},
        {"t^5 - 3*t^2", [](double t) { return 60.0 * t * t; }},
        {"cos(t)^2", [](double t) { return 4.0 * std::sin(2.0 * t); }},
        {"pi*t^3", [pi](double) { return 6.0 * pi; }},
        {"(t - 2)/(t + 1)", [](double t) { return 18.0 / std::pow(t + 1.0, 4); }},
        {"-(cos(2*pi*t))", [pi](double t) { return -std::pow(2 * pi, 3) * std::sin(2 * pi * t); }},
    };
    for (const auto& pair : catalogue) {
      for (double t : {0.3, 0.7, 1.3}) {
        INFO(pair.f << " at t=" << t);
        CHECK(close(derivative_at(pair.f, t, 3), pair.d3(t), 1e-12));
      }
    }
  }

  TEST_CASE("random trees: jet coefficients agree with finite differences") {
    ExprGenerator gen(20261016);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pick_t(-1.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const Expr e = gen(5);
      const double t = pick_t(rng);
      Jet3 j;
      try {
        j = eval_jet(e, t);
      } catch (const DomainError&) {
        continue;
      }
      if (!(std::abs(j.c[0]) < 1e4)) continue;
      for (int order = 1; order <= 3; ++order) {
        const auto lower = [&](double s) { return eval_jet(e, s).derivative(order - 1); };
        const double fd = testing::central_difference8(lower, t, 1e-3);
        INFO(to_string(e) << " t=" << t << " order=" << order);
        CHECK(std::abs(j.derivative(order) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
      }
      ++checked;
    }
    CHECK(checked > 200);
  }

  TEST_CASE("printing then parsing reproduces the tree") {
    ExprGenerator gen(99);
    for (int trial = 0; trial < 500; ++trial) {
      const Expr e = gen(5);
      const std::string text = to_string(e);
      INFO(text);
      CHECK(parse_expr(text) == e);
    }
    for (const char* src : {"1 + 2*t^3", "cos(2*pi*t)", "-(-t)", "exp(t)/(2 + t^2)", "0.1*t"}) {
      const Expr e = parse_expr(src);
      CHECK(parse_expr(to_string(e)) == e);
    }
  }

  TEST_CASE("negative constants normalize to negation") {
    CHECK(Expr::constant(-2.0) == Expr::neg(Expr::constant(2.0)));
    CHECK(parse_expr(to_string(Expr::constant(-0.125))) == Expr::constant(-0.125));
    CHECK_THROWS_AS(Expr::constant(std::nan("")), InvalidArgument);
  }

  TEST_CASE("SmoothFunction validates denominators on its domain") {
    CHECK_THROWS_AS(SmoothFunction::parse("1/t", {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(SmoothFunction::parse("1/(t - 0.5)", {0.0, 1.0}), DomainError);
    const SmoothFunction ok = SmoothFunction::parse("1/t", {0.5, 1.0});
    CHECK(ok.eval(0.5, 1) == doctest::Approx(-4.0));
    CHECK_THROWS_AS(ok.eval(0.25), InvalidArgument);
    CHECK_THROWS_AS(ok.eval(0.75, 4), InvalidArgument);
    CHECK_THROWS_AS(SmoothFunction::parse("t", {1.0, 0.0}), InvalidProblem);
    // Blows past double range inside the domain.
    CHECK_THROWS_AS(SmoothFunction::parse("exp(exp(exp(t)))", {0.0, 2.0}), DomainError);
  }

  TEST_CASE("built-in constructors") {
    const Interval unit{0.0, 1.0};
    CHECK(builtin::exponential(unit).eval(0.5, 3) == doctest::Approx(std::exp(0.5)));
    CHECK(builtin::exponential(unit).label() == "exp(t)");
    CHECK(builtin::constant(5.0, unit).eval(0.3, 1) == 0.0);
    CHECK(builtin::cosine(2.0, unit).eval(0.25, 1) == doctest::Approx(-2.0 * std::sin(0.5)));
    CHECK(builtin::sine(1.0, unit).eval(0.4, 2) == doctest::Approx(-std::sin(0.4)));
    const std::vector<double> coeffs{1.0, 0.0, 0.0, 2.0};
    const SmoothFunction poly = builtin::polynomial(coeffs, unit);
    CHECK(poly.eval(0.5) == doctest::Approx(1.25));
    CHECK(poly.eval(0.5, 3) == doctest::Approx(12.0));
  }

  TEST_CASE("sup_norm_deriv") {
    const Interval unit{0.0, 1.0};
    const SmoothFunction e = builtin::exponential(unit);
    for (int n : {2, 3, 17, 4097}) {
      CHECK(sup_norm_deriv(e, 2, unit, {n, 1.05}) ==
            doctest::Approx(std::exp(1.0) * 1.05).epsilon(1e-15));
    }
    CHECK(sup_norm_deriv(SmoothFunction::parse("cos(2*pi*t)", unit), 0, unit, {101, 1.05}) ==
          doctest::Approx(1.05).epsilon(1e-15));
    CHECK(sup_norm_deriv(builtin::constant(5.0, unit), 1, unit) == 0.0);
    CHECK_THROWS_AS(sup_norm_deriv(e, 0, unit, {1, 1.05}), InvalidArgument);

    // Refining a nested grid can only raise the maximum.
    const SmoothFunction wavy = SmoothFunction::parse("sin(7*t) + t^2", unit);
    double previous = 0.0;
    for (int n : {3, 5, 9, 17, 33, 65, 129}) {
      const double s = sup_norm_deriv(wavy, 1, unit, {n, 1.05});
      CHECK(s >= previous);
      previous = s;
    }
  }
}
