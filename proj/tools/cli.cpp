#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <variant>

#include "spbvp/analysis.hpp"
#include "spbvp/errors.hpp"
#include "spbvp/solver.hpp"
#include "spbvp/windows.hpp"

namespace spbvp::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string command;
  std::string f;
  double k = 1.0;
  double a = 0.0;
  double b = 1.0;
  double lambda = 0.5;
  std::string format = "json";
  std::string out = "-";
  int panels_per_period = QuadConfig{}.panels_per_period;
  int gauss_order = QuadConfig{}.gauss_order;

  std::optional<double> eps;
  std::optional<int> n;
  std::optional<double> theta_fraction;
  int grid = 101;
  std::string form = "reduced";

  int n_max = 10;
  std::optional<int> m_max;
  int mu_samples = SupNormOptions{}.n_samples;
  int n_from = 2;
  int n_to = 14;
  int m = 1;
  std::vector<double> deltas{0.5, 0.25, 0.125, 0.0625};
};

// Shortest representation that round-trips.
std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string quoted(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { row_strings(header); }

  void row(std::initializer_list<std::string> cells) { row_strings(cells); }
  void blank() { text_ += '\n'; }
  void header(std::vector<std::string> cells) {
    width_ = cells.size();
    row_strings(cells);
  }
  const std::string& str() const { return text_; }

 private:
  template <class Cells>
  void row_strings(const Cells& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
    bool first = true;
    for (const std::string& c : cells) {
      if (!first) text_ += ',';
      text_ += c;
      first = false;
    }
    text_ += '\n';
  }

  std::size_t width_;
  std::string text_;
};

QuadConfig quad_config(const Config& c) {
  QuadConfig q;
  q.panels_per_period = c.panels_per_period;
  q.gauss_order = c.gauss_order;
  q.validate();
  return q;
}

EvalForm eval_form(const Config& c) { return c.form == "naive" ? EvalForm::kNaive : EvalForm::kReduced; }

ProblemSpec problem(const Config& c) {
  validate_problem({c.k, c.a, c.b});
  return ProblemSpec(c.a, c.b, c.k, SmoothFunction::parse(c.f, {c.a, c.b}));
}

Json base_meta(const Config& c) {
  Json m;
  m["command"] = c.command;
  if (c.command != "windows") m["f"] = c.f;
  m["k"] = c.k;
  m["a"] = c.a;
  m["b"] = c.b;
  m["lambda"] = c.lambda;
  m["format"] = c.format;
  m["out"] = c.out;
  m["panels_per_period"] = c.panels_per_period;
  m["gauss_order"] = c.gauss_order;
  return m;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
Json optional_json(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

// Explicit eps or a window index with placement; either way it goes through classify later.
double resolve_eps(const Config& c) {
  if (c.eps.has_value() == c.n.has_value()) throw InvalidArgument("exactly one of --eps and --n is required");
  if (c.eps) return *c.eps;
  if (c.theta_fraction) {
    return sample_sequence(c.lambda, {c.k, c.a, c.b}, *c.n, *c.n, ThetaFraction{*c.theta_fraction})[0].eps;
  }
  return sample_sequence(c.lambda, {c.k, c.a, c.b}, *c.n, *c.n)[0].eps;
}

struct Prepared {
  ProblemSpec p;
  SolveContext ctx;
  std::vector<double> grid;
  Json meta;
};

Prepared prepare_solve(const Config& c) {
  if (c.theta_fraction && !c.n) throw InvalidArgument("--theta-fraction requires --n");
  validate_lambda(c.lambda);
  const QuadConfig quad = quad_config(c);
  ProblemSpec p = problem(c);
  const double eps = resolve_eps(c);
  SolveOptions opts;
  opts.lambda = c.lambda;
  opts.quad = quad;
  opts.form = eval_form(c);
  SolveContext ctx(p, eps, opts);
  if (c.grid < 1) throw InvalidArgument("--grid must be >= 1");
  std::vector<double> grid = uniform_grid(c.a, c.b, c.grid);

  Json meta = base_meta(c);
  meta["eps"] = eps;
  meta["n"] = optional_json(c.n);
  meta["theta_fraction"] = optional_json(c.theta_fraction);
  meta["theta"] = ctx.theta();
  meta["window_n"] = std::get<InWindow>(ctx.window()).n;
  meta["form"] = c.form;
  meta["grid"] = c.grid;
  return {std::move(p), std::move(ctx), std::move(grid), std::move(meta)};
}

struct Output {
  std::string text;
  int status = kOk;
};

Output cmd_windows(const Config& c) {
  const ProblemConstants pc{c.k, c.a, c.b};
  validate_problem(pc);
  validate_lambda(c.lambda);
  if (c.n_max < 0) throw InvalidArgument("--n-max must be >= 0");
  const int m_max = c.m_max.value_or(c.n_max + 1);
  if (m_max < 1) throw InvalidArgument("--m-max must be >= 1");
  std::vector<EpsilonWindow> ws;
  for (int n = 0; n <= c.n_max; ++n) ws.push_back(window(n, c.lambda, pc));
  const std::vector<double> eps_star = resonance_points(pc, m_max);

  if (c.format == "csv") {
    Csv csv({"n", "lo", "hi"});
    for (const auto& w : ws) csv.row({std::to_string(w.n), num(w.lo), num(w.hi)});
    csv.blank();
    csv.header({"m", "eps_star"});
    for (std::size_t i = 0; i < eps_star.size(); ++i) csv.row({std::to_string(i + 1), num(eps_star[i])});
    return {csv.str()};
  }
  Json meta = base_meta(c);
  meta["n_max"] = c.n_max;
  meta["m_max"] = m_max;
  Json doc;
  doc["meta"] = meta;
  doc["windows"] = Json::array();
  for (const auto& w : ws) doc["windows"].push_back({{"n", w.n}, {"lo", w.lo}, {"hi", w.hi}});
  doc["resonance"] = Json::array();
  for (std::size_t i = 0; i < eps_star.size(); ++i) {
    doc["resonance"].push_back({{"m", i + 1}, {"eps_star", eps_star[i]}});
  }
  return {doc.dump(2) + "\n"};
}

Output cmd_solve(const Config& c) {
  const Prepared s = prepare_solve(c);
  const SolutionProfile prof = solve_grid(s.p, s.ctx, s.grid);
  if (c.format == "csv") {
    Csv csv({"t", "y", "y1", "y2", "residual"});
    for (std::size_t i = 0; i < prof.t.size(); ++i) {
      csv.row({num(prof.t[i]), num(prof.y[i]), num(prof.y1[i]), num(prof.y2[i]), num(prof.residual[i])});
    }
    return {csv.str()};
  }
  Json doc;
  doc["meta"] = s.meta;
  doc["data"] = Json::array();
  for (std::size_t i = 0; i < prof.t.size(); ++i) {
    doc["data"].push_back({{"t", prof.t[i]},
                           {"y", prof.y[i]},
                           {"y1", prof.y1[i]},
                           {"y2", prof.y2[i]},
                           {"residual", prof.residual[i]}});
  }
  return {doc.dump(2) + "\n"};
}

Output cmd_bound(const Config& c) {
  const Prepared s = prepare_solve(c);
  if (c.mu_samples < 2) throw InvalidArgument("--mu-samples must be >= 2");
  SupNormOptions sup;
  sup.n_samples = c.mu_samples;
  const BoundReport r = certify_bound(s.p, s.ctx, s.grid, sup);
  const int status = r.certified ? kOk : kBoundViolation;
  const double measured = r.sup_error_measured.value_or(0.0);

  if (c.format == "csv") {
    Csv csv({"eps", "lambda", "k", "interval_length", "mu1", "mu2", "fp_a", "fp_b", "fpp_a", "bound",
             "sup_error", "certified", "caveat"});
    csv.row({num(r.eps), num(r.lambda), num(r.k), num(r.interval_length), num(r.mu1), num(r.mu2),
             num(r.fp_a), num(r.fp_b), num(r.fpp_a), num(r.bound), num(measured),
             r.certified ? "true" : "false", quoted(r.caveat)});
    return {csv.str(), status};
  }
  Json meta = s.meta;
  meta["mu_samples"] = c.mu_samples;
  meta["mu_safety_factor"] = sup.safety_factor;
  Json doc;
  doc["meta"] = meta;
  doc["bound"] = r.bound;
  doc["sup_error"] = measured;
  doc["certified"] = r.certified;
  doc["mu1"] = r.mu1;
  doc["mu2"] = r.mu2;
  doc["fp_a"] = r.fp_a;
  doc["fp_b"] = r.fp_b;
  doc["fpp_a"] = r.fpp_a;
  doc["interval_length"] = r.interval_length;
  doc["caveat"] = r.caveat;
  return {doc.dump(2) + "\n", status};
}

Output cmd_rates(const Config& c) {
  validate_lambda(c.lambda);
  RateOptions opts;
  opts.quad = quad_config(c);
  opts.form = eval_form(c);
  const ProblemSpec p = problem(c);
  const RateFit fit = rate_fit(p, c.lambda, c.n_from, c.n_to, c.grid, opts);
  const bool pass = fit.slope_within_order_window();

  if (c.format == "csv") {
    Csv csv({"n", "eps", "sup_error"});
    for (const auto& pt : fit.points) csv.row({std::to_string(pt.n), num(pt.eps), num(pt.sup_error)});
    csv.blank();
    csv.header({"slope", "intercept", "r_squared", "expected_order", "pass"});
    csv.row({num(fit.slope), num(fit.intercept), num(fit.r_squared), to_string(fit.expected_order),
             pass ? "true" : "false"});
    return {csv.str()};
  }
  Json meta = base_meta(c);
  meta["n_from"] = c.n_from;
  meta["n_to"] = c.n_to;
  meta["grid"] = c.grid;
  meta["form"] = c.form;
  meta["underflow_tol"] = opts.underflow_tol;
  Json doc;
  doc["meta"] = meta;
  doc["points"] = Json::array();
  for (const auto& pt : fit.points) {
    doc["points"].push_back({{"n", pt.n}, {"eps", pt.eps}, {"sup_error", pt.sup_error}});
  }
  doc["slope"] = fit.slope;
  doc["intercept"] = fit.intercept;
  doc["r_squared"] = fit.r_squared;
  doc["expected_order"] = to_string(fit.expected_order);
  doc["pass"] = pass;
  return {doc.dump(2) + "\n"};
}

Output cmd_resonance(const Config& c) {
  SweepOptions opts;
  opts.grid_size = c.grid;
  opts.quad = quad_config(c);
  opts.form = eval_form(c);
  const ProblemSpec p = problem(c);
  const auto sweep = near_resonance_sweep(p, c.m, c.deltas, opts);

  if (c.format == "csv") {
    Csv csv({"delta", "eps", "sup_abs_y"});
    for (const auto& s : sweep) csv.row({num(s.delta), num(s.eps), num(s.sup_abs_y)});
    return {csv.str()};
  }
  Json meta = base_meta(c);
  meta["m"] = c.m;
  meta["deltas"] = c.deltas;
  meta["delta_floor"] = opts.delta_floor;
  meta["grid"] = c.grid;
  meta["form"] = c.form;
  Json doc;
  doc["meta"] = meta;
  doc["data"] = Json::array();
  for (const auto& s : sweep) {
    doc["data"].push_back({{"delta", s.delta}, {"eps", s.eps}, {"sup_abs_y", s.sup_abs_y}});
  }
  return {doc.dump(2) + "\n"};
}

void add_common(CLI::App* sub, Config& c, bool needs_f) {
  if (needs_f) sub->add_option("--f", c.f, "right-hand side f(t)")->required();
  sub->add_option("--k", c.k, "coefficient k > 0");
  sub->add_option("--a", c.a, "left endpoint");
  sub->add_option("--b", c.b, "right endpoint");
  sub->add_option("--lambda", c.lambda, "window margin in (0, pi/2)");
  sub->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out, "output path, - for stdout");
  sub->add_option("--panels-per-period", c.panels_per_period);
  sub->add_option("--gauss-order", c.gauss_order);
}

void add_eps(CLI::App* sub, Config& c) {
  auto* eps = sub->add_option("--eps", c.eps, "perturbation parameter");
  auto* n = sub->add_option("--n", c.n, "window index; eps placed at the theta midpoint");
  eps->excludes(n);
  sub->add_option("--theta-fraction", c.theta_fraction, "place eps at this fraction of window n")
      ->needs(n);
  sub->add_option("--grid", c.grid, "number of grid points");
  sub->add_option("--form", c.form)->check(CLI::IsMember({"naive", "reduced"}));
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

int fail(std::ostream& err, const char* kind, const std::exception& e, int status) {
  const std::string msg = one_line(e.what());
  err << "error: ";
  if (msg.rfind(kind, 0) != 0) err << kind << ": ";
  err << msg << '\n';
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app("Singularly perturbed Neumann problems eps*y'' + k*y = f", "spbvp");
  app.require_subcommand(1);

  auto* windows = app.add_subcommand("windows", "non-resonance windows and resonance points");
  add_common(windows, c, false);
  windows->add_option("--n-max", c.n_max);
  windows->add_option("--m-max", c.m_max, "defaults to n-max + 1");

  auto* solve = app.add_subcommand("solve", "solution profile on a uniform grid");
  add_common(solve, c, true);
  add_eps(solve, c);

  auto* bound = app.add_subcommand("bound", "a priori bound and measured deviation");
  add_common(bound, c, true);
  add_eps(bound, c);
  bound->add_option("--mu-samples", c.mu_samples, "grid size for sup-norm estimates");

  auto* rates = app.add_subcommand("rates", "log-log convergence slope along the window midpoints");
  add_common(rates, c, true);
  rates->add_option("--n-from", c.n_from);
  rates->add_option("--n-to", c.n_to);
  rates->add_option("--grid", c.grid);
  rates->add_option("--form", c.form)->check(CLI::IsMember({"naive", "reduced"}));

  auto* resonance = app.add_subcommand("resonance", "growth of sup|y| as theta approaches m*pi");
  add_common(resonance, c, true);
  resonance->add_option("--m", c.m);
  resonance->add_option("--deltas", c.deltas, "strictly decreasing offsets")->delimiter(',');
  resonance->add_option("--grid", c.grid);
  resonance->add_option("--form", c.form)->check(CLI::IsMember({"naive", "reduced"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, "usage", e, kUsage);
  }

  Output result;
  try {
    c.command = app.get_subcommands().front()->get_name();
    if (c.command == "windows") {
      result = cmd_windows(c);
    } else if (c.command == "solve") {
      result = cmd_solve(c);
    } else if (c.command == "bound") {
      result = cmd_bound(c);
    } else if (c.command == "rates") {
      result = cmd_rates(c);
    } else {
      result = cmd_resonance(c);
    }
  } catch (const NearResonanceError& e) {
    return fail(err, "NearResonance", e, kResonance);
  } catch (const BudgetExceeded& e) {
    return fail(err, "BudgetExceeded", e, kBudget);
  } catch (const DegenerateFit& e) {
    return fail(err, "DegenerateFit", e, kDegenerateFit);
  } catch (const InvalidLambda& e) {
    return fail(err, "InvalidLambda", e, kUsage);
  } catch (const InvalidProblem& e) {
    return fail(err, "InvalidProblem", e, kUsage);
  } catch (const SyntaxError& e) {
    return fail(err, "SyntaxError", e, kUsage);
  } catch (const UnknownIdentifier& e) {
    return fail(err, "UnknownIdentifier", e, kUsage);
  } catch (const DomainError& e) {
    return fail(err, "DomainError", e, kUsage);
  } catch (const std::exception& e) {
    return fail(err, "InvalidArgument", e, kUsage);
  }

  if (c.out == "-") {
    out << result.text;
  } else {
    std::ofstream file(c.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << c.out << " for writing\n";
      return kUsage;
    }
    file << result.text;
  }
  if (result.status == kBoundViolation) {
    err << "error: BoundViolation: measured deviation exceeds the a priori bound\n";
  }
  return result.status;
}

}  // namespace spbvp::cli
