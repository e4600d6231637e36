// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any fails.

#include <chrono>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "common.hpp"
#include "eivdesign/criterion.hpp"
#include "eivdesign/equivalence.hpp"
#include "eivdesign/solvers.hpp"
#include "eivdesign/tables.hpp"
#include "oracles/oracles.hpp"

using namespace eivdesign;
using namespace testing_support;

namespace {

constexpr auto MLE = EstimationMethod::MLE;
constexpr auto LSE = EstimationMethod::LSE;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string worst_cell(const Table& t) {
  double worst = 0;
  std::string where;
  for (const auto& c : t.cells) {
    const double gap = std::abs(c.computed - c.expected);
    if (gap / c.tolerance > worst) {
      worst = gap / c.tolerance;
      where = fmt::format("{} {} {:.4f} vs {:.2f}", c.row, c.column, c.computed, c.expected);
    }
  }
  return fmt::format("worst {:.2f} of tolerance at {}", worst, where);
}

Outcome table1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const Table t = reproduce_table(1);
  const double secs = seconds_since(t0);
  int points = 0, effs = 0;
  for (const auto& c : t.cells) {
    const bool eff = c.column == "efficiency_pct";
    (eff ? effs : points) += 1;
    o.require(c.pass(), fmt::format("{} {} = {:.4f}, expected {:.2f}", c.row, c.column, c.computed, c.expected));
  }
  o.require(points == 20 && effs == 10, fmt::format("{} point cells, {} efficiency cells", points, effs));
  o.require(secs < 10.0, fmt::format("took {:.1f} s", secs));
  if (o.pass) o.detail = fmt::format("20 points, 10 efficiencies, {:.2f} s; {}", secs, worst_cell(t));
  return o;
}

Outcome no_error_designs() {
  Outcome o;
  const auto p = michaelis_menten_table_prior(11);
  const double ml = solve_mm_emax_ml(p, 80, 0, ModelKind::MichaelisMenten).points()[0];
  const double ls = solve_mm_emax_ls(p, 80, 0, ModelKind::MichaelisMenten).points()[0];
  o.require(std::abs(ml - 3.06) <= 0.01, fmt::format("MLE {:.4f}", ml));
  o.require(std::abs(ls - 5.82) <= 0.01, fmt::format("LSE {:.4f}", ls));
  if (o.pass) o.detail = fmt::format("MLE ({:.4f}, 80), LSE ({:.4f}, 80)", ml, ls);
  return o;
}

Outcome bayes_exponential() {
  Outcome o;
  const auto p = exponential_table_prior();
  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult ml = solve_saturated(ModelKind::Exponential, p, {0, 35}, MLE, ErrorSpec::from_ratio(1));
  const SolveResult ls = solve_saturated(ModelKind::Exponential, p, {0, 35}, LSE, ErrorSpec::from_ratio(1));
  const double secs = seconds_since(t0);
  const auto& a = ml.design.points();
  const auto& b = ls.design.points();
  o.require(ml.route == "root-equation" && ls.route == "particle-swarm", "unexpected solver route");
  o.require(a[0] == 0 && std::abs(a[1] - 11.59) <= 0.01 && a[2] == 35, fmt::format("MLE x1 {:.4f}", a[1]));
  o.require(std::abs(b[0] - 6.79) <= 0.05 && std::abs(b[1] - 16.33) <= 0.05 && b[2] == 35,
            fmt::format("LSE ({:.4f}, {:.4f})", b[0], b[1]));
  o.require(secs < 60.0, fmt::format("took {:.1f} s", secs));
  if (o.pass) {
    o.detail = fmt::format("MLE (0, {:.4f}, 35); LSE ({:.4f}, {:.4f}, 35) seed {}; {:.2f} s", a[1], b[0], b[1],
                           SwarmConfig{}.seed, secs);
  }
  return o;
}

Outcome local_exponential() {
  Outcome o;
  const auto p = DiscretePrior::point(exponential_nominal_theta());
  const Design ml = solve_exp_ml(p, 35, 1);
  const Design ls = solve_exp_ls(p, 35, 1, {}).design;
  o.require(std::abs(ml.points()[1] - 17.23) <= 0.01, fmt::format("MLE x1 {:.4f}", ml.points()[1]));
  o.require(std::abs(ls.points()[0] - 1.26) <= 0.05 && std::abs(ls.points()[1] - 21.54) <= 0.05,
            fmt::format("LSE ({:.4f}, {:.4f})", ls.points()[0], ls.points()[1]));
  if (o.pass) {
    o.detail = fmt::format("MLE (0, {:.4f}, 35); LSE ({:.4f}, {:.4f}, 35)", ml.points()[1], ls.points()[0],
                           ls.points()[1]);
  }
  return o;
}

Outcome tables23() {
  Outcome o;
  int cells = 0;
  std::string averages;
  for (int id : {2, 3}) {
    const Table t = reproduce_table(id);
    for (const auto& c : t.cells) {
      const bool avg = c.row == "Average";
      const double tol = avg ? 0.1 : 0.2;
      if (!avg) ++cells;
      o.require(std::abs(c.computed - c.expected) <= tol,
                fmt::format("table {} {} {} = {:.4f}, expected {:.2f}", id, c.row, c.column, c.computed, c.expected));
      if (avg) averages += fmt::format("{}{:.2f}", averages.empty() || averages.back() == ' ' ? "" : "/", c.computed);
    }
    averages += " ";
  }
  o.require(cells == 24, fmt::format("{} cells", cells));
  if (o.pass) o.detail = fmt::format("24 cells within 0.2pp; averages {}", averages);
  return o;
}

Outcome table4() {
  Outcome o;
  const Table t = reproduce_table(4);
  int n = 0;
  for (const auto& c : t.cells) {
    ++n;
    o.require(std::abs(c.computed - c.expected) <= 0.1,
              fmt::format("{} {} = {:.4f}, expected {:.2f}", c.row, c.column, c.computed, c.expected));
  }
  o.require(n == 20, fmt::format("{} cells", n));
  if (o.pass) o.detail = fmt::format("20 cells within 0.1pp; {}", worst_cell(t));
  return o;
}

// Every solver design behind the reference tables.
Outcome equivalence_suite() {
  Outcome o;
  struct Job {
    std::string name;
    ModelKind model;
    DiscretePrior prior;
    EstimationMethod method;
    double rho_sq;
    double upper;
  };
  std::vector<Job> jobs;
  for (int nu : {5, 11}) {
    std::vector<double> ratios = table_ratios();
    ratios.push_back(0.0);
    for (double r : ratios) {
      for (auto m : {MLE, LSE}) {
        jobs.push_back({fmt::format("MM nu={} rho2={} {}", nu, r, method_name(m)), ModelKind::MichaelisMenten,
                        michaelis_menten_table_prior(nu), m, r, 80});
      }
    }
  }
  std::vector<std::pair<std::string, DiscretePrior>> exp_priors = {
      {"bayes", exponential_table_prior()}, {"local", DiscretePrior::point(exponential_nominal_theta())}};
  for (double t1 : {33.0, 100.0}) {
    for (double t2 : {0.01, 0.3}) {
      exp_priors.emplace_back(fmt::format("corner ({}, {})", t1, t2), point_prior({1210, t1, t2}));
    }
  }
  for (const auto& [name, prior] : exp_priors) {
    for (auto m : {MLE, LSE}) jobs.push_back({"Exp " + name + " " + std::string(method_name(m)), ModelKind::Exponential, prior, m, 1.0, 35});
  }
  for (double r : table_ratios()) {
    if (r == 1.0) continue;
    for (auto m : {MLE, LSE}) {
      jobs.push_back({fmt::format("Exp bayes rho2={} {}", r, method_name(m)), ModelKind::Exponential,
                      exponential_table_prior(), m, r, 35});
    }
  }

  double worst_sup = -1e300, worst_gap = 0;
  for (const auto& j : jobs) {
    const ErrorSpec err = ErrorSpec::from_ratio(j.rho_sq);
    const SolveResult s = solve_saturated(j.model, j.prior, {0, j.upper}, j.method, err);
    const auto rep = verify(s.design, j.model, j.prior, j.method, err, {0, j.upper}, 2001, 1e-6);
    const double excess = rep.sup_sensitivity - rep.bound;
    worst_sup = std::max(worst_sup, excess);
    o.require(excess <= 1e-6, fmt::format("{}: sup exceeds bound by {:.3g} at x={:.4f}", j.name, excess, rep.argmax_x));
    for (double g : rep.support_gaps) {
      worst_gap = std::max(worst_gap, g);
      o.require(g <= 1e-6, fmt::format("{}: support gap {:.3g}", j.name, g));
    }
  }
  if (o.pass) {
    o.detail = fmt::format("{} designs; max(sup - (p+1)) = {:.2e}; max support gap = {:.2e}", jobs.size(), worst_sup,
                           worst_gap);
  }
  return o;
}

Outcome identities() {
  Outcome o;
  std::mt19937_64 rng(8);
  double worst = 0;
  for (auto m : all_models()) {
    for (auto method : {MLE, LSE}) {
      for (int i = 0; i < 200; ++i) {
        const auto n = static_cast<std::size_t>(param_count(m) + i % 3);
        const Design d(random_points(n, 0, upper_for(m), rng), random_weights(n, rng));
        DiscretePrior prior;
        const int atoms = 1 + i % 4;
        for (int a = 0; a < atoms; ++a) prior.atoms.push_back({random_theta(m, rng), 1.0 / atoms});
        const ErrorSpec err{std::uniform_real_distribution<double>(0.5, 2)(rng),
                            std::uniform_real_distribution<double>(0, 4)(rng)};
        const SensitivityFunction f(d, m, prior, method, err);
        double s = 0;
        for (std::size_t k = 0; k < d.size(); ++k) s += d.weights()[k] * f(d.points()[k]);
        const double gap = std::abs(s - param_count(m));
        worst = std::max(worst, gap);
        o.require(gap <= 1e-9, fmt::format("{} {} design {}: {:.3g}", model_name(m), method_name(method), i, gap));
      }
    }
  }
  if (o.pass) o.detail = fmt::format("1200 designs; max |identity - (p+1)| = {:.2e}", worst);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(9);
  double worst = 0;
  for (auto m : all_models()) {
    for (auto method : {MLE, LSE}) {
      for (int i = 0; i < 500; ++i) {
        const auto pts = random_points(static_cast<std::size_t>(param_count(m)), 1e-3, upper_for(m), rng);
        DiscretePrior prior;
        const int atoms = 1 + i % 3;
        for (int a = 0; a < atoms; ++a) prior.atoms.push_back({random_theta(m, rng), 1.0 / atoms});
        const ErrorSpec err{std::uniform_real_distribution<double>(0.5, 2)(rng),
                            std::uniform_real_distribution<double>(0, 4)(rng)};
        const Design d = Design::uniform(pts);
        const double g = phi(d, m, prior, method, err).value;
        const double c = phi_closed_form(d, m, prior, method, err).value;
        const double rel = std::abs(g - c) / std::max(1.0, std::abs(g));
        worst = std::max(worst, rel);
        o.require(rel <= 1e-9, fmt::format("{} {}: {:.3g}", model_name(m), method_name(method), rel));
      }
    }
  }
  // roots against a 10^6-step bisection
  const auto mm = michaelis_menten_table_prior(11);
  const auto ex = exponential_table_prior();
  const auto loc = DiscretePrior::point(exponential_nominal_theta());
  struct RootCase {
    std::string name;
    std::function<double(double)> f;
    double upper;
    double solver;
  };
  std::vector<RootCase> cases;
  for (double r : table_ratios()) {
    cases.push_back({fmt::format("mm-ml {}", r), [&, r](double x) { return root_fn_mm_ml(x, mm, 80, r); }, 80,
                     solve_mm_emax_ml(mm, 80, r, ModelKind::MichaelisMenten).points()[0]});
    cases.push_back({fmt::format("mm-ls {}", r), [&, r](double x) { return root_fn_mm_ls(x, mm, 80, r); }, 80,
                     solve_mm_emax_ls(mm, 80, r, ModelKind::MichaelisMenten).points()[0]});
  }
  cases.push_back({"exp-ml bayes", [&](double x) { return root_fn_exp_ml(x, ex, 35, 1); }, 35,
                   solve_exp_ml(ex, 35, 1).points()[1]});
  cases.push_back({"exp-ml local", [&](double x) { return root_fn_exp_ml(x, loc, 35, 1); }, 35,
                   solve_exp_ml(loc, 35, 1).points()[1]});
  double worst_root = 0;
  for (const auto& c : cases) {
    const auto roots = oracle::bisection_roots(c.f, 0, c.upper);
    o.require(roots.size() == 1, fmt::format("{}: oracle found {} roots", c.name, roots.size()));
    if (roots.size() != 1) continue;
    worst_root = std::max(worst_root, std::abs(roots[0] - c.solver));
    o.require(std::abs(roots[0] - c.solver) <= 1e-8, fmt::format("{}: {:.3g}", c.name, roots[0] - c.solver));
  }
  if (o.pass) {
    o.detail = fmt::format("3000 closed-form checks, max rel diff {:.2e}; {} roots, max diff {:.2e}", worst,
                           cases.size(), worst_root);
  }
  return o;
}

Outcome derivatives() {
  Outcome o;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  for (int s = 0; s < 1000; ++s) {
    const ModelKind m = all_models()[static_cast<std::size_t>(s % 3)];
    const Vec t = random_theta(m, rng);
    const double x = 0.01 + u(rng) * (upper_for(m) - 0.02);
    const Vec g = grad_theta(m, x, t);
    auto check = [&](double analytic, double fd, double floor, const char* what) {
      const double rel = std::abs(analytic - fd) / std::max(std::abs(fd), floor);
      worst = std::max(worst, rel);
      o.require(rel <= 1e-5, fmt::format("{} {} at x={:.4f}: rel {:.3g}", model_name(m), what, x, rel));
    };
    for (Eigen::Index j = 0; j < t.size(); ++j) {
      auto f = [&](double v) {
        Vec w = t;
        w(j) = v;
        return eval(m, x, w);
      };
      const double fd = oracle::richardson_difference(f, t(j), 1e-3 * std::max(std::abs(t(j)), 1e-3));
      check(g(j), fd, 1e-8 * std::max(1.0, std::abs(eval(m, x, t))), "d/dtheta");
    }
    const double fd = oracle::richardson_difference([&](double v) { return eval(m, v, t); }, x, 1e-3 * x);
    check(dm_dx(m, x, t), fd, 1e-8, "d/dx");
  }
  if (o.pass) o.detail = fmt::format("1000 samples; max relative error {:.2e}", worst);
  return o;
}

}  // namespace

// With an argument N, runs criterion N alone.
int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"table 1 support points and efficiencies", table1},
      {"no-covariate-error designs", no_error_designs},
      {"Bayesian exponential designs", bayes_exponential},
      {"local exponential designs", local_exponential},
      {"tables 2 and 3", tables23},
      {"table 4", table4},
      {"equivalence bound for solver designs", equivalence_suite},
      {"sensitivity identities", identities},
      {"closed forms and roots vs oracles", oracle_equivalence},
      {"analytic derivatives vs finite differences", derivatives},
  };
  std::size_t first = 0, last = criteria.size();
  if (argc > 1) {
    const long n = std::strtol(argv[1], nullptr, 10);
    if (n < 1 || n > static_cast<long>(criteria.size())) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
      return 2;
    }
    first = static_cast<std::size_t>(n - 1);
    last = first + 1;
  }
  int failures = 0;
  for (std::size_t i = first; i < last; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = fmt::format("exception: {}", e.what());
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
