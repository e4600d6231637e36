#include <chrono>
#include <cmath>

#include <gtest/gtest.h>

#include "common.hpp"
#include "eivdesign/criterion.hpp"
#include "eivdesign/solvers.hpp"
#include "oracles/oracles.hpp"

using namespace eivdesign;
using namespace testing_support;

namespace {

constexpr auto MLE = EstimationMethod::MLE;
constexpr auto LSE = EstimationMethod::LSE;

double interior(const Design& d) { return d.points()[d.size() - 2]; }

}  // namespace

TEST(Solvers, MichaelisMentenMaximumLikelihood) {
  const auto p11 = michaelis_menten_table_prior(11);
  EXPECT_NEAR(interior(solve_mm_emax_ml(p11, 80, 4, ModelKind::MichaelisMenten)), 8.12, 0.01);
  EXPECT_NEAR(interior(solve_mm_emax_ml(p11, 80, 1, ModelKind::MichaelisMenten)), 5.82, 0.01);
  EXPECT_NEAR(interior(solve_mm_emax_ml(p11, 80, 0, ModelKind::MichaelisMenten)), 3.06, 0.01);
  const auto p5 = michaelis_menten_table_prior(5);
  const Design d = solve_mm_emax_ml(p5, 80, 0.25, ModelKind::MichaelisMenten);
  EXPECT_NEAR(d.points()[0], 4.30, 0.01);
  EXPECT_EQ(d.points()[1], 80.0);
  EXPECT_EQ(d.weights(), (std::vector<double>{0.5, 0.5}));
}

TEST(Solvers, MichaelisMentenLeastSquares) {
  const auto p11 = michaelis_menten_table_prior(11);
  EXPECT_NEAR(interior(solve_mm_emax_ls(p11, 80, 4, ModelKind::MichaelisMenten)), 9.21, 0.01);
  EXPECT_NEAR(interior(solve_mm_emax_ls(p11, 80, 1, ModelKind::MichaelisMenten)), 7.40, 0.01);
  EXPECT_NEAR(interior(solve_mm_emax_ls(p11, 80, 0, ModelKind::MichaelisMenten)), 5.82, 0.01);
}

TEST(Solvers, EmaxAddsZero) {
  DiscretePrior prior;
  for (const auto& a : michaelis_menten_table_prior(11).atoms) {
    prior.atoms.push_back({vec({1.0, a.theta(0), a.theta(1)}), a.weight});
  }
  const Design d = solve_mm_emax_ml(prior, 80, 4, ModelKind::Emax);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.points()[0], 0.0);
  EXPECT_NEAR(d.points()[1], 8.12, 0.01);
  EXPECT_EQ(d.points()[2], 80.0);
  EXPECT_THROW(solve_mm_emax_ml(prior, 80, 4, ModelKind::Exponential), InvalidArgument);
}

TEST(Solvers, ExponentialMaximumLikelihood) {
  const Design bayes = solve_exp_ml(exponential_table_prior(), 35, 1);
  EXPECT_EQ(bayes.points()[0], 0.0);
  EXPECT_NEAR(bayes.points()[1], 11.59, 0.01);
  EXPECT_EQ(bayes.points()[2], 35.0);
  const Design local = solve_exp_ml(DiscretePrior::point(exponential_nominal_theta()), 35, 1);
  EXPECT_NEAR(local.points()[1], 17.23, 0.01);
}

TEST(Solvers, ExponentialLeastSquaresBySwarm) {
  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult bayes = solve_exp_ls(exponential_table_prior(), 35, 1, {});
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 60.0);
  EXPECT_EQ(bayes.route, "particle-swarm");
  ASSERT_TRUE(bayes.swarm.has_value());
  EXPECT_NEAR(bayes.design.points()[0], 6.79, 0.05);
  EXPECT_NEAR(bayes.design.points()[1], 16.33, 0.05);
  EXPECT_EQ(bayes.design.points()[2], 35.0);
  const SolveResult local = solve_exp_ls(DiscretePrior::point(exponential_nominal_theta()), 35, 1, {});
  EXPECT_NEAR(local.design.points()[0], 1.26, 0.05);
  EXPECT_NEAR(local.design.points()[1], 21.54, 0.05);
}

TEST(Solvers, SwarmBeatsExhaustiveGrid) {
  for (const auto& prior : {DiscretePrior::point(exponential_nominal_theta()), exponential_table_prior()}) {
    const SolveResult r = solve_exp_ls(prior, 35, 1, {});
    const auto grid = oracle::grid_maximize_phi(ModelKind::Exponential, prior, LSE, 1.0, 2, 351, 35);
    EXPECT_GE(r.criterion.value, grid.best_value - 1e-6);
    EXPECT_NEAR(r.design.points()[0], grid.best_points[0], 0.2);
    EXPECT_NEAR(r.design.points()[1], grid.best_points[1], 0.2);
  }
}

TEST(Solvers, RootsMatchGridOracle) {
  const auto ex = exponential_table_prior();
  const auto g = oracle::grid_maximize_phi(ModelKind::Exponential, ex, MLE, 1.0, 1, 3501, 35);
  EXPECT_NEAR(g.best_points[0], 11.59, 0.01);
  EXPECT_NEAR(solve_exp_ml(ex, 35, 1).points()[1], g.best_points[0], 0.011);

  const auto mm = michaelis_menten_table_prior(11);
  const auto h = oracle::grid_maximize_phi(ModelKind::MichaelisMenten, mm, MLE, 1.0, 1, 8001, 80);
  EXPECT_NEAR(h.best_points[0], 5.82, 0.01);
  const auto s = solve_saturated(ModelKind::MichaelisMenten, mm, {0, 80}, MLE, ErrorSpec::from_ratio(1));
  EXPECT_GE(s.criterion.value, h.best_value - 1e-6);
}

TEST(Solvers, RootsMatchHighResolutionBisection) {
  struct Case {
    const char* name;
    std::function<double(double)> f;
    double xu;
    double root;
  };
  const auto mm = michaelis_menten_table_prior(11);
  const auto ex = exponential_table_prior();
  const auto local = DiscretePrior::point(exponential_nominal_theta());
  const auto pt = point_prior({16, 3.5});
  std::vector<Case> cases = {
      {"mm-ml point", [&](double x) { return root_fn_mm_ml(x, pt, 80, 1); }, 80,
       interior(solve_mm_emax_ml(pt, 80, 1, ModelKind::MichaelisMenten))},
      {"mm-ml grid", [&](double x) { return root_fn_mm_ml(x, mm, 80, 4); }, 80,
       interior(solve_mm_emax_ml(mm, 80, 4, ModelKind::MichaelisMenten))},
      {"mm-ls grid", [&](double x) { return root_fn_mm_ls(x, mm, 80, 1); }, 80,
       interior(solve_mm_emax_ls(mm, 80, 1, ModelKind::MichaelisMenten))},
      {"exp-ml grid", [&](double x) { return root_fn_exp_ml(x, ex, 35, 1); }, 35,
       solve_exp_ml(ex, 35, 1).points()[1]},
      {"exp-ml point", [&](double x) { return root_fn_exp_ml(x, local, 35, 1); }, 35,
       solve_exp_ml(local, 35, 1).points()[1]},
  };
  for (const auto& c : cases) {
    const auto roots = oracle::bisection_roots(c.f, 0.0, c.xu);
    ASSERT_EQ(roots.size(), 1u) << c.name;
    EXPECT_NEAR(c.root, roots[0], 1e-8) << c.name;
  }
}

TEST(Solvers, PointPriorNoErrorNearBayesianValue) {
  const auto pt = point_prior({16, 3.5});
  const auto roots = oracle::bisection_roots([&](double x) { return root_fn_mm_ml(x, pt, 80, 0); }, 0, 80);
  ASSERT_EQ(roots.size(), 1u);
  // local optimum without covariate error: theta2 x_u / (2 theta2 + x_u)
  EXPECT_NEAR(roots[0], 3.5 * 80 / (2 * 3.5 + 80), 1e-8);
  EXPECT_NEAR(interior(solve_mm_emax_ml(pt, 80, 0, ModelKind::MichaelisMenten)), roots[0], 1e-8);
}

TEST(Solvers, RootFunctionLimitsAndDomain) {
  const auto pt = point_prior({16, 3.5});
  EXPECT_GT(root_fn_mm_ml(1e-9, pt, 80, 1), 1e6);
  EXPECT_LT(root_fn_mm_ml(80 - 1e-9, pt, 80, 1), -1e6);
  EXPECT_THROW(root_fn_mm_ml(0, pt, 80, 1), DomainError);
  EXPECT_THROW(root_fn_mm_ls(80, pt, 80, 1), DomainError);
  EXPECT_THROW(root_fn_exp_ml(-1, DiscretePrior::point(exponential_nominal_theta()), 35, 1), DomainError);
}

TEST(Solvers, MonotoneInRatioAndLeastSquaresLarger) {
  const auto p = michaelis_menten_table_prior(11);
  double prev_ml = 0, prev_ls = 0;
  for (auto it = table_ratios().rbegin(); it != table_ratios().rend(); ++it) {
    const double ml = interior(solve_mm_emax_ml(p, 80, *it, ModelKind::MichaelisMenten));
    const double ls = interior(solve_mm_emax_ls(p, 80, *it, ModelKind::MichaelisMenten));
    EXPECT_GT(ml, prev_ml);
    EXPECT_GT(ls, prev_ls);
    EXPECT_GT(ls, ml);
    prev_ml = ml;
    prev_ls = ls;
  }
}

TEST(Solvers, SolveSaturatedDispatchAndErrors) {
  const auto mm = michaelis_menten_table_prior(5);
  const auto r = solve_saturated(ModelKind::MichaelisMenten, mm, {0, 80}, LSE, {2.0, 2.0});
  EXPECT_EQ(r.route, "root-equation");
  EXPECT_FALSE(r.swarm.has_value());
  EXPECT_EQ(r.design, solve_mm_emax_ls(mm, 80, 1.0, ModelKind::MichaelisMenten));
  // criterion reported at the caller's error variances, not the normalized ones
  EXPECT_DOUBLE_EQ(r.criterion.value, phi(r.design, ModelKind::MichaelisMenten, mm, LSE, {2.0, 2.0}).value);
  EXPECT_THROW(solve_saturated(ModelKind::MichaelisMenten, mm, {1, 80}, MLE, {}), InvalidArgument);
  EXPECT_THROW(solve_saturated(ModelKind::Exponential, mm, {0, 35}, MLE, {}), InvalidArgument);
}

TEST(Solvers, JointPriorUsesRatioAtoms) {
  auto p = michaelis_menten_table_prior(5);
  p.rho_atoms = {{2.0, 1.0}};
  const Design joint = solve_mm_emax_ml(p, 80, 0.0, ModelKind::MichaelisMenten);
  p.rho_atoms.clear();
  const Design plain = solve_mm_emax_ml(p, 80, 2.0, ModelKind::MichaelisMenten);
  EXPECT_NEAR(joint.points()[0], plain.points()[0], 1e-9);
}
