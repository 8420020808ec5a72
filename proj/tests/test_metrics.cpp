#include <gtest/gtest.h>

#include <cmath>

#include "specdens/error.hpp"
#include "specdens/metrics.hpp"

using namespace specdens;

TEST(TotalVariation, Basics) {
  TransformGrid a;
  a.nu = {0.0, 0.5, 1.0};
  a.values = {1.0, 2.0, 3.0};
  EXPECT_EQ(total_variation(a, a), 0.0);
  TransformGrid b = a;
  b.values[1] += 0.25;
  EXPECT_DOUBLE_EQ(total_variation(a, b), 0.25);
  b.nu[2] = 0.9;
  EXPECT_THROW(total_variation(a, b), ValidationError);
}

TEST(ObservableBound, ConstantAndLinear) {
  const AccuracyTarget t{0.1, 0.2, 0.05, 0.05};
  const auto one = observable_bound(ObservableFn{[](double) { return 1.0; }}, t);
  EXPECT_EQ(one.f_delta_max, 0.0);
  EXPECT_NEAR(one.f_int, 2.0, 1e-12);
  EXPECT_NEAR(one.bound, 2 * t.sigma + 2 * t.beta, 1e-12);
  const auto lin = observable_bound(ObservableFn{[](double w) { return w; }}, t);
  EXPECT_NEAR(lin.f_max, 1.0, 1e-12);
  EXPECT_NEAR(lin.f_int, 1.0, 1e-6);
  EXPECT_NEAR(lin.f_delta_max, t.delta, 1e-12);
  EXPECT_NEAR(lin.bound, t.delta + 2 * t.sigma + t.beta, 1e-6);
}

TEST(ObservableBound, IntegralBelowTwiceMax) {
  const AccuracyTarget t{0.1, 0.1, 0.1, 0.05};
  for (auto f : {+[](double w) { return std::sin(5 * w); }, +[](double w) { return w * w * w - 0.2; },
                 +[](double w) { return std::exp(w); }}) {
    const auto b = observable_bound(ObservableFn{f}, t);
    EXPECT_LE(b.f_int, 2 * b.f_max);
  }
}

TEST(ObservableCheck, SumRuleFejer) {
  const auto inst = random_model(16, 2);
  const auto model = diagonalize(inst.op, inst.psi);
  const AccuracyTarget t{0.25, 0.1, 0.1, 0.05};
  const auto c = observable_bound_empirical_check(model, Method::Fejer, ObservableFn{[](double) { return 1.0; }}, t,
                                                  50, 3, 2);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.violations, 0u);
  EXPECT_NEAR(c.max_error, 0.0, 1e-12);
}

TEST(ObservableCheck, ExactMomentGitWithinTruncationBound) {
  const AccuracyTarget t{0.1, 0.2, 0.1, 0.05};
  const SpectralModel model({-0.5, 0.5}, {0.5, 0.5});
  const double width = git_resolution(t);
  const auto nu = uniform_grid(-1.0 - 8 * width, 1.0 + 8 * width, 0.25 * width);
  Algorithm2Options opt;
  opt.exact_moments = true;
  const auto r = run_algorithm2(model, t, nu, 1, opt);
  const ObservableFn f{[](double w) { return w; }};
  AccuracyTarget truncation_only = t;
  truncation_only.beta = r.truncation->error_bound;
  const double bound = observable_bound(f, truncation_only).bound;
  const double q = observable_from_transform(r.transform, f).value;
  EXPECT_NEAR(observable_exact(model, f), 0.0, 1e-15);
  EXPECT_LE(std::abs(q), bound);
}

TEST(ScalingFit, ExactPowerLaw) {
  std::vector<std::pair<double, double>> pts;
  for (double x : {1.0, 2.0, 5.0, 10.0, 100.0}) pts.emplace_back(x, 7 * x * x);
  const auto fit = scaling_fit(pts);
  EXPECT_NEAR(fit.exponent, 2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, std::log(7.0), 1e-12);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_THROW(scaling_fit(std::span(pts).first(3)), ValidationError);
}

TEST(ScalingFit, PlannerSweeps) {
  std::vector<std::pair<double, double>> fejer;
  std::vector<std::pair<double, double>> git;
  for (double d = 1e-4; d <= 0.1 + 1e-12; d *= std::pow(10.0, 0.25)) {
    const AccuracyTarget t{0.1, d, 0.1, 0.05};
    fejer.emplace_back(1.0 / d, static_cast<double>(fejer_plan(t, 1ull << 40)));
    git.emplace_back(1.0 / d, static_cast<double>(truncation_order(t).order));
  }
  EXPECT_NEAR(scaling_fit(fejer).exponent, 1.0, 0.1);
  EXPECT_NEAR(scaling_fit(git).exponent, 1.0, 0.1);
}

TEST(BinomialSlack, Value) {
  EXPECT_NEAR(binomial_slack(200, 0.05), 1.96 * std::sqrt(0.05 * 0.95 / 200), 1e-15);
  EXPECT_NEAR(0.95 - binomial_slack(200, 0.05), 0.92, 0.01);
}
