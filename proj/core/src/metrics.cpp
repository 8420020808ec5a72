#include "specdens/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "specdens/error.hpp"
#include "specdens/kernels.hpp"
#include "specdens/parallel.hpp"

namespace specdens {

double total_variation(const TransformGrid& a, const TransformGrid& b) {
  if (a.nu.size() != b.nu.size() || a.values.size() != b.values.size() || a.nu.size() != a.values.size())
    throw ValidationError("transform grids differ in size");
  double sup = 0.0;
  for (std::size_t i = 0; i < a.nu.size(); ++i) {
    if (std::abs(a.nu[i] - b.nu[i]) > 1e-12) throw ValidationError("transform grids differ");
    sup = std::max(sup, std::abs(a.values[i] - b.values[i]));
  }
  return sup;
}

ObservableBound observable_bound(const ObservableFn& f, const AccuracyTarget& target) {
  target.validate();
  const double h = f.grid_resolution;
  if (!(h > 0.0)) throw ValidationError("observable grid resolution must be positive");
  const std::vector<double> grid = uniform_grid(-1.0, 1.0, h);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);

  ObservableBound b;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    b.f_max = std::max(b.f_max, std::abs(values[i]));
    if (i > 0) b.f_int += 0.5 * (grid[i] - grid[i - 1]) * (std::abs(values[i]) + std::abs(values[i - 1]));
  }
  const std::vector<double> shifts = uniform_grid(-target.delta, target.delta, h);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (double s : shifts) b.f_delta_max = std::max(b.f_delta_max, std::abs(f(grid[i] + s) - values[i]));
  b.bound = b.f_delta_max + 2.0 * b.f_max * target.sigma + target.beta * b.f_int;
  return b;
}

double binomial_slack(std::size_t trials, double p) {
  if (trials == 0) throw ValidationError("need at least one trial");
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

ObservableCheck observable_bound_empirical_check(const SpectralModel& model, Method method, const ObservableFn& f,
                                                 const AccuracyTarget& target, std::size_t trials,
                                                 std::uint64_t seed, unsigned workers) {
  target.validate();
  ObservableCheck out;
  out.trials = trials;
  out.bound = observable_bound(f, target).bound;
  const double exact = observable_exact(model, f);

  Budget budget;
  budget.method = method;
  std::vector<double> nu;
  if (method == Method::GIT) {
    const double width = git_resolution(target);
    nu = uniform_grid(-1.0 - 8.0 * width, 1.0 + 8.0 * width, 0.25 * width);
  } else {
    budget.kernel_order = method == Method::Fejer ? fejer_plan(target) : qubitized_fejer_plan(target);
    budget.total_samples = plan_fejer_samples(target.beta, target.eta).samples;
  }

  std::vector<double> errors(trials);
  parallel_for(trials, workers, [&](std::size_t i) {
    const std::uint64_t s = child_seed(seed, i);
    const EstimationResult r =
        method == Method::GIT ? run_algorithm2(model, target, nu, s) : run_algorithm1(model, budget, s);
    errors[i] = std::abs(observable_from_transform(r.transform, f).value - exact);
  });

  for (double e : errors) {
    out.max_error = std::max(out.max_error, e);
    if (e > out.bound) ++out.violations;
  }
  out.violation_rate = trials ? static_cast<double>(out.violations) / static_cast<double>(trials) : 0.0;
  out.pass = trials > 0 && out.violation_rate <= target.eta + binomial_slack(trials, target.eta);
  return out;
}

ScalingFit scaling_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 4) throw ValidationError("scaling fit needs at least four points");
  const std::size_t n = points.size();
  std::vector<double> lx(n);
  std::vector<double> ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(points[i].first > 0.0) || !(points[i].second > 0.0))
      throw ValidationError("scaling fit needs positive values");
    lx[i] = std::log(points[i].first);
    ly[i] = std::log(points[i].second);
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("scaling fit needs distinct x values");
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double sse = 0.0;
  fit.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = ly[i] - (fit.intercept + fit.exponent * lx[i]);
    sse += fit.residuals[i] * fit.residuals[i];
  }
  fit.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

}  // namespace specdens
