#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "specdens/estimators.hpp"
#include "specdens/target.hpp"
#include "specdens/transform.hpp"

namespace specdens {

// Sup over the shared grid of |a - b|. Throws ValidationError on mismatch.
double total_variation(const TransformGrid& a, const TransformGrid& b);

struct ObservableBound {
  double f_max = 0.0;
  double f_int = 0.0;
  double f_delta_max = 0.0;
  double bound = 0.0;  // f_delta_max + 2 f_max Sigma + beta f_int
};

// Components are computed on a uniform grid of spacing f.grid_resolution
// over [-1, 1]; the variation also samples shifts in [-Delta, Delta].
ObservableBound observable_bound(const ObservableFn& f, const AccuracyTarget& target);

// Two-sided 95% normal-approximation half-width for a proportion.
double binomial_slack(std::size_t trials, double p);

struct ObservableCheck {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double violation_rate = 0.0;
  double max_error = 0.0;
  double bound = 0.0;
  bool pass = false;  // violation rate <= eta + slack
};

// Seeded trials of the planned estimator for `method` at `target`, comparing
// the exact observable against the estimated one. GIT estimates are taken on
// a uniform nu grid of spacing Lambda / 4 covering [-1 - 8 Lambda, 1 + 8 Lambda].
ObservableCheck observable_bound_empirical_check(const SpectralModel& model, Method method, const ObservableFn& f,
                                                 const AccuracyTarget& target, std::size_t trials,
                                                 std::uint64_t seed, unsigned workers = 1);

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::vector<double> residuals;  // log-space
};

// Least squares of log M against log x.
ScalingFit scaling_fit(std::span<const std::pair<double, double>> points);

struct AccuracyReport {
  double measured_sigma = 0.0;
  double delta_v = 0.0;  // worst trial deviation
  double empirical_confidence = 0.0;
  double grid_spacing = 0.0;
  std::size_t trials = 0;
  bool sigma_pass = false;
  bool beta_pass = false;

  bool pass() const { return sigma_pass && beta_pass; }
};

}  // namespace specdens
