#include "specdens/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "specdens/error.hpp"
#include "specdens/kernels.hpp"

namespace specdens {

namespace {

double ceil_tolerant(double x) { return std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))); }

std::uint64_t to_count(double x, std::uint64_t cap, const char* what) {
  if (!std::isfinite(x) || x > static_cast<double>(cap))
    throw ResourceError(std::string(what) + " exceeds the shot cap");
  return static_cast<std::uint64_t>(std::max(1.0, x));
}

using Clock = std::chrono::steady_clock;

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::Fejer: return "fejer";
    case Method::QubitizedFejer: return "qfejer";
    case Method::GIT: return "git";
  }
  return "unknown";
}

void Budget::validate() const {
  if (total_samples < 1) throw ValidationError("budget needs at least one sample");
  if (method == Method::GIT) {
    if (!per_order_shots || *per_order_shots * kernel_order != total_samples)
      throw ValidationError("GIT budget needs N_S = L x per-order shots");
    if (!width || !(*width > 0.0)) throw ValidationError("GIT budget needs a positive width");
  } else if (kernel_order < 2 || !std::has_single_bit(kernel_order)) {
    throw ValidationError("Fejér budgets need a power-of-two order >= 2");
  }
}

FejerSamplePlan plan_fejer_samples(double beta, double eta, bool faulty, std::uint64_t order) {
  if (!(beta > 0.0 && beta < 1.0) || !(eta > 0.0 && eta < 1.0))
    throw ValidationError("beta and eta must lie in (0, 1)");
  const double log_term = std::log(2.0 / eta);
  FejerSamplePlan plan;
  if (!faulty) {
    plan.samples = static_cast<std::uint64_t>(ceil_tolerant(log_term / (2.0 * beta * beta)));
    return plan;
  }
  if (order < 2) throw ValidationError("faulty plan needs the QPE order N >= 2");
  plan.samples = static_cast<std::uint64_t>(ceil_tolerant(2.0 * log_term / (beta * beta)));
  plan.evolution_tolerance = beta / (2.0 * std::log2(static_cast<double>(order)));
  return plan;
}

double git_loose_sample_bound(std::size_t order, double beta, double eta) {
  const double l = static_cast<double>(order);
  const double f = 1.0 + 2.2 / beta;
  return 2.0 * l * l * l * f * f * std::log(2.0 / eta);
}

GitSamplePlan plan_git_samples(std::size_t order, double max_coefficient, double beta, double eta,
                               std::uint64_t cap) {
  if (!(beta > 0.0 && beta < 1.0) || !(eta > 0.0 && eta < 1.0))
    throw ValidationError("beta and eta must lie in (0, 1)");
  const double l = static_cast<double>(std::max<std::size_t>(order, 1));
  const double ratio = l * max_coefficient / beta;
  const double log_term = std::log(2.0 / eta);
  GitSamplePlan plan;
  plan.max_coefficient = max_coefficient;
  plan.coefficient_aware = 2.0 * l * log_term * ratio * ratio;
  plan.loose_bound = git_loose_sample_bound(order, beta, eta);
  plan.per_order_shots = to_count(ceil_tolerant(2.0 * log_term * ratio * ratio), cap, "per-order shots");
  const double total = static_cast<double>(plan.per_order_shots) * l;
  plan.total = to_count(total, cap, "total shots");
  return plan;
}

GitSamplePlan plan_git_samples(std::size_t order, std::span<const ChebExpansion> table, double beta, double eta,
                               std::uint64_t cap) {
  double max_c = 0.0;
  for (const auto& e : table) {
    if (e.order != order) throw ValidationError("coefficient table order does not match L");
    for (double c : e.c) max_c = std::max(max_c, std::abs(c));
  }
  return plan_git_samples(order, max_c, beta, eta, cap);
}

EstimationResult run_algorithm1(const SpectralModel& model, const Budget& budget, std::uint64_t seed,
                                const AffineMap& map) {
  const auto start = Clock::now();
  budget.validate();
  if (budget.method == Method::GIT) throw ValidationError("Algorithm 1 runs Fejér methods only");
  const bool qubitized = budget.method == Method::QubitizedFejer;
  const OutcomeDistribution dist = qubitized ? qubitized_qpe_distribution(model, budget.kernel_order)
                                             : qpe_distribution(model, budget.kernel_order);
  EstimationResult r;
  r.budget = budget;
  r.seed = seed;
  r.counts = sample_histogram(dist, budget.total_samples, child_seed(seed, 1));
  r.transform.discrete = true;
  r.transform.kernel_width = 2.0 / static_cast<double>(budget.kernel_order);
  r.transform.nu.resize(dist.size());
  r.transform.values.resize(dist.size());
  const double inv = 1.0 / static_cast<double>(budget.total_samples);
  for (std::size_t q = 0; q < dist.size(); ++q) {
    const double freq = qubitized ? std::cos(std::numbers::pi * dist.grid[q]) : dist.grid[q];
    r.transform.nu[q] = map.invert(freq);
    r.transform.values[q] = static_cast<double>(r.counts[q]) * inv;
  }
  r.elapsed = Clock::now() - start;
  return r;
}

EstimationResult run_algorithm1(const HermitianOperator& op, const ProbeState& psi, const Budget& budget,
                                const FaultModel& fault, std::uint64_t seed) {
  const auto start = Clock::now();
  budget.validate();
  if (budget.method != Method::Fejer) throw ValidationError("faulty sampling supports the Fejér method only");
  const auto n_ancilla = static_cast<unsigned>(std::countr_zero(budget.kernel_order));
  const OutcomeDistribution dist = statevector_qpe(op, psi, n_ancilla, fault);
  EstimationResult r;
  r.budget = budget;
  r.budget.evolution_tolerance = fault.delta_t;
  r.seed = seed;
  r.counts = sample_histogram(dist, budget.total_samples, child_seed(seed, 1));
  r.transform.discrete = true;
  r.transform.kernel_width = 2.0 / static_cast<double>(budget.kernel_order);
  r.transform.nu = dist.grid;
  r.transform.values.resize(dist.size());
  for (std::size_t q = 0; q < dist.size(); ++q)
    r.transform.values[q] = static_cast<double>(r.counts[q]) / static_cast<double>(budget.total_samples);
  r.elapsed = Clock::now() - start;
  return r;
}

namespace {

template <class MomentSource>
EstimationResult algorithm2(MomentSource&& exact_moments, const AccuracyTarget& target, std::span<const double> nu,
                            std::uint64_t seed, const Algorithm2Options& options) {
  const auto start = Clock::now();
  if (nu.empty()) throw ValidationError("Algorithm 2 needs at least one frequency");
  const TruncationBudget trunc = truncation_order(target);
  const std::size_t order = trunc.order;

  std::vector<ChebExpansion> table;
  table.reserve(nu.size());
  for (double v : nu) table.push_back(shifted_coeffs(trunc.width, v, order, options.mode));
  if (!(options.shot_scale > 0.0)) throw ValidationError("shot scale must be positive");
  GitSamplePlan plan = plan_git_samples(order, table, target.beta, target.eta, options.shot_cap);
  if (options.shot_scale != 1.0) {
    plan.per_order_shots = static_cast<std::uint64_t>(
        std::max(1.0, std::round(static_cast<double>(plan.per_order_shots) * options.shot_scale)));
    plan.total = plan.per_order_shots * std::max<std::size_t>(order, 1);
  }

  EstimationResult r;
  r.seed = seed;
  r.truncation = trunc;
  r.budget.method = Method::GIT;
  r.budget.kernel_order = std::max<std::size_t>(order, 1);
  r.budget.width = trunc.width;
  r.budget.per_order_shots = plan.per_order_shots;
  r.budget.total_samples = plan.total;

  r.moments = exact_moments(order);
  if (!options.exact_moments)
    for (std::size_t k = 1; k <= order; ++k)
      r.moments[k] = hadamard_test_sample(r.moments[k], plan.per_order_shots, child_seed(seed, k));

  r.transform.nu.assign(nu.begin(), nu.end());
  r.transform.values.resize(nu.size());
  r.transform.kernel_width = trunc.width;
  for (std::size_t i = 0; i < nu.size(); ++i) r.transform.values[i] = git_dot(table[i], r.moments);
  r.elapsed = Clock::now() - start;
  return r;
}

}  // namespace

EstimationResult run_algorithm2(const HermitianOperator& op, const ProbeState& psi, const AccuracyTarget& target,
                                std::span<const double> nu, std::uint64_t seed, const Algorithm2Options& options) {
  return algorithm2([&](std::size_t order) { return cheb_moments(op, psi, order); }, target, nu, seed, options);
}

EstimationResult run_algorithm2(const SpectralModel& model, const AccuracyTarget& target, std::span<const double> nu,
                                std::uint64_t seed, const Algorithm2Options& options) {
  return algorithm2([&](std::size_t order) { return cheb_moments(model, order); }, target, nu, seed, options);
}

std::vector<ComplexityRow> complexity_table(std::span<const std::pair<double, double>> points, double eta) {
  std::vector<ComplexityRow> rows;
  for (const auto& [delta, eps] : points) {
    const AccuracyTarget t{eps, delta, eps, eta};
    t.validate();
    const double le = std::log(1.0 / eps);
    const double lde = std::log(1.0 / (delta * eps));
    const double ln_eta = std::log(1.0 / eta);
    rows.push_back({"tsa", "single", delta, eps, le * le / delta,
                    std::pow(le, 6) * ln_eta / (delta * delta * delta * eps * eps), true});
    rows.push_back({"tsa", "grid", delta, eps, lde * lde / delta,
                    std::pow(lde, 6) * ln_eta / (delta * delta * delta * eps * eps), true});
    const double fejer_samples = static_cast<double>(plan_fejer_samples(eps, eta).samples);
    rows.push_back({"fejer", "single", delta, eps, static_cast<double>(fejer_plan(t)), fejer_samples, false});
    rows.push_back(
        {"qfejer", "single", delta, eps, static_cast<double>(qubitized_fejer_plan(t)), fejer_samples, false});
    const std::size_t l_single = truncation_order(t).order;
    rows.push_back({"git", "single", delta, eps, static_cast<double>(l_single),
                    git_loose_sample_bound(l_single, eps, eta), false});
    AccuracyTarget grid_target = t;
    grid_target.beta = eps * delta;
    const std::size_t l_grid = truncation_order(grid_target).order;
    rows.push_back({"git", "grid", delta, eps, static_cast<double>(l_grid),
                    git_loose_sample_bound(l_grid, grid_target.beta, eta), false});
  }
  return rows;
}

}  // namespace specdens
