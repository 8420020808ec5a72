#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specdens/chebyshev.hpp"
#include "specdens/sampler.hpp"
#include "specdens/spectral.hpp"
#include "specdens/target.hpp"
#include "specdens/transform.hpp"
#include "specdens/truncation.hpp"

namespace specdens {

enum class Method { Fejer, QubitizedFejer, GIT };

const char* method_name(Method m);

inline constexpr std::uint64_t kDefaultShotCap = std::uint64_t{1} << 50;

struct Budget {
  Method method = Method::Fejer;
  std::uint64_t kernel_order = 0;  // N, M or L
  std::optional<double> width;     // GIT Lambda
  std::uint64_t total_samples = 0;
  std::optional<std::uint64_t> per_order_shots;
  std::optional<double> evolution_tolerance;  // delta_t

  void validate() const;
};

struct FejerSamplePlan {
  std::uint64_t samples = 0;
  std::optional<double> evolution_tolerance;
};

// Hoeffding count ceil(ln(2/eta) / (2 beta^2)). The faulty variant uses
// ceil(2 ln(2/eta) / beta^2) and delta_t = beta / (2 log2 N).
FejerSamplePlan plan_fejer_samples(double beta, double eta, bool faulty = false, std::uint64_t order = 0);

struct GitSamplePlan {
  std::uint64_t per_order_shots = 0;
  std::uint64_t total = 0;       // L * per_order_shots
  double coefficient_aware = 0;  // 2 L ln(2/eta) (L max|c| / beta)^2 before rounding
  double loose_bound = 0;        // 2 L^3 (1 + 2.2/beta)^2 ln(2/eta)
  double max_coefficient = 0;
};

GitSamplePlan plan_git_samples(std::size_t order, std::span<const ChebExpansion> table, double beta, double eta,
                               std::uint64_t cap = kDefaultShotCap);
GitSamplePlan plan_git_samples(std::size_t order, double max_coefficient, double beta, double eta,
                               std::uint64_t cap = kDefaultShotCap);
double git_loose_sample_bound(std::size_t order, double beta, double eta);

struct EstimationResult {
  TransformGrid transform;
  Budget budget;
  std::uint64_t seed = 0;
  std::chrono::nanoseconds elapsed{0};
  std::vector<std::uint64_t> counts;           // Algorithm 1 histogram
  std::vector<double> moments;                  // Algorithm 2 sampled moments
  std::optional<TruncationBudget> truncation;   // Algorithm 2
};

// Algorithm 1 from the analytic outcome distribution. The qubitized method
// expects a spectrum inside [0, 1]; its transform grid holds the recovered
// frequencies map.invert(cos(pi sigma_q)).
EstimationResult run_algorithm1(const SpectralModel& model, const Budget& budget, std::uint64_t seed,
                                const AffineMap& map = {});

// Algorithm 1 sampling from a faulty statevector simulation.
EstimationResult run_algorithm1(const HermitianOperator& op, const ProbeState& psi, const Budget& budget,
                                const FaultModel& fault, std::uint64_t seed);

struct Algorithm2Options {
  RescaleMode mode = RescaleMode::Full;
  bool exact_moments = false;  // skip shot noise
  std::uint64_t shot_cap = kDefaultShotCap;
  double shot_scale = 1.0;  // multiplies the planned per-order shots
};

// Algorithm 2: Gaussian integral transform from Hadamard-test moments.
EstimationResult run_algorithm2(const HermitianOperator& op, const ProbeState& psi, const AccuracyTarget& target,
                                std::span<const double> nu, std::uint64_t seed, const Algorithm2Options& options = {});
// Same pipeline with exact moments taken from a spectral decomposition.
EstimationResult run_algorithm2(const SpectralModel& model, const AccuracyTarget& target, std::span<const double> nu,
                                std::uint64_t seed, const Algorithm2Options& options = {});

struct ComplexityRow {
  std::string method;
  std::string variant;  // "single" or "grid"
  double delta = 0.0;
  double epsilon = 0.0;
  double order = 0.0;
  double samples = 0.0;
  bool analytic_only = false;
};

// Cost comparison for each (Delta, epsilon) with Sigma = beta = epsilon.
std::vector<ComplexityRow> complexity_table(std::span<const std::pair<double, double>> points, double eta);

}  // namespace specdens
