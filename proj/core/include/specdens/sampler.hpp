#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "specdens/spectral.hpp"

namespace specdens {

inline constexpr std::size_t kDefaultStatevectorCap = std::size_t{1} << 22;

struct OutcomeDistribution {
  std::vector<double> grid;
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  // Throws NumericError unless probabilities are nonnegative and sum to one.
  void validate(double tol = 1e-12) const;
};

struct FaultModel {
  double delta_t = 0.0;  // operator-norm bound per controlled evolution
  std::uint64_t seed = 0;
};

// Analytic Fejér outcome distribution of QPE with N outcomes.
OutcomeDistribution qpe_distribution(const SpectralModel& model, std::uint64_t n);

// Ancilla-register QPE with controlled exp(i pi 2^j (O + 1)) and an inverse
// Fourier transform. With a fault model, each controlled power is followed by
// exp(-i delta_t H_j) for a random unit-norm Hermitian H_j.
OutcomeDistribution statevector_qpe(const HermitianOperator& op, const ProbeState& psi, unsigned n_ancilla,
                                    const std::optional<FaultModel>& fault = std::nullopt,
                                    std::size_t memory_cap = kDefaultStatevectorCap);

// Symmetrized Fejér distribution over the theta / pi grid; spectrum in [0, 1].
OutcomeDistribution qubitized_qpe_distribution(const SpectralModel& model, std::uint64_t n);

// Walk operator R (U) on C^2 (x) C^d where U is the reflection dilation of O
// and R reflects about the flag state |0>. Its k-th power has <0,psi|W^k|0,psi> = T_k.
class Qubiterate {
 public:
  static Qubiterate build(const HermitianOperator& op);

  const Matrix& unitary() const { return w_; }
  std::size_t system_dim() const { return dim_; }
  Vector flagged(const ProbeState& psi) const;
  // <0,psi| W^k |0,psi> for k = 0..order.
  std::vector<double> walk_moments(const ProbeState& psi, std::size_t order) const;
  // max |W^dagger W - I|.
  double unitarity_error() const;

 private:
  Qubiterate(Matrix w, std::size_t dim) : w_(std::move(w)), dim_(dim) {}
  Matrix w_;
  std::size_t dim_;
};

// Hadamard-test estimate 2 B / shots - 1 with B ~ Binomial(shots, (1 + t) / 2).
double hadamard_test_sample(double t, std::uint64_t shots, std::uint64_t seed);

// Multinomial counts over the distribution's outcomes.
std::vector<std::uint64_t> sample_histogram(const OutcomeDistribution& dist, std::uint64_t shots,
                                            std::uint64_t seed);

}  // namespace specdens
