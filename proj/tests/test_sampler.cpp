#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "specdens/error.hpp"
#include "specdens/kernels.hpp"
#include "specdens/sampler.hpp"
#include "specdens/chebyshev.hpp"

using namespace specdens;

namespace {

SpectralModel random_spectral(std::size_t dim, std::uint64_t seed) {
  const auto inst = random_model(dim, seed);
  return diagonalize(inst.op, inst.psi);
}

}  // namespace

TEST(QpeDistribution, GridPointIsCertain) {
  const auto d = qpe_distribution(SpectralModel::point(-0.5), 8);
  ASSERT_EQ(d.size(), 8u);
  EXPECT_NEAR(d.probs[2], 1.0, 1e-15);
  for (std::size_t q = 0; q < 8; ++q)
    if (q != 2) EXPECT_NEAR(d.probs[q], 0.0, 1e-15);
}

TEST(QpeDistribution, Normalized) {
  for (std::uint64_t s = 0; s < 5; ++s) EXPECT_NO_THROW(qpe_distribution(random_spectral(12, s), 64).validate());
}

TEST(StatevectorQpe, MatchesAnalytic) {
  for (std::size_t dim : {1u, 3u, 8u})
    for (unsigned a : {2u, 4u, 6u}) {
      const auto inst = random_model(dim, 17 + dim + a);
      const auto sv = statevector_qpe(inst.op, inst.psi, a);
      const auto an = qpe_distribution(diagonalize(inst.op, inst.psi), std::uint64_t{1} << a);
      ASSERT_EQ(sv.size(), an.size());
      for (std::size_t q = 0; q < sv.size(); ++q) {
        EXPECT_NEAR(sv.probs[q], an.probs[q], 1e-10);
        EXPECT_DOUBLE_EQ(sv.grid[q], an.grid[q]);
      }
    }
}

TEST(StatevectorQpe, ZeroFaultIsIdeal) {
  const auto inst = random_model(4, 3);
  const auto ideal = statevector_qpe(inst.op, inst.psi, 5);
  const auto zero = statevector_qpe(inst.op, inst.psi, 5, FaultModel{0.0, 9});
  for (std::size_t q = 0; q < ideal.size(); ++q) EXPECT_NEAR(ideal.probs[q], zero.probs[q], 1e-12);
}

TEST(StatevectorQpe, FaultDeviationBounded) {
  for (unsigned a : {4u, 5u, 6u})
    for (double dt : {1e-3, 1e-2}) {
      const auto inst = random_model(6, a * 100);
      const auto ideal = statevector_qpe(inst.op, inst.psi, a);
      for (std::uint64_t s = 0; s < 4; ++s) {
        const auto faulty = statevector_qpe(inst.op, inst.psi, a, FaultModel{dt, s});
        faulty.validate(1e-10);
        for (std::size_t q = 0; q < ideal.size(); ++q)
          EXPECT_LE(std::abs(faulty.probs[q] - ideal.probs[q]), a * dt);
      }
    }
}

TEST(StatevectorQpe, Guards) {
  const auto inst = random_model(8, 1);
  EXPECT_THROW(statevector_qpe(inst.op, inst.psi, 10, std::nullopt, 1024), ResourceError);
  EXPECT_THROW(statevector_qpe(inst.op, inst.psi, 0), ValidationError);
  const double d[] = {2.0};
  EXPECT_THROW(statevector_qpe(HermitianOperator::diagonal(d), ProbeState::basis(1, 0), 3), ValidationError);
}

TEST(QubitizedQpe, MirrorPeaks) {
  // omega = cos(pi / 4) puts theta / pi = 1/4 on the N = 8 grid.
  const auto d = qubitized_qpe_distribution(SpectralModel::point(std::cos(std::numbers::pi / 4)), 8);
  d.validate();
  EXPECT_NEAR(d.probs[5], 0.5, 1e-14);  // sigma = 1/4
  EXPECT_NEAR(d.probs[3], 0.5, 1e-14);  // sigma = -1/4
  EXPECT_THROW(qubitized_qpe_distribution(SpectralModel::point(-0.5), 8), ValidationError);
}

TEST(QubitizedQpe, RecoveredFrequencyWithinResolution) {
  const AccuracyTarget t{0.25, 0.1, 0.1, 0.05};
  const std::uint64_t m = qubitized_fejer_plan(t);
  for (double w = 0.0; w <= 1.0; w += 0.01) {
    const auto d = qubitized_qpe_distribution(SpectralModel::point(w), m);
    double inside = 0.0;
    for (std::size_t q = 0; q < d.size(); ++q)
      if (std::abs(std::cos(std::numbers::pi * d.grid[q]) - w) <= 0.5 * t.delta) inside += d.probs[q];
    EXPECT_GE(inside, 1.0 - t.sigma) << w;
  }
}

TEST(Qubiterate, WalkMomentsMatchRecurrence) {
  for (std::size_t dim : {1u, 5u, 16u}) {
    const auto inst = random_model(dim, 100 + dim);
    const auto q = Qubiterate::build(inst.op);
    EXPECT_LT(q.unitarity_error(), 1e-12);
    const auto walk = q.walk_moments(inst.psi, 64);
    const auto rec = cheb_moments(inst.op, inst.psi, 64);
    EXPECT_NEAR(walk[0], 1.0, 1e-15);
    for (std::size_t k = 0; k <= 64; ++k) EXPECT_NEAR(walk[k], rec[k], 1e-10) << dim << " " << k;
  }
}

TEST(Qubiterate, EigenvectorRotates) {
  const double d[] = {0.6, -0.1};
  const auto q = Qubiterate::build(HermitianOperator::diagonal(d));
  const auto t = q.walk_moments(ProbeState::basis(2, 1), 20);
  for (std::size_t k = 0; k <= 20; ++k) EXPECT_NEAR(t[k], std::cos(k * std::acos(-0.1)), 1e-13);
}

TEST(HadamardTest, Deterministic) {
  EXPECT_EQ(hadamard_test_sample(1.0, 7, 3), 1.0);
  EXPECT_EQ(hadamard_test_sample(-1.0, 7, 3), -1.0);
  EXPECT_EQ(hadamard_test_sample(0.3, 1000, 3), hadamard_test_sample(0.3, 1000, 3));
  EXPECT_THROW(hadamard_test_sample(0.3, 0, 3), ValidationError);
}

TEST(HadamardTest, Concentration) {
  // Standard deviation is 1e-3, so 0.005 is five sigma.
  int inside = 0;
  for (std::uint64_t s = 0; s < 200; ++s)
    if (std::abs(hadamard_test_sample(0.0, 1000000, s)) <= 0.005) ++inside;
  EXPECT_GE(inside, 198);
}

TEST(HadamardTest, Unbiased) {
  const double t = 0.37;
  double mean = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) mean += hadamard_test_sample(t, 100, child_seed(77, s));
  mean /= 1000.0;
  const double se = std::sqrt((1.0 - t * t) / 100.0 / 1000.0);
  EXPECT_LE(std::abs(mean - t), 3.0 * se);
}

TEST(SampleHistogram, CountsAndConcentration) {
  const auto d = qpe_distribution(SpectralModel::point(0.0), 16);
  const auto c = sample_histogram(d, 500, 1);
  EXPECT_EQ(c[8], 500u);
  const auto r = qpe_distribution(random_spectral(10, 2), 32);
  const std::uint64_t shots = 2000000;
  const auto h = sample_histogram(r, shots, 4);
  std::uint64_t total = 0;
  for (std::size_t q = 0; q < h.size(); ++q) {
    total += h[q];
    const double p = r.probs[q];
    EXPECT_NEAR(static_cast<double>(h[q]) / shots, p, 6.0 * std::sqrt(p * (1 - p) / shots) + 1e-12);
  }
  EXPECT_EQ(total, shots);
}
