#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "specdens/target.hpp"

namespace specdens {

// Tent of half-width delta: 1 at the origin, -1 for |x| >= delta.
double jackson_g(double x, double delta);

// Jackson-damped Chebyshev series of jackson_g truncated at degree N.
class JacksonApproximant {
 public:
  JacksonApproximant(std::uint64_t degree, double delta);

  double operator()(double x) const;
  std::uint64_t degree() const { return coeffs_.size() - 1; }
  double delta() const { return delta_; }
  // Damped coefficients c_n of sum_n c_n T_n(x).
  std::span<const double> coefficients() const { return coeffs_; }

 private:
  double delta_;
  std::vector<double> coeffs_;
};

double jackson_approx(double x, std::uint64_t degree, double delta);

// Odd polynomial step used to sharpen J_N. Contract for tau = exp(-k/6):
// degree <= k, |A| <= 1 on [-1, 1], A >= 1 - tau on [3/5, 1] and
// A <= tau on [-1, -3/5].
class AmplifyingPolynomial {
 public:
  virtual ~AmplifyingPolynomial() = default;
  virtual double operator()(double y) const = 0;
  virtual std::uint64_t degree() const = 0;
};

// A(y) = (1 + I_m(y) / I_m(1)) / 2 with I_m(y) the integral of (1 - t^2)^m
// from 0 to y and m = (k - 1) / 2.
class SmoothStepAmplifier final : public AmplifyingPolynomial {
 public:
  explicit SmoothStepAmplifier(std::uint64_t k);

  double operator()(double y) const override;
  std::uint64_t degree() const override { return 2 * m_ + 1; }

 private:
  double integral(double y) const;

  std::uint64_t m_;
  double norm_;
};

using AmplifierFactory = std::function<std::shared_ptr<const AmplifyingPolynomial>(std::uint64_t k)>;

AmplifierFactory default_amplifier();

struct JacksonPlan {
  double delta = 0.0;     // window half-width, Delta / 2
  std::uint64_t N = 0;    // approximant degree
  std::uint64_t k = 0;    // amplifier degree
  double tau = 0.0;       // required leakage bound
  double d_min = 0.0;     // minimum total degree
  bool consistent = false;  // k * N >= d_min

  std::uint64_t total_degree() const { return k * N; }
};

JacksonPlan jackson_plan(const AccuracyTarget& target);

struct NormalizationBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool upper_available = false;  // false when tau >= 5/8
};

class JacksonKernel {
 public:
  JacksonKernel(std::uint64_t k, std::uint64_t N, double delta,
                const AmplifierFactory& amplifier = default_amplifier());

  static JacksonKernel from_plan(const JacksonPlan& plan,
                                 const AmplifierFactory& amplifier = default_amplifier());

  // Normalization * A_k((4/5) J_N((sigma - omega) / 2)); zero for |sigma - omega| > 2.
  double operator()(double sigma, double omega) const;
  // Unnormalized window A_k((4/5) J_N(x)) on [-1, 1].
  double window(double x) const;

  std::uint64_t k() const { return k_; }
  std::uint64_t order() const { return approximant_->degree(); }
  double delta() const { return approximant_->delta(); }
  double tau() const;
  double normalization() const { return normalization_; }
  NormalizationBounds bounds() const;

 private:
  std::uint64_t k_;
  std::shared_ptr<const JacksonApproximant> approximant_;
  std::shared_ptr<const AmplifyingPolynomial> amplifier_;
  double normalization_ = 0.0;
};

}  // namespace specdens
