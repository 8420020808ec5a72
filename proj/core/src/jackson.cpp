#include "specdens/jackson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quadrature.hpp"
#include "specdens/error.hpp"

namespace specdens {

using std::numbers::pi;

namespace {

// Ceiling that ignores relative rounding noise, so 24 / 0.05 gives 480.
double ceil_tolerant(double x) { return std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))); }

// Integral of cos(m t) over [a, b].
double cos_integral(int m, double a, double b) {
  if (m == 0) return b - a;
  return (std::sin(m * b) - std::sin(m * a)) / m;
}

double clenshaw(std::span<const double> c, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t n = c.size(); n-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + c[n];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

}  // namespace

double jackson_g(double x, double delta) {
  if (!(delta > 0.0)) throw ValidationError("delta must be positive");
  const double ax = std::abs(x);
  return ax < delta ? 1.0 - 2.0 * ax / delta : -1.0;
}

JacksonApproximant::JacksonApproximant(std::uint64_t degree, double delta) : delta_(delta) {
  if (degree < 1) throw ValidationError("Jackson degree must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("Jackson delta must lie in (0, 1)");
  const auto n_max = static_cast<int>(degree);
  const double t_delta = std::acos(delta);
  const double half = 0.5 * pi;
  const double np2 = static_cast<double>(degree + 2);
  const double cot = 1.0 / std::tan(pi / np2);
  coeffs_.assign(degree + 1, 0.0);
  // g is even, so only even orders survive. The tent integrals are exact.
  for (int n = 0; n <= n_max; n += 2) {
    const double tent = cos_integral(n, t_delta, half) -
                        (1.0 / delta) * (cos_integral(n - 1, t_delta, half) + cos_integral(n + 1, t_delta, half));
    double c = (4.0 / pi) * (-cos_integral(n, 0.0, t_delta) + tent);
    if (n == 0) c *= 0.5;
    const double damping = ((np2 - n) * std::cos(pi * n / np2) + std::sin(pi * n / np2) * cot) / np2;
    coeffs_[static_cast<std::size_t>(n)] = damping * c;
  }
}

double JacksonApproximant::operator()(double x) const { return clenshaw(coeffs_, x); }

double jackson_approx(double x, std::uint64_t degree, double delta) {
  return JacksonApproximant(degree, delta)(x);
}

SmoothStepAmplifier::SmoothStepAmplifier(std::uint64_t k) : m_(k >= 1 ? (k - 1) / 2 : 0), norm_(0.0) {
  if (k < 1) throw ValidationError("amplifier degree must be >= 1");
  norm_ = integral(1.0);
}

double SmoothStepAmplifier::integral(double y) const {
  // (2m + 1) I_m = y (1 - y^2)^m + 2m I_{m-1}, I_0 = y.
  const double u = 1.0 - y * y;
  double value = y;
  double power = 1.0;
  for (std::uint64_t j = 1; j <= m_; ++j) {
    power *= u;
    const double jd = static_cast<double>(j);
    value = (y * power + 2.0 * jd * value) / (2.0 * jd + 1.0);
  }
  return value;
}

double SmoothStepAmplifier::operator()(double y) const { return 0.5 * (1.0 + integral(y) / norm_); }

AmplifierFactory default_amplifier() {
  return [](std::uint64_t k) { return std::make_shared<const SmoothStepAmplifier>(k); };
}

JacksonPlan jackson_plan(const AccuracyTarget& target) {
  target.validate();
  const double s = target.sigma;
  const double d = target.delta;
  JacksonPlan plan;
  plan.delta = 0.5 * d;
  plan.N = static_cast<std::uint64_t>(ceil_tolerant(24.0 / plan.delta));
  plan.tau = s / (1.0 - s) * d / (2.0 - d);
  plan.k = static_cast<std::uint64_t>(std::max(1.0, ceil_tolerant(6.0 * std::log(1.0 / plan.tau))));
  plan.d_min = (288.0 / d) * std::log((1.0 - s) / s * (2.0 - d) / d);
  plan.consistent = static_cast<double>(plan.total_degree()) >= plan.d_min;
  return plan;
}

JacksonKernel::JacksonKernel(std::uint64_t k, std::uint64_t N, double delta, const AmplifierFactory& amplifier)
    : k_(k),
      approximant_(std::make_shared<const JacksonApproximant>(N, delta)),
      amplifier_(amplifier ? amplifier(k) : nullptr) {
  if (k < 1) throw ValidationError("Jackson amplifier degree must be >= 1");
  if (!amplifier_) throw ValidationError("no amplifying polynomial configured");
  if (amplifier_->degree() > k) throw ValidationError("amplifying polynomial exceeds degree k");
  const int pieces = std::max(16, static_cast<int>(std::ceil(2.0 / delta)));
  const double mass = detail::integrate([this](double x) { return window(x); }, -1.0, 1.0, 1e-12, pieces);
  if (!(mass > 0.0)) throw NumericError("Jackson window has no mass");
  normalization_ = 1.0 / (2.0 * mass);
}

JacksonKernel JacksonKernel::from_plan(const JacksonPlan& plan, const AmplifierFactory& amplifier) {
  return JacksonKernel(plan.k, plan.N, plan.delta, amplifier);
}

double JacksonKernel::window(double x) const { return (*amplifier_)(0.8 * (*approximant_)(x)); }

double JacksonKernel::operator()(double sigma, double omega) const {
  const double x = 0.5 * (sigma - omega);
  if (std::abs(x) > 1.0) return 0.0;
  return normalization_ * window(x);
}

double JacksonKernel::tau() const { return std::exp(-static_cast<double>(k_) / 6.0); }

NormalizationBounds JacksonKernel::bounds() const {
  const double t = tau();
  const double d = delta();
  NormalizationBounds b;
  b.lower = 1.0 / (2.0 * d + t * (2.0 - 2.0 * d));
  b.upper_available = t < 5.0 / 8.0;
  b.upper = b.upper_available ? 4.0 / ((5.0 - 8.0 * t) * d) : 0.0;
  return b;
}

}  // namespace specdens
