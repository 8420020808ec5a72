#include "specdens/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "specdens/error.hpp"

namespace specdens {

using std::numbers::pi;

void AccuracyTarget::validate() const {
  auto inside = [](double v) { return v > 0.0 && v < 1.0; };
  if (!inside(sigma)) throw ValidationError("Sigma must lie in (0, 1)");
  if (!inside(delta)) throw ValidationError("Delta must lie in (0, 1)");
  if (!inside(beta)) throw ValidationError("beta must lie in (0, 1)");
  if (!inside(eta)) throw ValidationError("eta must lie in (0, 1)");
}

namespace {

// sin^2(pi u) with exact reduction of u to [-1/2, 1/2].
double sin2pi(double u) {
  const double s = std::sin(pi * (u - std::nearbyint(u)));
  return s * s;
}

}  // namespace

double fejer_eval(double sigma_q, double omega, std::uint64_t n) {
  if (n == 0) throw ValidationError("Fejér order must be positive");
  const double d = sigma_q - omega;
  const double r = d - 2.0 * std::floor(0.5 * (d + 1.0));  // in [-1, 1)
  const double nd = static_cast<double>(n);
  const double x = 0.5 * pi * r;
  if (std::abs(nd * x) < 1e-5) return 1.0 - (nd * nd - 1.0) * x * x / 3.0;
  return sin2pi(0.5 * nd * r) / (nd * nd * sin2pi(0.5 * r));
}

std::vector<double> fejer_grid(std::uint64_t n) {
  std::vector<double> grid(n);
  for (std::uint64_t k = 0; k < n; ++k) grid[k] = 2.0 * static_cast<double>(k) / static_cast<double>(n) - 1.0;
  return grid;
}

std::uint64_t next_power_of_two(double raw, std::uint64_t cap) {
  if (!std::isfinite(raw)) throw ResourceError("planner produced a non-finite order");
  // Relative slack absorbs rounding in raw, e.g. 1/0.1 * 6 = 60.000000000000007.
  const double want = raw * (1.0 - 1e-12);
  std::uint64_t p = 2;
  while (static_cast<double>(p) < want) {
    if (p > cap / 2) throw ResourceError("planned order exceeds cap " + std::to_string(cap));
    p <<= 1;
  }
  if (p > cap) throw ResourceError("planned order exceeds cap " + std::to_string(cap));
  return p;
}

std::uint64_t fejer_plan(const AccuracyTarget& target, std::uint64_t cap) {
  target.validate();
  return next_power_of_two((1.0 / target.delta) * (1.0 / target.sigma + 2.0), cap);
}

double qubitized_fejer_eval(double sigma_q, double omega, std::uint64_t n) {
  if (!(std::abs(omega) <= 1.0 + 1e-12)) throw ValidationError("qubitized Fejér needs |omega| <= 1");
  const double theta = std::acos(std::clamp(omega, -1.0, 1.0)) / pi;
  return 0.5 * (fejer_eval(sigma_q, theta, n) + fejer_eval(sigma_q, -theta, n));
}

double qubitized_resolution(double delta) {
  if (!(delta > 0.0)) throw ValidationError("Delta must be positive");
  return std::sqrt(1.0 + delta) - 1.0;
}

std::uint64_t qubitized_fejer_plan(const AccuracyTarget& target, std::uint64_t cap) {
  target.validate();
  const double dtheta = qubitized_resolution(target.delta);
  return next_power_of_two((2.0 / dtheta) * (1.0 / target.sigma + 2.0), cap);
}

double gaussian_eval(double sigma, double omega, double width) {
  if (!(width > 0.0)) throw ValidationError("Gaussian width must be positive");
  const double z = (sigma - omega) / width;
  return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * pi) * width);
}

double git_resolution(double delta, double sigma) {
  if (!(delta > 0.0)) throw ValidationError("Delta must be positive");
  if (!(sigma > 0.0 && sigma < 1.0)) throw ValidationError("Sigma must lie in (0, 1)");
  const double width = delta / std::sqrt(2.0 * std::log(1.0 / sigma));
  if (std::erf(delta / (std::sqrt(2.0) * width)) < 1.0 - sigma - 1e-15)
    throw NumericError("Gaussian width fails the erf accuracy check");
  return width;
}

double git_resolution(const AccuracyTarget& target) {
  target.validate();
  return git_resolution(target.delta, target.sigma);
}

KernelFamily family(const KernelSpec& kernel) {
  return static_cast<KernelFamily>(kernel.index());
}

std::string_view family_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::Fejer: return "fejer";
    case KernelFamily::QubitizedFejer: return "qfejer";
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::Jackson: return "jackson";
  }
  return "unknown";
}

void validate(const KernelSpec& kernel) {
  auto check_order = [](std::uint64_t n) {
    if (n < 2 || !std::has_single_bit(n)) throw ValidationError("Fejér order must be a power of two >= 2");
  };
  if (const auto* f = std::get_if<FejerKernel>(&kernel)) check_order(f->order);
  if (const auto* q = std::get_if<QubitizedFejerKernel>(&kernel)) check_order(q->order);
  if (const auto* g = std::get_if<GaussianKernel>(&kernel); g && !(g->width > 0.0))
    throw ValidationError("Gaussian width must be positive");
  if (const auto* j = std::get_if<JacksonKernel>(&kernel)) {
    if (!(j->delta() > 0.0 && j->delta() < 1.0)) throw ValidationError("Jackson delta must lie in (0, 1)");
    if (j->k() < 1) throw ValidationError("Jackson amplifier degree must be >= 1");
  }
}

double kernel_eval(const KernelSpec& kernel, double sigma, double omega) {
  return std::visit([&](const auto& k) { return k(sigma, omega); }, kernel);
}

bool is_discrete(const KernelSpec& kernel) {
  return std::holds_alternative<FejerKernel>(kernel) || std::holds_alternative<QubitizedFejerKernel>(kernel);
}

double kernel_width(const KernelSpec& kernel) {
  switch (family(kernel)) {
    case KernelFamily::Fejer: return 2.0 / static_cast<double>(std::get<FejerKernel>(kernel).order);
    case KernelFamily::QubitizedFejer:
      return 2.0 / static_cast<double>(std::get<QubitizedFejerKernel>(kernel).order);
    case KernelFamily::Gaussian: return std::get<GaussianKernel>(kernel).width;
    case KernelFamily::Jackson: return std::get<JacksonKernel>(kernel).delta();
  }
  return 0.0;
}

}  // namespace specdens
