#include "specdens/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quadrature.hpp"
#include "specdens/error.hpp"
#include "specdens/transform.hpp"

namespace specdens {

double cyclic_distance(double a, double b) {
  const double d = a - b;
  return std::abs(d - 2.0 * std::nearbyint(0.5 * d));
}

namespace {

constexpr double kWindowSlack = 1e-12;

double captured_mass(const KernelSpec& kernel, double delta, double omega0) {
  switch (family(kernel)) {
    case KernelFamily::Fejer: {
      const auto n = std::get<FejerKernel>(kernel).order;
      double mass = 0.0;
      for (double s : fejer_grid(n))
        if (cyclic_distance(s, omega0) <= delta + kWindowSlack) mass += fejer_eval(s, omega0, n);
      return mass;
    }
    case KernelFamily::QubitizedFejer: {
      const auto n = std::get<QubitizedFejerKernel>(kernel).order;
      double mass = 0.0;
      for (double s : fejer_grid(n))
        if (std::abs(std::cos(std::numbers::pi * s) - omega0) <= delta + kWindowSlack)
          mass += qubitized_fejer_eval(s, omega0, n);
      return mass;
    }
    case KernelFamily::Gaussian:
    case KernelFamily::Jackson: {
      const int pieces = std::max(8, static_cast<int>(std::ceil(2.0 * delta / kernel_width(kernel))));
      return detail::integrate([&](double s) { return kernel_eval(kernel, s, omega0); }, omega0 - delta,
                               omega0 + delta, 1e-10, pieces);
    }
  }
  return 0.0;
}

}  // namespace

SigmaAccuracy sigma_accuracy(const KernelSpec& kernel, double delta, double spacing, double lo, double hi) {
  validate(kernel);
  if (!(delta > 0.0)) throw ValidationError("Delta must be positive");
  SigmaAccuracy out;
  out.spacing = spacing;
  out.omegas = uniform_grid(lo, hi, spacing);
  out.captured.resize(out.omegas.size());
  double worst = 2.0;
  for (std::size_t i = 0; i < out.omegas.size(); ++i) {
    out.captured[i] = captured_mass(kernel, delta, out.omegas[i]);
    if (out.captured[i] < worst) {
      worst = out.captured[i];
      out.worst_omega = out.omegas[i];
    }
  }
  out.measured = std::max(0.0, 1.0 - worst);
  return out;
}

}  // namespace specdens
