#include "specdens/chebyshev.hpp"

#include <cmath>
#include <numbers>

#include "specdens/error.hpp"
#include "specdens/special.hpp"
#include "specdens/truncation.hpp"

namespace specdens {

using std::numbers::pi;

double chebyshev_series(std::span<const double> c, double x) {
  if (c.empty()) return 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t n = c.size(); n-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + c[n];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

std::vector<double> gauss_cheb_coeffs(double width, std::size_t order) {
  if (!(width > 0.0)) throw ValidationError("Gaussian width must be positive");
  const double z = 1.0 / (4.0 * width * width);
  const std::vector<double> bessel = scaled_bessel_i(z, order / 2);
  std::vector<double> a(order + 1, 0.0);
  for (std::size_t m = 0; 2 * m <= order; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    a[2 * m] = (m == 0 ? 1.0 : 2.0) * sign * bessel[m];
  }
  return a;
}

double coeff_quadrature_oracle(double width, std::size_t n, std::size_t nodes) {
  if (!(width > 0.0)) throw ValidationError("Gaussian width must be positive");
  if (nodes == 0) throw ValidationError("need at least one node");
  const double inv2w2 = 1.0 / (2.0 * width * width);
  double acc = 0.0;
  for (std::size_t j = 0; j < nodes; ++j) {
    const double t = pi * (static_cast<double>(j) + 0.5) / static_cast<double>(nodes);
    const double x = std::cos(t);
    acc += std::exp(-x * x * inv2w2) * std::cos(static_cast<double>(n) * t);
  }
  return (n == 0 ? 1.0 : 2.0) * acc / static_cast<double>(nodes);
}

double ChebExpansion::operator()(double omega) const { return chebyshev_series(c, omega); }

ChebExpansion shifted_coeffs(double width, double sigma, std::size_t order, RescaleMode mode) {
  if (!(width > 0.0)) throw ValidationError("Gaussian width must be positive");
  if (!std::isfinite(sigma)) throw ValidationError("sigma must be finite");
  if (mode == RescaleMode::Half && std::abs(sigma) > 0.5 + 1e-12)
    throw ValidationError("half mode needs sigma in [-1/2, 1/2]");

  ChebExpansion e;
  e.width = width;
  e.order = order;
  e.sigma = sigma;
  e.mode = mode;
  e.a = gauss_cheb_coeffs(0.5 * width, order);

  // Values of the degree-L kernel approximant at the L + 1 Chebyshev nodes.
  // For |sigma| > 1 the shifted variable leaves [-1, 1], so the Gaussian is
  // interpolated directly; it is negligible on [-1, 1] in that case anyway.
  const std::size_t nodes = order + 1;
  const double prefactor = 1.0 / (std::sqrt(2.0 * pi) * width);
  std::vector<double> x(nodes);
  std::vector<double> f(nodes);
  for (std::size_t m = 0; m < nodes; ++m) {
    x[m] = std::cos(pi * (2.0 * static_cast<double>(m) + 1.0) / (2.0 * static_cast<double>(nodes)));
    f[m] = std::abs(sigma) <= 1.0 ? prefactor * chebyshev_series(e.a, 0.5 * (x[m] - sigma))
                                  : gaussian_eval(sigma, x[m], width);
  }

  e.c.assign(nodes, 0.0);
  for (std::size_t m = 0; m < nodes; ++m) {
    double t_prev = 1.0;
    double t_cur = x[m];
    e.c[0] += f[m];
    if (nodes > 1) e.c[1] += f[m] * t_cur;
    for (std::size_t j = 2; j < nodes; ++j) {
      const double t_next = 2.0 * x[m] * t_cur - t_prev;
      t_prev = t_cur;
      t_cur = t_next;
      e.c[j] += f[m] * t_cur;
    }
  }
  for (std::size_t j = 0; j < nodes; ++j) e.c[j] *= (j == 0 ? 1.0 : 2.0) / static_cast<double>(nodes);

  const double r = best_truncation_bound(order, width);
  e.underresolved = !std::isfinite(r);
  e.coeff_bound = 2.0 * (r + 1.1);
  if (mode == RescaleMode::Half) {
    for (double cj : e.c)
      if (std::abs(cj) > e.coeff_bound) e.bound_ok = false;
  }
  return e;
}

std::vector<double> cheb_moments(const HermitianOperator& op, const ProbeState& psi, std::size_t order) {
  if (psi.dim() != op.dim()) throw ValidationError("probe dimension does not match operator");
  std::vector<double> t(order + 1);
  const Matrix& o = op.matrix();
  const Vector& v0 = psi.amplitudes();
  t[0] = 1.0;
  if (order == 0) return t;
  Vector prev = v0;
  Vector cur = o * v0;
  t[1] = v0.dot(cur).real();
  for (std::size_t k = 2; k <= order; ++k) {
    Vector next = 2.0 * (o * cur) - prev;
    prev = std::move(cur);
    cur = std::move(next);
    t[k] = v0.dot(cur).real();
  }
  for (double tk : t)
    if (!(std::abs(tk) <= 1.0 + 1e-10)) throw ValidationError("Chebyshev moment exceeds 1; normalize the operator");
  return t;
}

std::vector<double> cheb_moments(const SpectralModel& model, std::size_t order) {
  std::vector<double> t(order + 1, 0.0);
  const auto values = model.eigenvalues();
  const auto weights = model.weights();
  for (std::size_t j = 0; j < model.size(); ++j) {
    double prev = 1.0;
    double cur = values[j];
    t[0] += weights[j];
    if (order >= 1) t[1] += weights[j] * cur;
    for (std::size_t k = 2; k <= order; ++k) {
      const double next = 2.0 * values[j] * cur - prev;
      prev = cur;
      cur = next;
      t[k] += weights[j] * cur;
    }
  }
  return t;
}

double git_dot(const ChebExpansion& expansion, std::span<const double> moments) {
  if (moments.size() != expansion.c.size()) throw ValidationError("moment count does not match expansion order");
  double acc = 0.0;
  for (std::size_t k = 0; k < moments.size(); ++k) acc += expansion.c[k] * moments[k];
  return acc;
}

TransformGrid git_transform_exact_moments(std::span<const double> moments, double width, std::span<const double> nu,
                                          RescaleMode mode) {
  if (moments.empty()) throw ValidationError("need at least t_0");
  TransformGrid out;
  out.nu.assign(nu.begin(), nu.end());
  out.values.resize(nu.size());
  out.kernel_width = width;
  for (std::size_t i = 0; i < nu.size(); ++i)
    out.values[i] = git_dot(shifted_coeffs(width, nu[i], moments.size() - 1, mode), moments);
  return out;
}

}  // namespace specdens
