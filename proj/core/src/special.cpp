#include "specdens/special.hpp"

#include <cmath>
#include <numbers>

#include "specdens/error.hpp"

namespace specdens {

using std::numbers::e;

double lambert_w(double x) {
  constexpr double branch = -1.0 / e;
  if (std::isnan(x) || x < branch - 1e-15) throw ValidationError("Lambert W needs x >= -1/e");
  if (x <= branch) return -1.0;
  if (x == 0.0) return 0.0;

  if (x > e) {
    // Newton on w + ln w = ln x avoids overflow of e^w.
    const double lx = std::log(x);
    double w = lx - std::log(lx);
    for (int it = 0; it < 50; ++it) {
      const double step = (w + std::log(w) - lx) / (1.0 + 1.0 / w);
      w -= step;
      if (std::abs(step) <= 1e-15 * w) return w;
    }
    throw NumericError("Lambert W did not converge");
  }

  double w;
  if (x < -0.25) {
    const double p = std::sqrt(2.0 * (1.0 + e * x));
    w = -1.0 + p - p * p / 3.0;
  } else {
    w = std::log1p(x);
    w *= x < 1.0 ? 1.0 - 0.5 * w : 0.75;
  }
  for (int it = 0; it < 50; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) return w;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) return w;
  }
  throw NumericError("Lambert W did not converge");
}

double lambert_ratio(double x) {
  if (!(x > 0.0)) throw ValidationError("x / W(x) needs x > 0");
  return x / lambert_w(x);
}

std::vector<double> scaled_bessel_i(double z, std::size_t m_max) {
  if (!(z >= 0.0) || !std::isfinite(z)) throw ValidationError("Bessel argument must be finite and >= 0");
  std::vector<double> out(m_max + 1, 0.0);
  if (z == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double mm = static_cast<double>(m_max);
  const auto start = static_cast<std::size_t>(std::max(mm, std::ceil(std::sqrt(mm * mm + 80.0 * z)))) + 30;

  constexpr double kBig = 1e250;
  double next = 0.0;  // I_{m+1}
  double cur = 1e-300;  // I_m at m = start
  double sum = 0.0;   // I_1 + I_2 + ... accumulated from the top
  for (std::size_t m = start; m >= 1; --m) {
    if (m <= m_max) out[m] = cur;
    sum += cur;
    const double prev = next + (2.0 * static_cast<double>(m) / z) * cur;
    next = cur;
    cur = prev;
    if (std::abs(cur) > kBig) {
      const double s = 1.0 / kBig;
      cur *= s;
      next *= s;
      sum *= s;
      for (std::size_t j = m; j <= m_max && j < out.size(); ++j) out[j] *= s;
    }
  }
  out[0] = cur;
  const double norm = cur + 2.0 * sum;
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericError("Bessel recurrence failed");
  for (double& v : out) v /= norm;
  return out;
}

double kappa(double x) {
  if (!(x > 0.0)) throw ValidationError("kappa needs x > 0");
  const double r = std::sqrt(1.0 + x * x);
  const double s = x + r;
  const double t = x - 1.0 + r;
  return 0.5 * std::log(s) - t * t / (4.0 * x * s);
}

}  // namespace specdens
