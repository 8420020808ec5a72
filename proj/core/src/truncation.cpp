#include "specdens/truncation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "specdens/error.hpp"
#include "specdens/kernels.hpp"
#include "specdens/special.hpp"

namespace specdens {

using std::numbers::e;
using std::numbers::pi;

namespace {

const double kKappa1 = kappa(1.0);

double shifted_order(std::size_t order) {
  return static_cast<double>(order % 2 == 0 ? order + 2 : order + 3);
}

double intermediate_lower_limit(double width) {
  return std::sqrt(2.0 / pi) / (width * std::sqrt(kKappa1)) - 1.0;
}

}  // namespace

CriticalBetas critical_betas(const AccuracyTarget& target) {
  target.validate();
  return {std::exp(-1.0 / (target.delta * target.delta)) / target.sigma,
          std::sqrt(0.5 * std::log(1.0 / target.sigma)) / target.delta};
}

const char* regime_name(Regime r) { return r == Regime::Asymptotic ? "asymptotic" : "intermediate"; }

bool bound_applies(std::size_t order, double width, Regime regime) {
  const double lp = shifted_order(order);
  const double edge = 2.0 / (width * width);
  if (regime == Regime::Asymptotic) return lp >= edge;
  return lp <= edge && static_cast<double>(order) >= intermediate_lower_limit(width);
}

double truncation_error_bound(std::size_t order, double width, Regime regime) {
  if (!(width > 0.0)) throw ValidationError("Gaussian width must be positive");
  if (!bound_applies(order, width, regime))
    throw RegimeError(std::string(regime_name(regime)) + " bound does not apply at L = " + std::to_string(order));
  if (regime == Regime::Asymptotic) {
    const double lp = shifted_order(order);
    return kAsymptoticConstant * std::exp(0.5 * lp * std::log(e / (lp * width * width)));
  }
  const double lk2 = width * width * kKappa1;
  const double l1 = static_cast<double>(order) + 1.0;
  return std::exp(-0.5 * l1 * l1 * lk2) / (std::sqrt(2.0) * lk2 * l1);
}

double best_truncation_bound(std::size_t order, double width) {
  if (!(width > 0.0)) throw ValidationError("Gaussian width must be positive");
  double best = std::numeric_limits<double>::infinity();
  if (bound_applies(order, width, Regime::Asymptotic))
    best = truncation_error_bound(order, width, Regime::Asymptotic);
  // Both bounds cover the coefficient tail sum, which only shrinks as L grows,
  // so the intermediate bound at the last order where it applies still holds
  // past its own window. It decreases in L, so that order is the best one.
  const double edge = 2.0 / (width * width);
  const auto top = static_cast<std::size_t>(std::min(static_cast<double>(order), std::floor(edge)));
  for (std::size_t l = top; l + 4 > top; --l) {
    if (bound_applies(l, width, Regime::Intermediate)) {
      best = std::min(best, truncation_error_bound(l, width, Regime::Intermediate));
      break;
    }
    if (l == 0) break;
  }
  return best;
}

double geometric_series_bound(std::size_t order, double width) {
  if (!(width > 0.0)) throw ValidationError("Gaussian width must be positive");
  const double lp = shifted_order(order);
  const double k = kappa(0.5 * lp * width * width);
  return std::exp(-lp * k) / (std::sqrt(2.0) * (1.0 - std::exp(-k)));
}

std::size_t certified_order(double width, double eps, std::size_t cap) {
  if (!(eps > 0.0)) throw ValidationError("target truncation error must be positive");
  for (std::size_t order = 0; order <= cap; ++order)
    if (best_truncation_bound(order, width) <= eps) return order;
  throw ResourceError("no truncation order up to " + std::to_string(cap) + " meets the error target");
}

MinimumError min_error_intermediate(double width) {
  if (!(width > 0.0 && width <= 5.0)) throw RegimeError("minimum intermediate error needs 0 < Lambda <= 5");
  const double w2 = width * width;
  MinimumError m;
  m.tight = std::exp(-0.5 * kKappa1 * (2.0 + width) * (2.0 + width) / w2) / (std::sqrt(2.0) * kKappa1 * (2.0 + w2));
  m.middle = std::exp(-2.0 * kKappa1) / (std::sqrt(8.0) * kKappa1) * std::exp(-2.0 * kKappa1 / w2);
  m.envelope = std::exp(-0.5 / w2);
  return m;
}

std::size_t intermediate_closed_form(const AccuracyTarget& t) {
  t.validate();
  const double ln_s = std::log(1.0 / t.sigma);
  const double x = kAlpha2 / (t.delta * t.beta) * ln_s;
  const double g = std::log(x) - 0.25 * std::log(std::log(x * x));
  const double l = std::ceil(kAlpha1 / t.delta * std::sqrt(ln_s * g)) - 1.0;
  return static_cast<std::size_t>(std::max(0.0, l));
}

std::size_t asymptotic_closed_form(const AccuracyTarget& t) {
  t.validate();
  const double ln_s = std::log(1.0 / t.sigma);
  const double x = t.delta * t.delta / e * std::log(6.8 / t.beta) / ln_s;
  const double l = std::ceil(2.0 * e / (t.delta * t.delta) * ln_s + lambert_ratio(x)) - 2.0;
  return static_cast<std::size_t>(std::max(0.0, l));
}

TruncationBudget truncation_order(const AccuracyTarget& target) {
  target.validate();
  TruncationBudget b;
  b.width = git_resolution(target);
  const CriticalBetas betas = critical_betas(target);
  b.beta_lower = betas.lower;
  b.beta_upper = betas.upper;
  if (target.beta > betas.upper)
    throw RegimeError("beta = " + std::to_string(target.beta) + " exceeds beta_U = " + std::to_string(betas.upper));
  b.min_error = b.width <= 5.0 ? min_error_intermediate(b.width).tight : 0.0;

  const double eps = 0.5 * target.beta;
  auto passes = [&](std::size_t order) { return best_truncation_bound(order, b.width) <= eps; };

  if (target.beta == betas.lower) {
    const std::size_t li = intermediate_closed_form(target);
    const std::size_t la = asymptotic_closed_form(target);
    const bool pi_ok = passes(li);
    const bool pa_ok = passes(la);
    if (pi_ok && (!pa_ok || li <= la)) {
      b.regime = Regime::Intermediate;
      b.closed_form_order = li;
    } else {
      b.regime = Regime::Asymptotic;
      b.closed_form_order = pa_ok ? la : std::min(li, la);
    }
  } else {
    b.regime = target.beta < betas.lower || eps < b.min_error ? Regime::Asymptotic : Regime::Intermediate;
    b.closed_form_order =
        b.regime == Regime::Intermediate ? intermediate_closed_form(target) : asymptotic_closed_form(target);
  }

  if (passes(b.closed_form_order)) {
    b.order = b.closed_form_order;
  } else {
    b.order = certified_order(b.width, eps);
    b.adjusted = true;
  }
  b.error_bound = best_truncation_bound(b.order, b.width);
  return b;
}

}  // namespace specdens
