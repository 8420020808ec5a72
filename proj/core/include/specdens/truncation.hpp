#pragma once

#include <cstddef>

#include "specdens/target.hpp"

namespace specdens {

struct CriticalBetas {
  double lower = 0.0;  // e^{-1/Delta^2} / Sigma
  double upper = 0.0;  // sqrt(ln(1/Sigma) / 2) / Delta
};

CriticalBetas critical_betas(const AccuracyTarget& target);

enum class Regime { Asymptotic, Intermediate };

const char* regime_name(Regime r);

inline constexpr double kAlpha1 = 2.93;
inline constexpr double kAlpha2 = 4.14;
inline constexpr double kAsymptoticConstant = 3.4;

// Analytic bound on sup |K_G - K_GL| for the given regime. Throws RegimeError
// when the regime's validity condition fails at (L, width).
double truncation_error_bound(std::size_t order, double width, Regime regime);

// Whether the regime's bound applies at (L, width).
bool bound_applies(std::size_t order, double width, Regime regime);

// Smallest valid bound at L: the asymptotic bound when it applies and the
// intermediate bound at the largest order <= L inside its window. +inf when
// neither is available.
double best_truncation_bound(std::size_t order, double width);

// Geometric-series tail bound, kept for diagnostics.
double geometric_series_bound(std::size_t order, double width);

// Smallest L whose best bound is <= eps. Throws ResourceError past `cap`.
std::size_t certified_order(double width, double eps, std::size_t cap = 1u << 24);

struct MinimumError {
  double tight = 0.0;
  double middle = 0.0;
  double envelope = 0.0;  // e^{-1/(2 width^2)}
};

MinimumError min_error_intermediate(double width);

// Closed-form orders as printed for each regime.
std::size_t intermediate_closed_form(const AccuracyTarget& target);
std::size_t asymptotic_closed_form(const AccuracyTarget& target);

struct TruncationBudget {
  std::size_t order = 0;              // certified L, used by the pipeline
  std::size_t closed_form_order = 0;  // L from the regime's closed form
  Regime regime = Regime::Intermediate;
  double width = 0.0;
  double error_bound = 0.0;  // best analytic bound at `order`
  double beta_lower = 0.0;
  double beta_upper = 0.0;
  double min_error = 0.0;    // tight intermediate minimum error
  bool adjusted = false;     // closed form failed its post-check
};

TruncationBudget truncation_order(const AccuracyTarget& target);

}  // namespace specdens
