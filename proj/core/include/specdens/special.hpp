#pragma once

#include <cstddef>
#include <vector>

namespace specdens {

// Principal branch W0 for x >= -1/e.
double lambert_w(double x);

// x / W(x), the inverse of y -> y ln y scaled form used by the truncation planner.
double lambert_ratio(double x);

// e^{-z} I_m(z) for m = 0..m_max by Miller's backward recurrence.
std::vector<double> scaled_bessel_i(double z, std::size_t m_max);

// ln(x + sqrt(1 + x^2)) / 2 - (x - 1 + sqrt(1 + x^2))^2 / (4x (x + sqrt(1 + x^2))).
double kappa(double x);

}  // namespace specdens
