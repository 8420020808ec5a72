#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specdens/spectral.hpp"
#include "specdens/transform.hpp"

namespace specdens {

// Bare Chebyshev coefficients a_0..a_L of exp(-x^2 / (2 width^2)) on [-1, 1].
std::vector<double> gauss_cheb_coeffs(double width, std::size_t order);

// a_n by a Gauss-Chebyshev node sum with `nodes` points.
double coeff_quadrature_oracle(double width, std::size_t n, std::size_t nodes);

enum class RescaleMode { Full, Half };

// Degree-L Chebyshev expansion in omega of the Gaussian kernel centred at sigma.
struct ChebExpansion {
  double width = 0.0;
  std::size_t order = 0;
  double sigma = 0.0;
  RescaleMode mode = RescaleMode::Full;
  std::vector<double> a;  // a_n(width / 2), the shifted-variable series
  std::vector<double> c;  // c_0..c_L in omega
  double coeff_bound = 0.0;   // 2 (R_L + 1.1); meaningful in half mode
  bool bound_ok = true;
  bool underresolved = false;  // L below the smallest order any bound certifies

  double operator()(double omega) const;
};

ChebExpansion shifted_coeffs(double width, double sigma, std::size_t order, RescaleMode mode = RescaleMode::Full);

// sum_n c_n T_n(x) by Clenshaw recurrence.
double chebyshev_series(std::span<const double> c, double x);

// t_k = <psi| T_k(O) |psi> for k = 0..L by the vector three-term recurrence.
std::vector<double> cheb_moments(const HermitianOperator& op, const ProbeState& psi, std::size_t order);
// Same moments from a spectral decomposition.
std::vector<double> cheb_moments(const SpectralModel& model, std::size_t order);

// c(nu) . t for precomputed expansions, one per grid point.
double git_dot(const ChebExpansion& expansion, std::span<const double> moments);
TransformGrid git_transform_exact_moments(std::span<const double> moments, double width, std::span<const double> nu,
                                          RescaleMode mode = RescaleMode::Full);

}  // namespace specdens
