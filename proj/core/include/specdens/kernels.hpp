#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "specdens/jackson.hpp"
#include "specdens/target.hpp"

namespace specdens {

inline constexpr std::uint64_t kDefaultOrderCap = std::uint64_t{1} << 26;

// Fejér kernel on the grid sigma_k = 2k/N - 1; equals 1 when sigma - omega is
// an even integer.
double fejer_eval(double sigma_q, double omega, std::uint64_t n);
std::vector<double> fejer_grid(std::uint64_t n);

// Smallest power of two >= (1/Delta)(1/Sigma + 2).
std::uint64_t fejer_plan(const AccuracyTarget& target, std::uint64_t cap = kDefaultOrderCap);

// Symmetrized Fejér kernel over theta / pi with cos(theta) = omega.
double qubitized_fejer_eval(double sigma_q, double omega, std::uint64_t n);
// Angular resolution sqrt(1 + Delta) - 1.
double qubitized_resolution(double delta);
// Smallest power of two >= (2/Delta_theta)(1/Sigma + 2).
std::uint64_t qubitized_fejer_plan(const AccuracyTarget& target, std::uint64_t cap = kDefaultOrderCap);

double gaussian_eval(double sigma, double omega, double width);
// Lambda = Delta / sqrt(2 ln(1/Sigma)).
double git_resolution(const AccuracyTarget& target);
double git_resolution(double delta, double sigma);

std::uint64_t next_power_of_two(double raw, std::uint64_t cap);

struct FejerKernel {
  std::uint64_t order = 2;
  double operator()(double sigma, double omega) const { return fejer_eval(sigma, omega, order); }
};

struct QubitizedFejerKernel {
  std::uint64_t order = 2;
  double operator()(double sigma, double omega) const { return qubitized_fejer_eval(sigma, omega, order); }
};

struct GaussianKernel {
  double width = 0.1;
  double operator()(double sigma, double omega) const { return gaussian_eval(sigma, omega, width); }
};

using KernelSpec = std::variant<FejerKernel, QubitizedFejerKernel, GaussianKernel, JacksonKernel>;

enum class KernelFamily { Fejer, QubitizedFejer, Gaussian, Jackson };

KernelFamily family(const KernelSpec& kernel);
std::string_view family_name(KernelFamily f);
void validate(const KernelSpec& kernel);
double kernel_eval(const KernelSpec& kernel, double sigma, double omega);
// Fejér families have discrete outcomes on fejer_grid(order).
bool is_discrete(const KernelSpec& kernel);
// Width scale used for quadrature windows and grid-coarseness checks.
double kernel_width(const KernelSpec& kernel);

}  // namespace specdens
