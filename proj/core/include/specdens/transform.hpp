#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "specdens/kernels.hpp"
#include "specdens/spectral.hpp"

namespace specdens {

// Transform values on an evaluation grid. Discrete grids hold outcome
// probabilities; continuous grids hold densities.
struct TransformGrid {
  std::vector<double> nu;
  std::vector<double> values;
  bool exact = false;
  bool discrete = false;
  double kernel_width = 0.0;  // 0 when unknown
};

struct ObservableFn {
  std::function<double(double)> f;
  double grid_resolution = 1e-3;  // spacing for numerical sup and integral
  std::string name;

  double operator()(double omega) const { return f(omega); }
};

// Uniform grid from lo to hi inclusive with spacing at most `spacing`.
std::vector<double> uniform_grid(double lo, double hi, double spacing);

TransformGrid exact_transform(const SpectralModel& model, const KernelSpec& kernel, std::span<const double> grid);
// Discrete kernels on their own outcome grid.
TransformGrid exact_transform(const SpectralModel& model, const KernelSpec& kernel);

double observable_exact(const SpectralModel& model, const ObservableFn& f);

struct ObservableEstimate {
  double value = 0.0;
  bool coarse = false;  // grid spacing too large for the kernel width
};

// Discrete grids: sum of values times f(nu). Continuous grids: trapezoid rule.
ObservableEstimate observable_from_transform(const TransformGrid& grid, const ObservableFn& f);

}  // namespace specdens
