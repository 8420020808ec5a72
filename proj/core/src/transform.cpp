#include "specdens/transform.hpp"

#include <cmath>

#include "specdens/error.hpp"

namespace specdens {

std::vector<double> uniform_grid(double lo, double hi, double spacing) {
  if (!(spacing > 0.0) || !(hi >= lo)) throw ValidationError("invalid grid bounds or spacing");
  const auto intervals = static_cast<std::size_t>(std::ceil((hi - lo) / spacing - 1e-9));
  std::vector<double> grid(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i)
    grid[i] = intervals == 0 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(intervals);
  return grid;
}

TransformGrid exact_transform(const SpectralModel& model, const KernelSpec& kernel, std::span<const double> grid) {
  validate(kernel);
  TransformGrid out;
  out.nu.assign(grid.begin(), grid.end());
  out.values.resize(grid.size());
  out.exact = true;
  out.discrete = is_discrete(kernel);
  out.kernel_width = kernel_width(kernel);
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.values[i] = model.expectation([&](double w) { return kernel_eval(kernel, grid[i], w); });
  return out;
}

TransformGrid exact_transform(const SpectralModel& model, const KernelSpec& kernel) {
  if (!is_discrete(kernel)) throw ValidationError("continuous kernels need an explicit grid");
  const std::uint64_t n = std::holds_alternative<FejerKernel>(kernel) ? std::get<FejerKernel>(kernel).order
                                                                     : std::get<QubitizedFejerKernel>(kernel).order;
  const std::vector<double> grid = fejer_grid(n);
  return exact_transform(model, kernel, grid);
}

double observable_exact(const SpectralModel& model, const ObservableFn& f) { return model.expectation(f.f); }

ObservableEstimate observable_from_transform(const TransformGrid& grid, const ObservableFn& f) {
  if (grid.nu.size() != grid.values.size()) throw ValidationError("transform grid is inconsistent");
  ObservableEstimate est;
  if (grid.discrete) {
    for (std::size_t i = 0; i < grid.nu.size(); ++i) est.value += grid.values[i] * f(grid.nu[i]);
    return est;
  }
  double max_step = 0.0;
  for (std::size_t i = 1; i < grid.nu.size(); ++i) {
    const double h = grid.nu[i] - grid.nu[i - 1];
    if (!(h > 0.0)) throw ValidationError("continuous transform grid must be increasing");
    max_step = std::max(max_step, h);
    est.value += 0.5 * h * (grid.values[i] * f(grid.nu[i]) + grid.values[i - 1] * f(grid.nu[i - 1]));
  }
  est.coarse = grid.kernel_width > 0.0 && max_step > 0.5 * grid.kernel_width;
  return est;
}

}  // namespace specdens
