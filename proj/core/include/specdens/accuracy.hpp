#pragma once

#include <vector>

#include "specdens/kernels.hpp"

namespace specdens {

struct SigmaAccuracy {
  double measured = 0.0;  // 1 - min captured mass
  double spacing = 0.0;
  double worst_omega = 0.0;
  std::vector<double> omegas;
  std::vector<double> captured;
};

// Mass of K(., omega0) inside the resolution window around omega0, minimized
// over a uniform omega0 grid on [lo, hi]. Fejér windows use the period-2
// distance of the phase grid; qubitized windows are measured in frequency
// after mapping each outcome through cos(pi sigma).
SigmaAccuracy sigma_accuracy(const KernelSpec& kernel, double delta, double spacing, double lo = -1.0,
                             double hi = 1.0);

// Distance on the circle of circumference 2.
double cyclic_distance(double a, double b);

}  // namespace specdens
