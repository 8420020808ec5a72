#pragma once

namespace specdens {

// (Sigma, Delta, beta, eta) accuracy request. Every component lies strictly
// inside (0, 1).
struct AccuracyTarget {
  double sigma = 0.1;  // tail mass allowed outside the resolution window
  double delta = 0.1;  // resolution half-width
  double beta = 0.1;   // sup-norm error of the estimated transform
  double eta = 0.05;   // failure probability for beta

  void validate() const;
};

}  // namespace specdens
