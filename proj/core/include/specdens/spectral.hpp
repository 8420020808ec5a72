#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace specdens {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kDegeneracyTolerance = 1e-10;
inline constexpr std::size_t kDefaultDimensionCap = 256;

class HermitianOperator {
 public:
  // Throws ValidationError unless the matrix is square and Hermitian to
  // within kHermitianTolerance (relative to its largest entry).
  explicit HermitianOperator(Matrix entries);

  static HermitianOperator diagonal(std::span<const double> values);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator_norm() const;

 private:
  Matrix m_;
};

class ProbeState {
 public:
  // Throws ValidationError unless the vector has unit norm.
  explicit ProbeState(Vector amplitudes);

  static ProbeState normalized(Vector amplitudes);
  static ProbeState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  const Vector& amplitudes() const { return v_; }

 private:
  Vector v_;
};

// y = scale * x + shift, applied to eigenvalues.
struct AffineMap {
  double scale = 1.0;
  double shift = 0.0;

  double apply(double x) const { return scale * x + shift; }
  double invert(double y) const { return (y - shift) / scale; }
};

// Discrete spectral measure: distinct eigenvalues in [-1, 1] with
// nonnegative weights summing to one.
class SpectralModel {
 public:
  SpectralModel(std::vector<double> eigenvalues, std::vector<double> weights);

  static SpectralModel point(double omega);

  std::span<const double> eigenvalues() const { return eigenvalues_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return eigenvalues_.size(); }

  // Expectation of f over the measure.
  template <class F>
  double expectation(F&& f) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < eigenvalues_.size(); ++k) acc += weights_[k] * f(eigenvalues_[k]);
    return acc;
  }

 private:
  std::vector<double> eigenvalues_;
  std::vector<double> weights_;
};

enum class SpectrumTarget {
  Full,  // divide by max(1, ||O||)
  Half,  // affine onto [-1/2, 1/2]
  Unit,  // affine onto [0, 1]
};

struct NormalizedOperator {
  HermitianOperator op;
  AffineMap map;
};

NormalizedOperator normalize_operator(const HermitianOperator& op, SpectrumTarget target);

struct EigenSystem {
  Eigen::VectorXd values;
  Matrix vectors;
};

EigenSystem eigensystem(const HermitianOperator& op);

// Spectral measure of op seen from psi. Degenerate eigenvalues are merged,
// eigenvalues within rounding of [-1, 1] are clamped and anything further
// out raises ValidationError.
SpectralModel diagonalize(const HermitianOperator& op, const ProbeState& psi,
                          std::size_t dimension_cap = kDefaultDimensionCap);

enum class GeneratorKind { Dense, Spiked, Gapped };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Dense;
  // Gapped only: half-width Delta of the isolation window and the minimum
  // ground-state weight |<psi|0>|^2.
  double gap = 0.1;
  double overlap = 0.2;
};

// Parses "dense", "spiked" or "gapped[:gap=0.1,overlap=0.2]".
GeneratorSpec parse_generator_spec(std::string_view text);

struct ModelInstance {
  HermitianOperator op;
  ProbeState psi;
};

// Random operator with spectrum inside [-1, 1] and a probe state, fully
// determined by (dim, seed, spec).
ModelInstance random_model(std::size_t dim, std::uint64_t seed, const GeneratorSpec& spec = {});

// Independent stream for item `index` derived from a parent seed.
std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace specdens
