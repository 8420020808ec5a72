#include "specdens/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "specdens/error.hpp"

namespace specdens {

namespace {

constexpr double kClampTolerance = 1e-12;
constexpr double kRandomRadius = 0.95;

Matrix gaussian_matrix(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(dim, dim);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = Complex(normal(rng), normal(rng));
  return a;
}

Vector gaussian_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
// diag(R) divided out.
Matrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(dim, rng));
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

HermitianOperator dense_operator(std::size_t dim, std::mt19937_64& rng) {
  Matrix a = gaussian_matrix(dim, rng);
  Matrix h = (a + a.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
  if (radius > 0.0) h *= kRandomRadius / radius;
  return HermitianOperator(std::move(h));
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ValidationError("invalid value for " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw ValidationError("operator must be a non-empty square matrix");
  if (!m_.allFinite()) throw ValidationError("operator has non-finite entries");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance * scale)
    throw ValidationError("operator is not Hermitian (max |A - A^dagger| = " + std::to_string(asym) + ")");
  m_ = (m_ + m_.adjoint()).eval() * 0.5;
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
  Matrix m = Matrix::Zero(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return HermitianOperator(std::move(m));
}

double HermitianOperator::operator_norm() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

ProbeState::ProbeState(Vector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw ValidationError("probe state is empty");
  if (!v_.allFinite()) throw ValidationError("probe state has non-finite entries");
  const double n = v_.norm();
  if (std::abs(n - 1.0) > kNormTolerance)
    throw ValidationError("probe state is not normalized (norm = " + std::to_string(n) + ")");
}

ProbeState ProbeState::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("cannot normalize a zero or non-finite probe");
  return ProbeState(amplitudes / n);
}

ProbeState ProbeState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ValidationError("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return ProbeState(std::move(v));
}

SpectralModel::SpectralModel(std::vector<double> eigenvalues, std::vector<double> weights)
    : eigenvalues_(std::move(eigenvalues)), weights_(std::move(weights)) {
  if (eigenvalues_.empty() || eigenvalues_.size() != weights_.size())
    throw ValidationError("spectral model needs matching, non-empty eigenvalue and weight lists");
  double total = 0.0;
  for (std::size_t k = 0; k < eigenvalues_.size(); ++k) {
    if (!std::isfinite(eigenvalues_[k]) || std::abs(eigenvalues_[k]) > 1.0)
      throw ValidationError("eigenvalue outside [-1, 1]");
    if (!(weights_[k] >= 0.0)) throw ValidationError("negative weight");
    total += weights_[k];
  }
  if (std::abs(total - 1.0) > 1e-10) throw ValidationError("weights do not sum to one");
}

SpectralModel SpectralModel::point(double omega) { return SpectralModel({omega}, {1.0}); }

NormalizedOperator normalize_operator(const HermitianOperator& op, SpectrumTarget target) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix(), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  AffineMap map;
  if (target == SpectrumTarget::Full) {
    map.scale = 1.0 / std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  } else {
    const double a = target == SpectrumTarget::Half ? -0.5 : 0.0;
    const double b = target == SpectrumTarget::Half ? 0.5 : 1.0;
    if (hi - lo <= kDegeneracyTolerance) {
      map.scale = 1.0;
      map.shift = 0.5 * (a + b) - 0.5 * (lo + hi);
    } else {
      map.scale = (b - a) / (hi - lo);
      map.shift = a - map.scale * lo;
    }
  }
  const std::size_t d = op.dim();
  Matrix m = op.matrix() * map.scale + Matrix::Identity(d, d) * map.shift;
  return {HermitianOperator(std::move(m)), map};
}

EigenSystem eigensystem(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix());
  if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

SpectralModel diagonalize(const HermitianOperator& op, const ProbeState& psi, std::size_t dimension_cap) {
  if (op.dim() > dimension_cap)
    throw ResourceError("operator dimension " + std::to_string(op.dim()) + " exceeds cap " +
                        std::to_string(dimension_cap));
  if (psi.dim() != op.dim()) throw ValidationError("probe dimension does not match operator");
  const EigenSystem sys = eigensystem(op);
  const Vector overlaps = sys.vectors.adjoint() * psi.amplitudes();

  std::vector<double> values;
  std::vector<double> weights;
  for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
    double w = std::norm(overlaps(i));
    double v = sys.values(i);
    if (std::abs(v) > 1.0 + kClampTolerance)
      throw ValidationError("eigenvalue " + std::to_string(v) + " outside [-1, 1]; normalize first");
    v = std::clamp(v, -1.0, 1.0);
    if (!values.empty() && v - values.back() <= kDegeneracyTolerance) {
      weights.back() += w;
    } else {
      values.push_back(v);
      weights.push_back(w);
    }
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  return SpectralModel(std::move(values), std::move(weights));
}

GeneratorSpec parse_generator_spec(std::string_view text) {
  GeneratorSpec spec;
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  if (kind == "dense") {
    spec.kind = GeneratorKind::Dense;
  } else if (kind == "spiked") {
    spec.kind = GeneratorKind::Spiked;
  } else if (kind == "gapped") {
    spec.kind = GeneratorKind::Gapped;
  } else {
    throw ValidationError("unknown generator '" + std::string(kind) + "'");
  }
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ValidationError("expected key=value in generator spec");
    const std::string_view key = item.substr(0, eq);
    const double value = parse_double(item.substr(eq + 1), key);
    if (key == "gap") {
      spec.gap = value;
    } else if (key == "overlap") {
      spec.overlap = value;
    } else {
      throw ValidationError("unknown generator option '" + std::string(key) + "'");
    }
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  return spec;
}

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ModelInstance random_model(std::size_t dim, std::uint64_t seed, const GeneratorSpec& spec) {
  if (dim == 0) throw ValidationError("dimension must be at least 1");
  std::mt19937_64 rng(child_seed(seed, 0));

  if (dim == 1 && spec.kind != GeneratorKind::Gapped) {
    std::uniform_real_distribution<double> u(-kRandomRadius, kRandomRadius);
    Matrix m(1, 1);
    m(0, 0) = u(rng);
    return {HermitianOperator(std::move(m)), ProbeState::basis(1, 0)};
  }

  switch (spec.kind) {
    case GeneratorKind::Dense: {
      HermitianOperator op = dense_operator(dim, rng);
      return {std::move(op), ProbeState::normalized(gaussian_vector(dim, rng))};
    }
    case GeneratorKind::Spiked: {
      HermitianOperator op = dense_operator(dim, rng);
      const EigenSystem sys = eigensystem(op);
      std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
      Vector background = gaussian_vector(dim, rng);
      background /= background.norm();
      Vector v = std::sqrt(0.7) * sys.vectors.col(static_cast<Eigen::Index>(pick(rng))) +
                 std::sqrt(0.3) * background;
      return {std::move(op), ProbeState::normalized(std::move(v))};
    }
    case GeneratorKind::Gapped: {
      const double gap = 2.0 * spec.gap * 1.05;
      if (dim < 2) throw ValidationError("gapped model needs dim >= 2");
      if (!(spec.gap > 0.0) || gap >= 2.0 * kRandomRadius - 0.1)
        throw ValidationError("gap request infeasible inside [-1, 1]");
      if (!(spec.overlap > 0.0 && spec.overlap <= 1.0))
        throw ValidationError("ground-state overlap must lie in (0, 1]");
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<double> values(dim);
      values[0] = -kRandomRadius + 0.05 * u(rng);
      values[1] = values[0] + gap;
      for (std::size_t i = 2; i < dim; ++i) values[i] = values[1] + (kRandomRadius - values[1]) * u(rng);
      std::vector<double> weights(dim);
      weights[0] = spec.overlap + (1.0 - spec.overlap) * 0.5 * u(rng);
      double rest = 0.0;
      for (std::size_t i = 1; i < dim; ++i) rest += (weights[i] = -std::log(1.0 - u(rng)));
      for (std::size_t i = 1; i < dim; ++i) weights[i] *= (1.0 - weights[0]) / rest;
      const Matrix q = haar_unitary(dim, rng);
      Vector c(dim);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
      for (std::size_t i = 0; i < dim; ++i) c(i) = std::polar(std::sqrt(weights[i]), phase(rng));
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(values.data(), dim);
      Matrix h = q * diag.cast<Complex>().asDiagonal() * q.adjoint();
      return {HermitianOperator(std::move(h)), ProbeState::normalized(q * c)};
    }
  }
  throw ValidationError("unknown generator kind");
}

}  // namespace specdens
