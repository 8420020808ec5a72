#include "specdens/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <unsupported/Eigen/FFT>

#include "specdens/error.hpp"
#include "specdens/kernels.hpp"

namespace specdens {

using std::numbers::pi;

void OutcomeDistribution::validate(double tol) const {
  if (grid.size() != probs.size() || probs.empty()) throw NumericError("outcome distribution is malformed");
  double total = 0.0;
  for (double p : probs) {
    if (p < -tol) throw NumericError("negative outcome probability");
    total += p;
  }
  if (std::abs(total - 1.0) > tol * std::max<double>(1.0, static_cast<double>(probs.size())))
    throw NumericError("outcome probabilities do not sum to one");
}

OutcomeDistribution qpe_distribution(const SpectralModel& model, std::uint64_t n) {
  validate(KernelSpec{FejerKernel{n}});
  OutcomeDistribution d{fejer_grid(n), std::vector<double>(n, 0.0)};
  for (std::uint64_t q = 0; q < n; ++q)
    d.probs[q] = model.expectation([&](double w) { return fejer_eval(d.grid[q], w, n); });
  return d;
}

OutcomeDistribution qubitized_qpe_distribution(const SpectralModel& model, std::uint64_t n) {
  validate(KernelSpec{QubitizedFejerKernel{n}});
  for (double w : model.eigenvalues())
    if (w < -1e-12 || w > 1.0 + 1e-12) throw ValidationError("qubitized QPE needs the spectrum inside [0, 1]");
  OutcomeDistribution d{fejer_grid(n), std::vector<double>(n, 0.0)};
  for (std::uint64_t q = 0; q < n; ++q)
    d.probs[q] = model.expectation([&](double w) { return qubitized_fejer_eval(d.grid[q], w, n); });
  return d;
}

namespace {

// exp(-i t H) for a random Hermitian H with unit operator norm.
Matrix fault_unitary(std::size_t dim, double delta_t, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(dim, dim);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = Complex(normal(rng), normal(rng));
  const Matrix h = (a + a.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd lam = es.eigenvalues() / es.eigenvalues().cwiseAbs().maxCoeff();
  Eigen::VectorXcd phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) phases(i) = std::polar(1.0, -delta_t * lam(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

OutcomeDistribution statevector_qpe(const HermitianOperator& op, const ProbeState& psi, unsigned n_ancilla,
                                    const std::optional<FaultModel>& fault, std::size_t memory_cap) {
  if (psi.dim() != op.dim()) throw ValidationError("probe dimension does not match operator");
  if (n_ancilla < 1 || n_ancilla > 40) throw ValidationError("ancilla count must lie in [1, 40]");
  if (fault && !(fault->delta_t >= 0.0)) throw ValidationError("fault strength must be nonnegative");
  const std::size_t dim = op.dim();
  const std::size_t n = std::size_t{1} << n_ancilla;
  if (dim > memory_cap / n)
    throw ResourceError("statevector of size " + std::to_string(dim) + " x " + std::to_string(n) + " exceeds cap");

  const EigenSystem sys = eigensystem(op);
  for (Eigen::Index i = 0; i < sys.values.size(); ++i)
    if (std::abs(sys.values(i)) > 1.0 + 1e-12) throw ValidationError("operator spectrum outside [-1, 1]");

  std::mt19937_64 rng(fault ? child_seed(fault->seed, 0) : 0);
  // Column x holds the system state attached to ancilla basis state |x>.
  Matrix state = psi.amplitudes().replicate(1, static_cast<Eigen::Index>(n)) / std::sqrt(static_cast<double>(n));
  for (unsigned j = 0; j < n_ancilla; ++j) {
    const double power = std::ldexp(1.0, static_cast<int>(j));
    Eigen::VectorXcd phases(sys.values.size());
    for (Eigen::Index i = 0; i < sys.values.size(); ++i)
      phases(i) = std::polar(1.0, pi * std::fmod(power * (sys.values(i) + 1.0), 2.0));
    Matrix u = sys.vectors * phases.asDiagonal() * sys.vectors.adjoint();
    if (fault && fault->delta_t > 0.0) u = u * fault_unitary(dim, fault->delta_t, rng);
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t x = 0; x < n; ++x)
      if (x & bit) state.col(static_cast<Eigen::Index>(x)) = u * state.col(static_cast<Eigen::Index>(x));
  }

  // Inverse QFT: amplitude of |q> is sum_x e^{-2 pi i x q / N} / sqrt(N), a forward DFT.
  Eigen::FFT<double> fft;
  OutcomeDistribution d{fejer_grid(n), std::vector<double>(n, 0.0)};
  std::vector<Complex> row(n);
  std::vector<Complex> out(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index s = 0; s < static_cast<Eigen::Index>(dim); ++s) {
    for (std::size_t x = 0; x < n; ++x) row[x] = state(s, static_cast<Eigen::Index>(x));
    fft.fwd(out, row);
    for (std::size_t q = 0; q < n; ++q) d.probs[q] += std::norm(out[q]) * inv_n;
  }
  return d;
}

Qubiterate Qubiterate::build(const HermitianOperator& op) {
  const EigenSystem sys = eigensystem(op);
  const auto d = static_cast<Eigen::Index>(op.dim());
  Eigen::VectorXd root(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double v = sys.values(i);
    if (std::abs(v) > 1.0 + 1e-12) throw ValidationError("qubiterate needs ||O|| <= 1");
    root(i) = std::sqrt(std::max(0.0, 1.0 - v * v));
  }
  const Matrix s = sys.vectors * root.cast<Complex>().asDiagonal() * sys.vectors.adjoint();
  const Matrix& o = op.matrix();
  // U = [[O, S], [S, -O]] is a Hermitian unitary; R = diag(I, -I) reflects
  // about the flag subspace. W = R U.
  Matrix w(2 * d, 2 * d);
  w.topLeftCorner(d, d) = o;
  w.topRightCorner(d, d) = s;
  w.bottomLeftCorner(d, d) = -s;
  w.bottomRightCorner(d, d) = o;
  Qubiterate q(std::move(w), op.dim());
  if (q.unitarity_error() > 1e-12) throw NumericError("qubiterate is not unitary to 1e-12");
  return q;
}

Vector Qubiterate::flagged(const ProbeState& psi) const {
  if (psi.dim() != dim_) throw ValidationError("probe dimension does not match operator");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(2 * dim_));
  v.head(static_cast<Eigen::Index>(dim_)) = psi.amplitudes();
  return v;
}

std::vector<double> Qubiterate::walk_moments(const ProbeState& psi, std::size_t order) const {
  const Vector start = flagged(psi);
  std::vector<double> t(order + 1);
  Vector cur = start;
  t[0] = start.squaredNorm();
  for (std::size_t k = 1; k <= order; ++k) {
    cur = w_ * cur;
    t[k] = start.dot(cur).real();
  }
  return t;
}

double Qubiterate::unitarity_error() const {
  const auto n = w_.rows();
  return (w_.adjoint() * w_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

double hadamard_test_sample(double t, std::uint64_t shots, std::uint64_t seed) {
  if (!(std::abs(t) <= 1.0 + 1e-10)) throw ValidationError("Hadamard test needs |t| <= 1");
  if (shots == 0) throw ValidationError("Hadamard test needs at least one shot");
  const double p = std::clamp(0.5 * (1.0 + t), 0.0, 1.0);
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::uint64_t> binom(shots, p);
  const auto hits = binom(rng);
  return 2.0 * static_cast<double>(hits) / static_cast<double>(shots) - 1.0;
}

std::vector<std::uint64_t> sample_histogram(const OutcomeDistribution& dist, std::uint64_t shots,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> counts(dist.size(), 0);
  std::uint64_t remaining = shots;
  double mass = 0.0;
  for (double p : dist.probs) mass += std::max(0.0, p);
  // Conditional binomials give an exact multinomial draw.
  for (std::size_t i = 0; i < dist.size() && remaining > 0; ++i) {
    const double p = std::max(0.0, dist.probs[i]);
    if (i + 1 == dist.size() || mass <= 0.0) {
      counts[i] = remaining;
      break;
    }
    const double cond = std::clamp(p / mass, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> binom(remaining, cond);
    counts[i] = binom(rng);
    remaining -= counts[i];
    mass -= p;
  }
  return counts;
}

}  // namespace specdens
