#include "qthermo/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

constexpr double kJacobiOffTol = 1e-14;
constexpr int kMaxJacobiSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// A <- J^dagger A J and V <- V J, where J is the identity except on the
// (p, q) block. J zeroes A(p, q).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, Eigen::Index p,
                   Eigen::Index q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Complex phase = apq / g;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * g);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * std::conj(phase);
  const Complex jqq = c * std::conj(phase);

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

}  // namespace

double max_asymmetry(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput("max_abs_diff: dimension mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    std::ostringstream os;
    os << "HermitianOperator: expected a non-empty square matrix, got "
       << m_.rows() << "x" << m_.cols();
    throw InvalidInput(os.str());
  }
  const double asym = max_asymmetry(m_);
  if (!(asym <= kHermitianTol)) {
    std::ostringstream os;
    os << "HermitianOperator: matrix is not Hermitian (max asymmetry " << asym
       << ")";
    throw InvalidInput(os.str());
  }
}

HermitianOperator HermitianOperator::operator+(
    const HermitianOperator& o) const {
  if (o.dim() != dim()) throw InvalidInput("operator+: dimension mismatch");
  return HermitianOperator(m_ + o.m_);
}

HermitianOperator HermitianOperator::operator-(
    const HermitianOperator& o) const {
  if (o.dim() != dim()) throw InvalidInput("operator-: dimension mismatch");
  return HermitianOperator(m_ - o.m_);
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(m_ * s);
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
         eigenvectors.adjoint();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  const HermitianOperator op(m_);  // shape and Hermiticity
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " differs from 1";
    throw InvalidInput(os.str());
  }
  const double lowest = spectral_decompose(op).eigenvalues(0);
  if (lowest < kPsdFloor) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << lowest;
    throw InvalidInput(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw InvalidInput("DensityMatrix::pure: zero vector");
  const ComplexVector u = psi / n;
  return DensityMatrix(hermitian_part(u * u.adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  if (dim < 1) throw InvalidInput("maximally_mixed: dim must be >= 1");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) /
                       static_cast<double>(dim));
}

double DensityMatrix::purity() const {
  return (m_ * m_).trace().real();
}

SpectralDecomposition spectral_decompose(const HermitianOperator& op) {
  ComplexMatrix a = op.matrix();
  const Eigen::Index n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  const double scale = std::max(1.0, a.norm());
  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > kJacobiOffTol * scale) {
    if (++sweep > kMaxJacobiSweeps) {
      std::ostringstream os;
      os << "spectral_decompose: Jacobi did not converge (off-diagonal mass "
         << off << ")";
      throw ConvergenceError(os.str());
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    off = off_diagonal_norm(a);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) {
                     return a(i, i).real() < a(j, j).real();
                   });

  SpectralDecomposition out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src).real();
    out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

HermitianOperator matrix_function(const SpectralDecomposition& spec,
                                  const std::function<double(double)>& f) {
  RealVector mapped(spec.dim());
  for (Eigen::Index k = 0; k < spec.dim(); ++k) {
    const double lambda = spec.eigenvalues(k);
    mapped(k) = f(lambda);
    if (!std::isfinite(mapped(k))) {
      std::ostringstream os;
      os << "matrix_function: f is undefined at eigenvalue " << lambda;
      throw InvalidInput(os.str());
    }
  }
  const ComplexMatrix& vecs = spec.eigenvectors;
  return HermitianOperator(hermitian_part(
      vecs * mapped.cast<Complex>().asDiagonal() * vecs.adjoint()));
}

HermitianOperator matrix_function(const HermitianOperator& op,
                                  const std::function<double(double)>& f) {
  return matrix_function(spectral_decompose(op), f);
}

HermitianOperator matrix_log(const HermitianOperator& op) {
  return matrix_function(op, [](double x) {
    if (x < kPsdFloor) {
      std::ostringstream os;
      os << "matrix_log: negative eigenvalue " << x;
      throw InvalidInput(os.str());
    }
    return std::log(x <= kZeroClamp ? kLogFloor : x);
  });
}

HermitianOperator matrix_sqrt(const HermitianOperator& op) {
  return matrix_function(op, [](double x) {
    if (x < kPsdFloor) {
      std::ostringstream os;
      os << "matrix_sqrt: negative eigenvalue " << x;
      throw InvalidInput(os.str());
    }
    return x <= kZeroClamp ? 0.0 : std::sqrt(x);
  });
}

HermitianOperator matrix_exp(const HermitianOperator& op) {
  return matrix_function(op, [](double x) { return std::exp(x); });
}

HermitianOperator pauli(PauliAxis which) {
  using namespace std::complex_literals;
  ComplexMatrix m(2, 2);
  switch (which) {
    case PauliAxis::X:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case PauliAxis::Y:
      m << 0.0, -1i, 1i, 0.0;
      break;
    case PauliAxis::Z:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator identity(Eigen::Index dim) {
  if (dim < 1) throw InvalidInput("identity: dim must be >= 1");
  return HermitianOperator(ComplexMatrix::Identity(dim, dim));
}

}  // namespace qthermo
