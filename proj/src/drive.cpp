#include "qthermo/drive.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

using Mat2 = Eigen::Matrix2cd;

constexpr double kUnitaryTol = 1e-10;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(-i theta n.sigma) times the global phase exp(-i phi) for
// H = a sigma_x + b sigma_y + c sigma_z + d I, theta = 2 pi dt |(a,b,c)|.
Mat2 axis_angle(double a, double b, double c, double d, double dt) {
  using namespace std::complex_literals;
  const double r = std::sqrt(a * a + b * b + c * c);
  const double theta = kTwoPi * dt * r;
  const Complex global = std::exp(Complex(0.0, -kTwoPi * dt * d));
  Mat2 out;
  if (r == 0.0) {
    out = Mat2::Identity();
  } else {
    const double cs = std::cos(theta);
    const double sn = std::sin(theta) / r;
    // cos I - i sin (n.sigma)
    out(0, 0) = Complex(cs, -sn * c);
    out(1, 1) = Complex(cs, sn * c);
    out(0, 1) = -1i * sn * Complex(a, -b);
    out(1, 0) = -1i * sn * Complex(a, b);
  }
  return global * out;
}

// Slice exponential of the drive Hamiltonian without building it.
Mat2 drive_slice(const DriveProtocol& p, double t, double dt) {
  const double half_nu = 0.5 * p.frequency_at(t);
  const double angle = std::numbers::pi * t / (2.0 * p.tau);
  return axis_angle(-half_nu * std::cos(angle), -half_nu * std::sin(angle),
                    0.0, 0.0, dt);
}

}  // namespace

void DriveProtocol::validate() const {
  std::ostringstream os;
  if (!(nu_i > 0.0) || !std::isfinite(nu_i))
    os << "nu_i must be > 0 (got " << nu_i << ")";
  else if (!(nu_f > 0.0) || !std::isfinite(nu_f))
    os << "nu_f must be > 0 (got " << nu_f << ")";
  else if (!(tau > 0.0) || !std::isfinite(tau))
    os << "tau must be > 0 (got " << tau << ")";
  else if (slices < 1)
    os << "slices must be >= 1";
  else
    return;
  throw InvalidInput("DriveProtocol: " + os.str());
}

double DriveProtocol::frequency_at(double t) const {
  const double s = t / tau;
  return nu_i * (1.0 - s) + nu_f * s;
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw InvalidInput("UnitaryOperator: expected a non-empty square matrix");
  const double err = unitarity_error();
  if (!(err <= kUnitaryTol)) {
    std::ostringstream os;
    os << "UnitaryOperator: U^dagger U deviates from identity by " << err;
    throw InvalidInput(os.str());
  }
}

UnitaryOperator UnitaryOperator::identity(Eigen::Index dim) {
  return UnitaryOperator(ComplexMatrix::Identity(dim, dim));
}

double UnitaryOperator::unitarity_error() const {
  const ComplexMatrix id = ComplexMatrix::Identity(dim(), dim());
  return max_abs_diff(m_.adjoint() * m_, id);
}

HermitianOperator drive_hamiltonian(double t, const DriveProtocol& p) {
  p.validate();
  if (!(t >= 0.0 && t <= p.tau)) {
    std::ostringstream os;
    os << "drive_hamiltonian: t = " << t << " outside [0, " << p.tau << "]";
    throw InvalidInput(os.str());
  }
  const double angle = std::numbers::pi * t / (2.0 * p.tau);
  const HermitianOperator axis = pauli(PauliAxis::X) * std::cos(angle) +
                                 pauli(PauliAxis::Y) * std::sin(angle);
  return axis * (-0.5 * p.frequency_at(t));
}

ComplexMatrix slice_exponential_spectral(const HermitianOperator& h,
                                         double dt) {
  const SpectralDecomposition spec = spectral_decompose(h);
  ComplexVector phases(spec.dim());
  for (Eigen::Index k = 0; k < spec.dim(); ++k)
    phases(k) = std::exp(Complex(0.0, -kTwoPi * dt * spec.eigenvalues(k)));
  return spec.eigenvectors * phases.asDiagonal() *
         spec.eigenvectors.adjoint();
}

ComplexMatrix slice_exponential(const HermitianOperator& h, double dt) {
  if (h.dim() != 2) return slice_exponential_spectral(h, dt);
  const ComplexMatrix& m = h.matrix();
  // Pauli coordinates of a Hermitian 2x2.
  const double d = 0.5 * (m(0, 0).real() + m(1, 1).real());
  const double c = 0.5 * (m(0, 0).real() - m(1, 1).real());
  const double a = m(1, 0).real();
  const double b = m(1, 0).imag();
  return axis_angle(a, b, c, d, dt);
}

UnitaryOperator slice_product(const DriveProtocol& p, std::size_t slices) {
  p.validate();
  if (slices < 1) throw InvalidInput("slice_product: slices must be >= 1");
  const double dt = p.tau / static_cast<double>(slices);
  Mat2 u = Mat2::Identity();
  for (std::size_t k = 0; k < slices; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * dt;
    u = drive_slice(p, mid, dt) * u;
  }
  return UnitaryOperator(ComplexMatrix(u));
}

PropagatorResult propagate(const DriveProtocol& p, double tolerance) {
  p.validate();
  if (!(tolerance > 0.0)) {
    std::ostringstream os;
    os << "propagator: tolerance must be > 0, got " << tolerance;
    throw InvalidInput(os.str());
  }
  std::size_t n = p.slices;
  UnitaryOperator previous = slice_product(p, n);
  double delta = std::numeric_limits<double>::infinity();
  for (int doubling = 0; doubling < kMaxDoublings; ++doubling) {
    n *= 2;
    UnitaryOperator current = slice_product(p, n);
    delta = max_abs_diff(current.matrix(), previous.matrix());
    if (delta < tolerance) return {std::move(current), n, delta};
    previous = std::move(current);
  }
  std::ostringstream os;
  os << "propagator: no convergence after " << kMaxDoublings
     << " doublings (last delta " << delta << ", tolerance " << tolerance
     << ")";
  throw ConvergenceError(os.str());
}

UnitaryOperator propagator(const DriveProtocol& p, double tolerance) {
  return propagate(p, tolerance).unitary;
}

DensityMatrix evolve(const DensityMatrix& rho, const UnitaryOperator& u) {
  if (rho.dim() != u.dim()) {
    std::ostringstream os;
    os << "evolve: state has dimension " << rho.dim() << " but unitary has "
       << u.dim();
    throw InvalidInput(os.str());
  }
  return DensityMatrix(
      hermitian_part(u.matrix() * rho.matrix() * u.matrix().adjoint()));
}

}  // namespace qthermo
