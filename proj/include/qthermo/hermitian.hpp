#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace qthermo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdFloor = -1e-10;
// Eigenvalues with magnitude at or below this are treated as exact zeros by
// log and sqrt.
inline constexpr double kZeroClamp = 1e-12;
inline constexpr double kLogFloor = 1e-15;

/// Largest |A_ij - conj(A_ji)| over all entries.
double max_asymmetry(const ComplexMatrix& m);

/// (M + M^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Dense Hermitian matrix. Energies are in Hz (h = 1).
class HermitianOperator {
 public:
  /// Throws InvalidInput if `m` is not square or not Hermitian within
  /// kHermitianTol per entry.
  explicit HermitianOperator(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;

 private:
  ComplexMatrix m_;
};

/// Eigenvalues ascending, eigenvectors stored as the columns of a unitary.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }
  ComplexMatrix reconstruct() const;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity, trace within kTraceTol and eigenvalues above
  /// kPsdFloor. Throws InvalidInput naming the violated condition.
  explicit DensityMatrix(ComplexMatrix m);

  /// |psi><psi| for a normalized (or normalizable) state vector.
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  HermitianOperator as_operator() const { return HermitianOperator(m_); }
  double purity() const;

 private:
  ComplexMatrix m_;
};

/// Cyclic Jacobi diagonalization. Sweeps until the off-diagonal Frobenius
/// mass falls below 1e-14 (relative to the Frobenius norm once that exceeds
/// one).
SpectralDecomposition spectral_decompose(const HermitianOperator& op);

/// V diag(f(lambda)) V^dagger. Throws InvalidInput if f returns a non-finite
/// value on the spectrum.
HermitianOperator matrix_function(const HermitianOperator& op,
                                  const std::function<double(double)>& f);
HermitianOperator matrix_function(const SpectralDecomposition& spec,
                                  const std::function<double(double)>& f);

/// Natural log. Eigenvalues in [-kZeroClamp, kZeroClamp] become kLogFloor;
/// anything below kPsdFloor is rejected.
HermitianOperator matrix_log(const HermitianOperator& op);
/// Principal square root; near-zero eigenvalues are set to zero.
HermitianOperator matrix_sqrt(const HermitianOperator& op);
HermitianOperator matrix_exp(const HermitianOperator& op);

enum class PauliAxis { X, Y, Z };
HermitianOperator pauli(PauliAxis which);
HermitianOperator identity(Eigen::Index dim);

/// Max entry modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qthermo
