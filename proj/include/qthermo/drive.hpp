#pragma once

#include <cstddef>

#include "qthermo/hermitian.hpp"

namespace qthermo {

inline constexpr std::size_t kDefaultSlices = 256;
inline constexpr double kDefaultPropagatorTol = 1e-9;
inline constexpr int kMaxDoublings = 20;

/// Linear frequency ramp nu_i -> nu_f over tau seconds while the field axis
/// rotates from x to y:
///   H(t) = -nu(t)/2 [cos(pi t / 2 tau) sigma_x + sin(pi t / 2 tau) sigma_y].
struct DriveProtocol {
  double nu_i = 2000.0;  // Hz
  double nu_f = 3600.0;  // Hz
  double tau = 100e-6;   // s
  std::size_t slices = kDefaultSlices;

  /// Throws InvalidInput unless every field is positive.
  void validate() const;
  double frequency_at(double t) const;
};

class UnitaryOperator {
 public:
  /// Throws InvalidInput if U^dagger U deviates from I by more than 1e-10.
  explicit UnitaryOperator(ComplexMatrix m);
  static UnitaryOperator identity(Eigen::Index dim);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  /// Max entry modulus of U^dagger U - I.
  double unitarity_error() const;

 private:
  ComplexMatrix m_;
};

HermitianOperator drive_hamiltonian(double t, const DriveProtocol& p);

/// exp(-2 pi i H dt) for H in Hz and dt in seconds. 2x2 inputs use the
/// axis-angle closed form; larger ones go through the spectral route.
ComplexMatrix slice_exponential(const HermitianOperator& h, double dt);
/// Spectral route only, kept separate so the closed form can be checked.
ComplexMatrix slice_exponential_spectral(const HermitianOperator& h,
                                         double dt);

/// Time-ordered midpoint product over exactly `slices` equal slices,
/// latest slice leftmost.
UnitaryOperator slice_product(const DriveProtocol& p, std::size_t slices);

struct PropagatorResult {
  UnitaryOperator unitary;
  std::size_t slices;  // slice count of the returned product
  double last_delta;   // max entry change against half as many slices
};

/// Doubles the slice count from p.slices until two successive products
/// differ by less than `tolerance` in max entry modulus. Throws
/// ConvergenceError after kMaxDoublings doublings.
PropagatorResult propagate(const DriveProtocol& p,
                           double tolerance = kDefaultPropagatorTol);
UnitaryOperator propagator(const DriveProtocol& p,
                           double tolerance = kDefaultPropagatorTol);

/// U rho U^dagger.
DensityMatrix evolve(const DensityMatrix& rho, const UnitaryOperator& u);

}  // namespace qthermo
