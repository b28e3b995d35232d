#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "qthermo/hermitian.hpp"

namespace qthermo::testing {

inline ComplexMatrix gaussian_matrix(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

inline HermitianOperator random_hermitian(Eigen::Index d, std::mt19937_64& rng,
                                          double scale = 1.0) {
  return HermitianOperator(hermitian_part(gaussian_matrix(d, rng)) * scale);
}

/// Full-rank mixed state G G^dagger / tr.
inline DensityMatrix random_density(Eigen::Index d, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian_matrix(d, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(hermitian_part(m));
}

inline ComplexVector random_vector(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = Complex(n(rng), n(rng));
  return v / v.norm();
}

/// Haar-ish unitary from the QR factor of a complex Gaussian matrix.
inline ComplexMatrix random_unitary(Eigen::Index d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(d, rng));
  return qr.householderQ() * ComplexMatrix::Identity(d, d);
}

inline ComplexVector basis_vector(Eigen::Index d, Eigen::Index k) {
  ComplexVector v = ComplexVector::Zero(d);
  v(k) = 1.0;
  return v;
}

}  // namespace qthermo::testing
