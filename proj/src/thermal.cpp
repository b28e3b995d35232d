#include "qthermo/thermal.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

// Boltzmann weights shifted by the ground energy so large beta*E cannot
// overflow; returns the weights and the shift.
RealVector shifted_weights(const RealVector& energies, double beta,
                           double& shift) {
  shift = energies.minCoeff();
  RealVector w(energies.size());
  for (Eigen::Index k = 0; k < energies.size(); ++k)
    w(k) = std::exp(-beta * (energies(k) - shift));
  return w;
}

double log_partition(const HermitianOperator& h, double beta) {
  const RealVector energies = spectral_decompose(h).eigenvalues;
  double shift = 0.0;
  const RealVector w = shifted_weights(energies, beta, shift);
  return std::log(w.sum()) - beta * shift;
}

}  // namespace

ThermalSpec::ThermalSpec(double beta) : beta_(beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    std::ostringstream os;
    os << "ThermalSpec: beta must be finite and >= 0, got " << beta;
    throw InvalidInput(os.str());
  }
}

ThermalSpec ThermalSpec::from_temperature_hz(double temperature_hz) {
  if (!(temperature_hz > 0.0)) {
    std::ostringstream os;
    os << "ThermalSpec: temperature_hz must be > 0, got " << temperature_hz;
    throw InvalidInput(os.str());
  }
  return ThermalSpec(1.0 / temperature_hz);
}

double ThermalSpec::temperature_hz() const {
  return beta_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / beta_;
}

double partition_function(const HermitianOperator& h, const ThermalSpec& t) {
  return std::exp(log_partition(h, t.beta()));
}

DensityMatrix gibbs_state(const HermitianOperator& h, const ThermalSpec& t) {
  const SpectralDecomposition spec = spectral_decompose(h);
  double shift = 0.0;
  RealVector w = shifted_weights(spec.eigenvalues, t.beta(), shift);
  w /= w.sum();
  const ComplexMatrix& v = spec.eigenvectors;
  return DensityMatrix(
      hermitian_part(v * w.cast<Complex>().asDiagonal() * v.adjoint()));
}

double free_energy_difference(const HermitianOperator& h_i,
                              const HermitianOperator& h_f,
                              const ThermalSpec& t) {
  if (t.beta() == 0.0)
    throw InvalidInput(
        "free_energy_difference: undefined at infinite temperature (beta = 0)");
  return -(log_partition(h_f, t.beta()) - log_partition(h_i, t.beta())) /
         t.beta();
}

ThermalSpec effective_temperature(double p0, double p1, double nu) {
  if (!(p0 > 0.0) || !(p1 > 0.0)) {
    std::ostringstream os;
    os << "effective_temperature: populations must be positive (p0 = " << p0
       << ", p1 = " << p1 << ")";
    throw InvalidInput(os.str());
  }
  if (std::abs(p0 + p1 - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "effective_temperature: p0 + p1 = " << p0 + p1 << ", expected 1";
    throw InvalidInput(os.str());
  }
  if (!(nu > 0.0)) {
    std::ostringstream os;
    os << "effective_temperature: nu must be > 0, got " << nu;
    throw InvalidInput(os.str());
  }
  const double beta = std::log(p0 / p1) / nu;
  if (beta < 0.0)
    throw InvalidInput(
        "effective_temperature: population inversion (p1 > p0) gives a "
        "negative temperature");
  return ThermalSpec(beta);
}

RealVector populations(const DensityMatrix& rho,
                       const SpectralDecomposition& basis) {
  if (rho.dim() != basis.dim())
    throw InvalidInput("populations: dimension mismatch");
  const ComplexMatrix& v = basis.eigenvectors;
  return (v.adjoint() * rho.matrix() * v).diagonal().real();
}

DensityMatrix dephase(const DensityMatrix& rho,
                      const SpectralDecomposition& basis) {
  const RealVector p = populations(rho, basis);
  const ComplexMatrix& v = basis.eigenvectors;
  return DensityMatrix(
      hermitian_part(v * p.cast<Complex>().asDiagonal() * v.adjoint()));
}

}  // namespace qthermo
