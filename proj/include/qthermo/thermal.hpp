#pragma once

#include "qthermo/hermitian.hpp"

namespace qthermo {

/// Inverse temperature in 1/Hz. beta = 0 is the infinite-temperature limit.
class ThermalSpec {
 public:
  /// Throws InvalidInput if beta is negative or not finite.
  explicit ThermalSpec(double beta);
  /// (beta h)^-1 in Hz; must be positive.
  static ThermalSpec from_temperature_hz(double temperature_hz);

  double beta() const { return beta_; }
  /// Infinite when beta = 0.
  double temperature_hz() const;

 private:
  double beta_;
};

double partition_function(const HermitianOperator& h, const ThermalSpec& t);

/// exp(-beta H) / Z, built in the eigenbasis of H.
DensityMatrix gibbs_state(const HermitianOperator& h, const ThermalSpec& t);

/// -ln(Z_f / Z_i) / beta at a common beta. Rejects beta = 0.
double free_energy_difference(const HermitianOperator& h_i,
                              const HermitianOperator& h_f,
                              const ThermalSpec& t);

/// Spin temperature of a two-level population pair split by nu:
/// beta = ln(p0 / p1) / nu.
ThermalSpec effective_temperature(double p0, double p1, double nu);

/// Removes every coherence in `basis`: sum_k |k><k| rho |k><k|.
DensityMatrix dephase(const DensityMatrix& rho,
                      const SpectralDecomposition& basis);

/// Diagonal of V^dagger rho V, i.e. the populations of rho in `basis`.
RealVector populations(const DensityMatrix& rho,
                       const SpectralDecomposition& basis);

}  // namespace qthermo
