#pragma once

#include <span>
#include <vector>

#include "qthermo/drive.hpp"
#include "qthermo/hermitian.hpp"
#include "qthermo/thermal.hpp"

namespace qthermo {

// All entropies are in nats, energies and work in Hz.

double von_neumann_entropy(const DensityMatrix& rho);

/// D(rho || sigma) = tr rho ln rho - tr rho ln sigma. Throws InvalidInput if
/// rho carries more than 1e-8 weight on a clamped (numerically zero)
/// eigenvector of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Relative entropy of coherence in `basis`: S(dephase(rho)) - S(rho).
double coherence(const DensityMatrix& rho, const SpectralDecomposition& basis);

/// tr(rho_tau H_f) - tr(rho_i H_i).
double average_work(const DensityMatrix& rho_i, const HermitianOperator& h_i,
                    const DensityMatrix& rho_tau,
                    const HermitianOperator& h_f);

struct IrreversibleEntropy {
  double work_route;    // beta (<w> - dF)
  double relent_route;  // D(rho_tau || rho_f)
};

/// Both routes to the irreversible entropy of a unitary process started in
/// equilibrium. The work route only holds for a Gibbs start, so rho_i must
/// match gibbs_state(h_i, t) within 1e-8 per entry.
IrreversibleEntropy irreversible_entropy(const DensityMatrix& rho_i,
                                         const HermitianOperator& h_i,
                                         const DensityMatrix& rho_tau,
                                         const HermitianOperator& h_f,
                                         const ThermalSpec& t);

struct EntropyDecomposition {
  double coherence_term;
  double population_term;
};

/// Splits D(rho_tau || rho_f) into the coherence of rho_tau in the
/// eigenbasis of h_f and the relative entropy between the dephased state and
/// rho_f.
EntropyDecomposition entropy_decomposition(const DensityMatrix& rho_tau,
                                           const HermitianOperator& h_f,
                                           const ThermalSpec& t);

/// [tr sqrt(sqrt(rho1) rho2 sqrt(rho1))]^2, clamped to [0, 1].
double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// arccos sqrt(F), in [0, pi/2].
double bures_length(const DensityMatrix& rho1, const DensityMatrix& rho2);
double bures_length_from_fidelity(double fidelity);

struct ClausiusBound {
  double bound_value;  // 8 L^2 / pi^2
  bool satisfied;      // s_irr >= bound_value - 1e-10
  double margin;       // s_irr - bound_value
};

ClausiusBound clausius_bound(double s_irr, double bures_len);

/// arccos(sum_k sqrt(p_k q_k)) for two normalized distributions.
double wootters_length(std::span<const double> p, std::span<const double> q);

struct WorkOutcome {
  double work;  // Hz
  double probability;
};

struct WorkDistribution {
  std::vector<WorkOutcome> outcomes;  // ascending work

  double mean() const;
  /// <exp(-beta W)>
  double exponential_average(double beta) const;
};

/// Two-point-measurement work statistics: energy measured in the eigenbasis
/// of h_i, evolution by u, energy measured in the eigenbasis of h_f. Works
/// within 1e-9 Hz are merged. rho_i must be diagonal in the h_i eigenbasis
/// within 1e-8.
WorkDistribution tpm_work_distribution(const DensityMatrix& rho_i,
                                       const HermitianOperator& h_i,
                                       const HermitianOperator& h_f,
                                       const UnitaryOperator& u);

/// |tr(rho_e rho_t^dagger)| / sqrt(tr(rho_e rho_e^dagger) tr(rho_t rho_t^dagger)).
double overlap_fidelity(const DensityMatrix& rho_e, const DensityMatrix& rho_t);

}  // namespace qthermo
