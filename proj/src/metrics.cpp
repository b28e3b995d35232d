#include "qthermo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

constexpr double kSupportTol = 1e-8;
constexpr double kGibbsStartTol = 1e-8;
constexpr double kTpmCoherenceTol = 1e-8;
constexpr double kWorkMergeTol = 1e-9;
constexpr double kClausiusSlack = 1e-10;

// sum lambda ln lambda with 0 ln 0 = 0.
double neg_entropy(const RealVector& spectrum) {
  double acc = 0.0;
  for (const double x : spectrum)
    if (x > kZeroClamp) acc += x * std::log(x);
  return acc;
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw InvalidInput(os.str());
  }
}

double expectation(const DensityMatrix& rho, const HermitianOperator& h) {
  return (rho.matrix() * h.matrix()).trace().real();
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  const double s =
      -neg_entropy(spectral_decompose(rho.as_operator()).eigenvalues);
  return std::max(0.0, s);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "relative_entropy");
  const SpectralDecomposition sig = spectral_decompose(sigma.as_operator());
  const RealVector weights = populations(rho, sig);
  double cross = 0.0;  // tr rho ln sigma
  for (Eigen::Index k = 0; k < sig.dim(); ++k) {
    const double s = sig.eigenvalues(k);
    if (s <= kZeroClamp && weights(k) > kSupportTol) {
      std::ostringstream os;
      os << "relative_entropy: rho has weight " << weights(k)
         << " outside the support of sigma (eigenvalue " << s << ")";
      throw InvalidInput(os.str());
    }
    cross += weights(k) * std::log(s <= kZeroClamp ? kLogFloor : s);
  }
  const double self =
      neg_entropy(spectral_decompose(rho.as_operator()).eigenvalues);
  return self - cross;
}

double coherence(const DensityMatrix& rho, const SpectralDecomposition& basis) {
  return von_neumann_entropy(dephase(rho, basis)) - von_neumann_entropy(rho);
}

double average_work(const DensityMatrix& rho_i, const HermitianOperator& h_i,
                    const DensityMatrix& rho_tau,
                    const HermitianOperator& h_f) {
  require_same_dim(rho_i.dim(), h_i.dim(), "average_work");
  require_same_dim(rho_tau.dim(), h_f.dim(), "average_work");
  return expectation(rho_tau, h_f) - expectation(rho_i, h_i);
}

IrreversibleEntropy irreversible_entropy(const DensityMatrix& rho_i,
                                         const HermitianOperator& h_i,
                                         const DensityMatrix& rho_tau,
                                         const HermitianOperator& h_f,
                                         const ThermalSpec& t) {
  require_same_dim(rho_i.dim(), h_i.dim(), "irreversible_entropy");
  require_same_dim(rho_tau.dim(), h_f.dim(), "irreversible_entropy");
  const DensityMatrix reference = gibbs_state(h_i, t);
  const double deviation = max_abs_diff(rho_i.matrix(), reference.matrix());
  if (deviation > kGibbsStartTol) {
    std::ostringstream os;
    os << "irreversible_entropy: initial state deviates from the Gibbs state "
          "of H_i by "
       << deviation << " (max entry)";
    throw InvalidInput(os.str());
  }
  const double work = average_work(rho_i, h_i, rho_tau, h_f);
  const double delta_f = free_energy_difference(h_i, h_f, t);
  const DensityMatrix rho_f = gibbs_state(h_f, t);
  return {t.beta() * (work - delta_f), relative_entropy(rho_tau, rho_f)};
}

EntropyDecomposition entropy_decomposition(const DensityMatrix& rho_tau,
                                           const HermitianOperator& h_f,
                                           const ThermalSpec& t) {
  require_same_dim(rho_tau.dim(), h_f.dim(), "entropy_decomposition");
  const SpectralDecomposition basis = spectral_decompose(h_f);
  const DensityMatrix rho_f = gibbs_state(h_f, t);
  return {coherence(rho_tau, basis),
          relative_entropy(dephase(rho_tau, basis), rho_f)};
}

double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_dim(rho1.dim(), rho2.dim(), "uhlmann_fidelity");
  const ComplexMatrix root = matrix_sqrt(rho1.as_operator()).matrix();
  const HermitianOperator inner(
      hermitian_part(root * rho2.matrix() * root));
  double trace = 0.0;
  for (const double x : spectral_decompose(inner).eigenvalues)
    if (x > kZeroClamp) trace += std::sqrt(x);
  return std::clamp(trace * trace, 0.0, 1.0);
}

double bures_length_from_fidelity(double fidelity) {
  return std::acos(std::clamp(std::sqrt(std::max(fidelity, 0.0)), 0.0, 1.0));
}

double bures_length(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return bures_length_from_fidelity(uhlmann_fidelity(rho1, rho2));
}

ClausiusBound clausius_bound(double s_irr, double bures_len) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  const double bound = 8.0 * bures_len * bures_len / pi2;
  return {bound, s_irr >= bound - kClausiusSlack, s_irr - bound};
}

double wootters_length(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    std::ostringstream os;
    os << "wootters_length: distributions have sizes " << p.size() << " and "
       << q.size();
    throw InvalidInput(os.str());
  }
  auto check = [](std::span<const double> d, const char* name) {
    double total = 0.0;
    for (const double x : d) {
      if (!(x >= 0.0)) {
        std::ostringstream os;
        os << "wootters_length: " << name << " has negative entry " << x;
        throw InvalidInput(os.str());
      }
      total += x;
    }
    if (std::abs(total - 1.0) > kTraceTol) {
      std::ostringstream os;
      os << "wootters_length: " << name << " sums to " << total;
      throw InvalidInput(os.str());
    }
  };
  check(p, "p");
  check(q, "q");
  double overlap = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) overlap += std::sqrt(p[k] * q[k]);
  return std::acos(std::clamp(overlap, 0.0, 1.0));
}

double WorkDistribution::mean() const {
  double acc = 0.0;
  for (const auto& o : outcomes) acc += o.work * o.probability;
  return acc;
}

double WorkDistribution::exponential_average(double beta) const {
  double acc = 0.0;
  for (const auto& o : outcomes) acc += o.probability * std::exp(-beta * o.work);
  return acc;
}

WorkDistribution tpm_work_distribution(const DensityMatrix& rho_i,
                                       const HermitianOperator& h_i,
                                       const HermitianOperator& h_f,
                                       const UnitaryOperator& u) {
  require_same_dim(rho_i.dim(), h_i.dim(), "tpm_work_distribution");
  require_same_dim(h_i.dim(), h_f.dim(), "tpm_work_distribution");
  require_same_dim(h_i.dim(), u.dim(), "tpm_work_distribution");

  const SpectralDecomposition initial = spectral_decompose(h_i);
  const SpectralDecomposition final_basis = spectral_decompose(h_f);
  const ComplexMatrix in_basis =
      initial.eigenvectors.adjoint() * rho_i.matrix() * initial.eigenvectors;
  const double coh =
      (in_basis - ComplexMatrix(in_basis.diagonal().asDiagonal()))
          .cwiseAbs()
          .maxCoeff();
  if (coh > kTpmCoherenceTol) {
    std::ostringstream os;
    os << "tpm_work_distribution: initial state has coherence " << coh
       << " in the H_i eigenbasis";
    throw InvalidInput(os.str());
  }

  // amplitudes(j, k) = <f_j| U |i_k>
  const ComplexMatrix amplitudes =
      final_basis.eigenvectors.adjoint() * u.matrix() * initial.eigenvectors;
  const Eigen::Index n = h_i.dim();
  std::vector<WorkOutcome> raw;
  raw.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double p_k = in_basis(k, k).real();
    for (Eigen::Index j = 0; j < n; ++j)
      raw.push_back({final_basis.eigenvalues(j) - initial.eigenvalues(k),
                     p_k * std::norm(amplitudes(j, k))});
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const WorkOutcome& a, const WorkOutcome& b) {
                     return a.work < b.work;
                   });

  WorkDistribution dist;
  double anchor = 0.0;
  for (const auto& o : raw) {
    if (!dist.outcomes.empty() && o.work - anchor <= kWorkMergeTol) {
      dist.outcomes.back().probability += o.probability;
    } else {
      anchor = o.work;
      dist.outcomes.push_back(o);
    }
  }
  return dist;
}

double overlap_fidelity(const DensityMatrix& rho_e,
                        const DensityMatrix& rho_t) {
  require_same_dim(rho_e.dim(), rho_t.dim(), "overlap_fidelity");
  const ComplexMatrix& e = rho_e.matrix();
  const ComplexMatrix& t = rho_t.matrix();
  const double num = std::abs((e * t.adjoint()).trace());
  const double den = std::sqrt((e * e.adjoint()).trace().real() *
                               (t * t.adjoint()).trace().real());
  return std::clamp(num / den, 0.0, 1.0);
}

}  // namespace qthermo
