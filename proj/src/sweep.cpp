#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "qthermo/errors.hpp"
#include "qthermo/metrics.hpp"
#include "qthermo/sweep.hpp"

namespace qthermo {

namespace {

constexpr double kNonNegativeSlack = 1e-12;
constexpr double kRouteTol = 1e-8;
constexpr double kJarzynskiTol = 1e-10;
constexpr double kBoundSlack = 1e-10;

}  // namespace

ThermoRecord analyze_protocol(const DriveProtocol& protocol,
                              const ThermalSpec& thermal, double tolerance) {
  protocol.validate();
  const HermitianOperator h_i = drive_hamiltonian(0.0, protocol);
  const HermitianOperator h_f = drive_hamiltonian(protocol.tau, protocol);
  const DensityMatrix rho_i = gibbs_state(h_i, thermal);
  const DensityMatrix rho_f = gibbs_state(h_f, thermal);

  const PropagatorResult prop = propagate(protocol, tolerance);
  const DensityMatrix rho_tau = evolve(rho_i, prop.unitary);

  ThermoRecord r;
  r.slices = prop.slices;
  r.avg_work = average_work(rho_i, h_i, rho_tau, h_f);
  r.delta_f = free_energy_difference(h_i, h_f, thermal);
  const IrreversibleEntropy s = irreversible_entropy(rho_i, h_i, rho_tau, h_f,
                                                     thermal);
  r.s_irr_work_route = s.work_route;
  r.s_irr_relent_route = s.relent_route;
  const EntropyDecomposition parts =
      entropy_decomposition(rho_tau, h_f, thermal);
  r.coherence_term = parts.coherence_term;
  r.population_term = parts.population_term;
  r.fidelity = uhlmann_fidelity(rho_tau, rho_f);
  r.bures_length = bures_length_from_fidelity(r.fidelity);
  r.bound_value = clausius_bound(r.s_irr_relent_route, r.bures_length)
                      .bound_value;
  const WorkDistribution work =
      tpm_work_distribution(rho_i, h_i, h_f, prop.unitary);
  r.tpm_mean_work = work.mean();
  r.jarzynski_lhs = work.exponential_average(thermal.beta());
  r.jarzynski_rhs = std::exp(-thermal.beta() * r.delta_f);
  return r;
}

std::vector<std::string> check_invariants(const ThermoRecord& r) {
  std::vector<std::string> out;
  auto report = [&](const char* what, double value) {
    std::ostringstream os;
    os.precision(6);
    os << what << " (" << value << ")";
    out.push_back(os.str());
  };
  if (r.s_irr_relent_route < -kNonNegativeSlack)
    report("s_irr_relent negative", r.s_irr_relent_route);
  if (r.coherence_term < -kNonNegativeSlack)
    report("coherence negative", r.coherence_term);
  if (r.population_term < -kNonNegativeSlack)
    report("population term negative", r.population_term);
  if (const double d = std::abs(r.s_irr_work_route - r.s_irr_relent_route);
      !(d < kRouteTol))
    report("work and relative-entropy routes disagree", d);
  if (const double d = std::abs(r.coherence_term + r.population_term -
                                r.s_irr_relent_route);
      !(d < kRouteTol))
    report("decomposition does not sum to s_irr", d);
  if (!(r.s_irr_relent_route >= r.bound_value - kBoundSlack))
    report("Bures bound violated, margin",
           r.s_irr_relent_route - r.bound_value);
  if (const double d = std::abs(r.jarzynski_lhs - r.jarzynski_rhs);
      !(d < kJarzynskiTol))
    report("Jarzynski equality violated", d);
  return out;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads) {
  cfg.validate();
  const ThermalSpec thermal = ThermalSpec::from_temperature_hz(cfg.temperature_hz);
  std::vector<double> nu_f = cfg.nu_f_list;
  std::stable_sort(nu_f.begin(), nu_f.end());
  const std::vector<double> taus = cfg.tau_grid();

  std::vector<SweepRow> rows;
  rows.reserve(nu_f.size() * taus.size());
  for (const double f : nu_f)
    for (const double tau : taus) rows.push_back({f, tau, {}});

  std::vector<std::exception_ptr> errors(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) {
      SweepRow& row = rows[k];
      try {
        const DriveProtocol p{cfg.nu_i, row.nu_f, row.tau, cfg.slices};
        row.record = analyze_protocol(p, thermal, cfg.tolerance);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(rows.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!errors[k]) continue;
    std::ostringstream where;
    where << "grid point nu_f = " << rows[k].nu_f << " Hz, tau = "
          << rows[k].tau << " s: ";
    try {
      std::rethrow_exception(errors[k]);
    } catch (const InvalidInput& e) {
      throw InvalidInput(where.str() + e.what());
    } catch (const std::exception& e) {
      throw ConvergenceError(where.str() + e.what());
    }
  }
  return rows;
}

}  // namespace qthermo
