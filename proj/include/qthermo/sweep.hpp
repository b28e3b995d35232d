#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qthermo/drive.hpp"
#include "qthermo/thermal.hpp"

namespace qthermo {

/// Every thermodynamic quantity for one driven process. Energies in Hz,
/// entropies in nats, lengths in radians.
struct ThermoRecord {
  double avg_work = 0.0;
  double delta_f = 0.0;
  double s_irr_work_route = 0.0;
  double s_irr_relent_route = 0.0;
  double coherence_term = 0.0;
  double population_term = 0.0;
  double bures_length = 0.0;
  double bound_value = 0.0;
  double jarzynski_lhs = 0.0;
  double jarzynski_rhs = 0.0;
  double fidelity = 1.0;   // Uhlmann fidelity of rho_tau and rho_f
  double tpm_mean_work = 0.0;
  std::size_t slices = 0;  // converged propagator slice count
};

/// Drives the Gibbs state of -nu_i/2 sigma_x at `thermal` with `protocol`
/// and evaluates the full record against rho_f = gibbs(H(nu_f), thermal).
ThermoRecord analyze_protocol(const DriveProtocol& protocol,
                              const ThermalSpec& thermal,
                              double tolerance = kDefaultPropagatorTol);

/// Human-readable list of violated record invariants; empty when all hold.
std::vector<std::string> check_invariants(const ThermoRecord& r);

struct SweepConfig {
  double temperature_hz = 1580.2;
  double nu_i = 2000.0;
  std::vector<double> nu_f_list{3600.0, 5000.0};
  double tau_start = 100e-6;
  double tau_end = 800e-6;
  std::size_t tau_steps = 8;
  std::size_t slices = kDefaultSlices;
  double tolerance = kDefaultPropagatorTol;
  std::filesystem::path output_path = "sweep.csv";
  std::optional<std::filesystem::path> plot_path;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  /// Inclusive, evenly spaced.
  std::vector<double> tau_grid() const;
};

/// (key, value) pair as given on the command line, key without leading
/// dashes; '-' and '_' are interchangeable.
using ConfigOverride = std::pair<std::string, std::string>;

/// Parses `key = value` lines (with '#' comments) from `file_text`, then
/// applies `overrides` on top. Unset keys keep their defaults. Throws
/// ConfigError naming the key and its line or flag.
SweepConfig parse_config(std::string_view file_text,
                         const std::vector<ConfigOverride>& overrides = {});

struct SweepRow {
  double nu_f = 0.0;
  double tau = 0.0;
  ThermoRecord record;
};

/// One row per (nu_f, tau), ordered by nu_f then tau ascending. Grid points
/// are evaluated concurrently when `threads` != 1 (0 picks the hardware
/// concurrency); the result does not depend on it.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads = 0);

inline constexpr std::string_view kCsvHeader =
    "nu_f_hz,tau_s,avg_work_hz,delta_f_hz,s_irr_work,s_irr_relent,coherence,"
    "population,bures_length,bound,jarzynski_lhs,jarzynski_rhs";

std::string format_csv(const std::vector<SweepRow>& rows);
void emit_csv(const std::vector<SweepRow>& rows,
              const std::filesystem::path& path);

/// `base` with "_nu<nu_f>" inserted before the extension.
std::filesystem::path plot_path_for(const std::filesystem::path& base,
                                    double nu_f);
/// SVG document for the rows of a single nu_f.
std::string render_svg(const std::vector<SweepRow>& rows);
/// Writes one SVG per distinct nu_f; returns the paths written.
std::vector<std::filesystem::path> emit_svg_plot(
    const std::vector<SweepRow>& rows, const std::filesystem::path& path);

}  // namespace qthermo
