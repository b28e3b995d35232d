#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "qthermo/errors.hpp"
#include "qthermo/sweep.hpp"

namespace qthermo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
  std::string out(trim(key));
  while (!out.empty() && out.front() == '-') out.erase(out.begin());
  std::replace(out.begin(), out.end(), '-', '_');
  if (out == "nu_f_list") return "nu_f";
  if (out == "output_path" || out == "output") return "out";
  if (out == "plot_path") return "plot";
  return out;
}

[[noreturn]] void fail(const std::string& key, const std::string& where,
                       const std::string& why) {
  throw ConfigError(key + ": " + why + " (" + where + ")");
}

double parse_real(const std::string& key, std::string_view text,
                  const std::string& where) {
  const std::string s(trim(text));
  if (s.empty()) fail(key, where, "missing value");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    fail(key, where, "malformed number '" + s + "'");
  return v;
}

double parse_positive(const std::string& key, std::string_view text,
                      const std::string& where) {
  const double v = parse_real(key, text, where);
  if (!(v > 0.0)) fail(key, where, "must be > 0");
  return v;
}

std::size_t parse_count(const std::string& key, std::string_view text,
                        const std::string& where) {
  const std::string_view s = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    fail(key, where, "malformed integer '" + std::string(s) + "'");
  if (v < 1) fail(key, where, "must be >= 1");
  return static_cast<std::size_t>(v);
}

std::vector<double> parse_list(const std::string& key, std::string_view text,
                               const std::string& where) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_positive(key, rest.substr(0, comma), where));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

void apply(SweepConfig& cfg, const std::string& key, std::string_view value,
           const std::string& where) {
  if (key == "temperature_hz")
    cfg.temperature_hz = parse_positive(key, value, where);
  else if (key == "nu_i")
    cfg.nu_i = parse_positive(key, value, where);
  else if (key == "nu_f")
    cfg.nu_f_list = parse_list(key, value, where);
  else if (key == "tau_start")
    cfg.tau_start = parse_positive(key, value, where);
  else if (key == "tau_end")
    cfg.tau_end = parse_positive(key, value, where);
  else if (key == "tau_steps")
    cfg.tau_steps = parse_count(key, value, where);
  else if (key == "slices")
    cfg.slices = parse_count(key, value, where);
  else if (key == "tolerance")
    cfg.tolerance = parse_positive(key, value, where);
  else if (key == "out") {
    const std::string_view v = trim(value);
    if (v.empty()) fail(key, where, "missing value");
    cfg.output_path = std::string(v);
  } else if (key == "plot") {
    const std::string_view v = trim(value);
    if (v.empty()) fail(key, where, "missing value");
    cfg.plot_path = std::string(v);
  } else {
    fail(key, where, "unknown key");
  }
}

}  // namespace

void SweepConfig::validate() const {
  auto bad = [](const std::string& key, const std::string& why) {
    throw ConfigError(key + ": " + why);
  };
  if (!(temperature_hz > 0.0)) bad("temperature_hz", "must be > 0");
  if (!(nu_i > 0.0)) bad("nu_i", "must be > 0");
  if (nu_f_list.empty()) bad("nu_f", "needs at least one value");
  for (const double v : nu_f_list)
    if (!(v > 0.0)) bad("nu_f", "every value must be > 0");
  if (!(tau_start > 0.0)) bad("tau_start", "must be > 0");
  if (!(tau_end > 0.0)) bad("tau_end", "must be > 0");
  if (tau_start > tau_end) bad("tau_start", "must not exceed tau_end");
  if (tau_steps < 1) bad("tau_steps", "must be >= 1");
  if (slices < 1) bad("slices", "must be >= 1");
  if (!(tolerance > 0.0)) bad("tolerance", "must be > 0");
}

std::vector<double> SweepConfig::tau_grid() const {
  std::vector<double> grid(tau_steps);
  if (tau_steps == 1) {
    grid[0] = tau_start;
    return grid;
  }
  const double step =
      (tau_end - tau_start) / static_cast<double>(tau_steps - 1);
  for (std::size_t k = 0; k < tau_steps; ++k)
    grid[k] = tau_start + step * static_cast<double>(k);
  grid.back() = tau_end;
  return grid;
}

SweepConfig parse_config(std::string_view file_text,
                         const std::vector<ConfigOverride>& overrides) {
  SweepConfig cfg;
  std::size_t line_no = 0;
  while (!file_text.empty()) {
    ++line_no;
    const auto nl = file_text.find('\n');
    std::string_view line = file_text.substr(0, nl);
    file_text = nl == std::string_view::npos ? std::string_view{}
                                             : file_text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected 'key = value' (" + where + ")");
    apply(cfg, normalize_key(line.substr(0, eq)), line.substr(eq + 1), where);
  }
  for (const auto& [key, value] : overrides) {
    const std::string k = normalize_key(key);
    std::string flag = k;
    std::replace(flag.begin(), flag.end(), '_', '-');
    apply(cfg, k, value, "flag --" + flag);
  }
  cfg.validate();
  return cfg;
}

}  // namespace qthermo
