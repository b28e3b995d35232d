#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "qthermo/errors.hpp"
#include "qthermo/sweep.hpp"

namespace qthermo {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string sig12(double v) { return fmt("%.12g", v); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

struct Series {
  const char* id;
  const char* label;
  const char* colour;
  double (*value)(const ThermoRecord&);
};

constexpr std::array<Series, 3> kSeries{{
    {"s_irr", "entropy production", "#1f4e9c",
     [](const ThermoRecord& r) { return r.s_irr_relent_route; }},
    {"coherence", "coherence", "#c0392b",
     [](const ThermoRecord& r) { return r.coherence_term; }},
    {"bound", "8 L^2 / pi^2", "#2e8b57",
     [](const ThermoRecord& r) { return r.bound_value; }},
}};

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 190, kTop = 50, kBottom = 70;

}  // namespace

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& row : rows) {
    const ThermoRecord& r = row.record;
    const std::array<double, 12> fields{
        row.nu_f,           row.tau,
        r.avg_work,         r.delta_f,
        r.s_irr_work_route, r.s_irr_relent_route,
        r.coherence_term,   r.population_term,
        r.bures_length,     r.bound_value,
        r.jarzynski_lhs,    r.jarzynski_rhs};
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k) out += ',';
      out += sig12(fields[k]);
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<SweepRow>& rows,
              const std::filesystem::path& path) {
  if (rows.empty()) throw InvalidInput("emit_csv: no rows");
  write_file(path, format_csv(rows));
}

std::filesystem::path plot_path_for(const std::filesystem::path& base,
                                    double nu_f) {
  std::filesystem::path out = base;
  std::string ext = base.extension().string();
  if (ext.empty()) ext = ".svg";
  out.replace_filename(base.stem().string() + "_nu" + fmt("%g", nu_f) + ext);
  return out;
}

std::string render_svg(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw InvalidInput("render_svg: no rows");
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double tau_lo = rows.front().tau, tau_hi = rows.front().tau, s_max = 0.0;
  for (const auto& row : rows) {
    tau_lo = std::min(tau_lo, row.tau);
    tau_hi = std::max(tau_hi, row.tau);
    s_max = std::max(s_max, row.record.s_irr_relent_route);
  }
  if (tau_hi == tau_lo) {
    tau_lo *= 0.5;
    tau_hi *= 1.5;
  }
  const double y_max = s_max > 0.0 ? 1.05 * s_max : 1.0;
  auto sx = [&](double tau) {
    return kLeft + (tau - tau_lo) / (tau_hi - tau_lo) * plot_w;
  };
  auto sy = [&](double v) { return kTop + plot_h * (1.0 - v / y_max); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fmt("%.0f", kWidth) + "\" height=\"" + fmt("%.0f", kHeight) +
         "\" viewBox=\"0 0 " + fmt("%.0f", kWidth) + " " +
         fmt("%.0f", kHeight) + "\" font-family=\"sans-serif\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt("%.1f", kLeft + plot_w / 2) +
         "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">nu_f = " +
         fmt("%g", rows.front().nu_f) + " Hz</text>\n";

  // Axes
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + fmt("%.3f", kLeft) + "\" y1=\"" +
         fmt("%.3f", kTop + plot_h) + "\" x2=\"" + fmt("%.3f", kLeft + plot_w) +
         "\" y2=\"" + fmt("%.3f", kTop + plot_h) + "\"/>\n";
  svg += "<line x1=\"" + fmt("%.3f", kLeft) + "\" y1=\"" + fmt("%.3f", kTop) +
         "\" x2=\"" + fmt("%.3f", kLeft) + "\" y2=\"" +
         fmt("%.3f", kTop + plot_h) + "\"/>\n";
  svg += "</g>\n";

  constexpr int kTicks = 5;
  svg += "<g font-size=\"11\">\n";
  for (int k = 0; k <= kTicks; ++k) {
    const double tau = tau_lo + (tau_hi - tau_lo) * k / kTicks;
    const double x = sx(tau);
    svg += "<line x1=\"" + fmt("%.3f", x) + "\" y1=\"" +
           fmt("%.3f", kTop + plot_h) + "\" x2=\"" + fmt("%.3f", x) +
           "\" y2=\"" + fmt("%.3f", kTop + plot_h + 5) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt("%.3f", x) + "\" y=\"" +
           fmt("%.3f", kTop + plot_h + 20) + "\" text-anchor=\"middle\">" +
           fmt("%.4g", tau * 1e6) + "</text>\n";
    const double v = y_max * k / kTicks;
    const double y = sy(v);
    svg += "<line x1=\"" + fmt("%.3f", kLeft - 5) + "\" y1=\"" +
           fmt("%.3f", y) + "\" x2=\"" + fmt("%.3f", kLeft) + "\" y2=\"" +
           fmt("%.3f", y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt("%.3f", kLeft - 8) + "\" y=\"" +
           fmt("%.3f", y + 4) + "\" text-anchor=\"end\">" + fmt("%.3g", v) +
           "</text>\n";
  }
  svg += "</g>\n";
  svg += "<text x=\"" + fmt("%.1f", kLeft + plot_w / 2) + "\" y=\"" +
         fmt("%.1f", kHeight - 20) +
         "\" text-anchor=\"middle\" font-size=\"13\">driving time tau "
         "(us)</text>\n";
  svg += "<text x=\"20\" y=\"" + fmt("%.1f", kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 "
         "20 " +
         fmt("%.1f", kTop + plot_h / 2) + ")\">entropy (nats)</text>\n";

  for (const Series& s : kSeries) {
    svg += "<polyline class=\"series\" data-series=\"" + std::string(s.id) +
           "\" fill=\"none\" stroke=\"" + s.colour +
           "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k) svg += ' ';
      svg += fmt("%.3f", sx(rows[k].tau)) + "," +
             fmt("%.3f", sy(s.value(rows[k].record)));
    }
    svg += "\"/>\n";
    for (const auto& row : rows)
      svg += "<circle cx=\"" + fmt("%.3f", sx(row.tau)) + "\" cy=\"" +
             fmt("%.3f", sy(s.value(row.record))) + "\" r=\"3\" fill=\"" +
             s.colour + "\"/>\n";
  }

  const double lx = kLeft + plot_w + 20;
  double ly = kTop + 10;
  svg += "<g font-size=\"12\">\n";
  for (const Series& s : kSeries) {
    svg += "<line x1=\"" + fmt("%.1f", lx) + "\" y1=\"" + fmt("%.1f", ly) +
           "\" x2=\"" + fmt("%.1f", lx + 24) + "\" y2=\"" + fmt("%.1f", ly) +
           "\" stroke=\"" + s.colour + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt("%.1f", lx + 30) + "\" y=\"" +
           fmt("%.1f", ly + 4) + "\">" + s.label + "</text>\n";
    ly += 22;
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

std::vector<std::filesystem::path> emit_svg_plot(
    const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw InvalidInput("emit_svg_plot: no rows");
  std::map<double, std::vector<SweepRow>> by_nu;
  for (const auto& row : rows) by_nu[row.nu_f].push_back(row);
  std::vector<std::filesystem::path> written;
  for (auto& [nu, group] : by_nu) {
    std::stable_sort(group.begin(), group.end(),
                     [](const SweepRow& a, const SweepRow& b) {
                       return a.tau < b.tau;
                     });
    const auto target = plot_path_for(path, nu);
    write_file(target, render_svg(group));
    written.push_back(target);
  }
  return written;
}

}  // namespace qthermo
