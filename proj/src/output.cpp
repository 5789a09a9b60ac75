#include "scsim/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace scsim {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round step (1, 2 or 5 times a power of ten) giving about `target` ticks.
double nice_step(double span, int target) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double nice = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return nice * mag;
}

std::string tick_label(double v, double step) {
  const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step)));
  return fixed(v, std::min(decimals, 6));
}

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

const char* policy_name(PolicyKind kind) { return kind == PolicyKind::Greedy ? "greedy" : "sustainable"; }

std::string metrics_csv(const std::vector<const MetricsReport*>& runs) {
  std::string out(kMetricsHeader);
  out += '\n';
  for (const MetricsReport* r : runs) {
    for (const EpochMetrics& e : r->epochs) {
      out += format_number(e.epoch_start_s) + ',' + std::to_string(e.offered) + ',' + std::to_string(e.scs_served) +
             ',' + std::to_string(e.mbs_served) + ',' + format_number(e.hit_rate) + ',' +
             format_number(e.mean_power) + ',' + format_number(e.mean_battery) + ',' +
             format_number(e.outage_energy) + ',' + format_number(e.overflow_energy) + ',' +
             format_number(e.continuity_rate) + ',' + std::to_string(e.pushes) + ',' + std::to_string(e.defers) +
             '\n';
    }
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out(kSummaryHeader);
  out += '\n';
  for (const SummaryRow& row : rows) {
    const MetricsReport& r = *row.report;
    out += row.run_id + ',' + policy_name(r.policy) + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.cache_capacity) + ',' + std::to_string(r.offered) + ',' + std::to_string(r.scs_served) +
           ',' + std::to_string(r.mbs_served) + ',' + format_number(r.normalized_offload()) + ',' +
           format_number(r.offload_mbps_per_cell()) + ',' + format_number(r.hit_rate()) + ',' +
           format_number(r.outage_energy) + ',' + format_number(r.overflow_energy) + ',' +
           format_number(r.continuity_rate()) + ',' + std::to_string(r.pushes) + ',' + std::to_string(r.defers) + ',' +
           (row.capacity_ratio ? format_number(*row.capacity_ratio) : std::string()) + '\n';
  }
  return out;
}

std::string render_svg(const Plot& plot) {
  constexpr double width = 640, height = 420;
  constexpr double left = 70, right = 20, top = 40, bottom = 60;
  const double pw = width - left - right;
  const double ph = height - top - bottom;

  double x_min = 0, x_max = 1, y_max = 0;
  bool first = true;
  for (const PlotSeries& s : plot.series) {
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (first) {
        x_min = x_max = x;
        first = false;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_max = std::max(y_max, y);
    }
  }
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  const double y_step = nice_step(y_max > 0 ? y_max : 1.0, 5);
  const double y_top = y_max > 0 ? std::ceil(y_max / y_step) * y_step : 1.0;
  const double x_step = nice_step(x_max - x_min, 6);

  auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  auto sy = [&](double y) { return top + ph - y / y_top * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\"" << fixed(height, 0)
    << "\" viewBox=\"0 0 " << fixed(width, 0) << ' ' << fixed(height, 0) << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << fixed(width / 2, 1) << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"15\">"
    << escape_xml(plot.title) << "</text>\n";
  o << "<g stroke=\"black\" stroke-width=\"1\">\n";
  o << "<line x1=\"" << fixed(left, 1) << "\" y1=\"" << fixed(top + ph, 1) << "\" x2=\"" << fixed(left + pw, 1)
    << "\" y2=\"" << fixed(top + ph, 1) << "\"/>\n";
  o << "<line x1=\"" << fixed(left, 1) << "\" y1=\"" << fixed(top, 1) << "\" x2=\"" << fixed(left, 1) << "\" y2=\""
    << fixed(top + ph, 1) << "\"/>\n";
  o << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double y = 0.0; y <= y_top + 1e-9 * y_top; y += y_step) {
    o << "<line x1=\"" << fixed(left - 4, 1) << "\" y1=\"" << fixed(sy(y), 1) << "\" x2=\"" << fixed(left, 1)
      << "\" y2=\"" << fixed(sy(y), 1) << "\" stroke=\"black\"/>";
    o << "<text x=\"" << fixed(left - 7, 1) << "\" y=\"" << fixed(sy(y) + 4, 1) << "\" text-anchor=\"end\">"
      << tick_label(y, y_step) << "</text>\n";
  }
  for (double x = std::ceil(x_min / x_step) * x_step; x <= x_max + 1e-9 * std::fabs(x_max); x += x_step) {
    o << "<line x1=\"" << fixed(sx(x), 1) << "\" y1=\"" << fixed(top + ph, 1) << "\" x2=\"" << fixed(sx(x), 1)
      << "\" y2=\"" << fixed(top + ph + 4, 1) << "\" stroke=\"black\"/>";
    o << "<text x=\"" << fixed(sx(x), 1) << "\" y=\"" << fixed(top + ph + 17, 1) << "\" text-anchor=\"middle\">"
      << tick_label(x, x_step) << "</text>\n";
  }
  o << "<text x=\"" << fixed(left + pw / 2, 1) << "\" y=\"" << fixed(height - 18, 1) << "\" text-anchor=\"middle\">"
    << escape_xml(plot.x_label) << "</text>\n";
  o << "<text transform=\"translate(18," << fixed(top + ph / 2, 1) << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape_xml(plot.y_label) << "</text>\n</g>\n";

  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const PlotSeries& s = plot.series[i];
    const char* color = kColors[i % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    bool sep = false;
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      o << (sep ? " " : "") << fixed(sx(x), 2) << ',' << fixed(sy(y), 2);
      sep = true;
    }
    o << "\"/>\n";
    const double ly = top + 14 + 16 * static_cast<double>(i);
    o << "<line x1=\"" << fixed(left + pw - 150, 1) << "\" y1=\"" << fixed(ly, 1) << "\" x2=\""
      << fixed(left + pw - 125, 1) << "\" y2=\"" << fixed(ly, 1) << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>";
    o << "<text x=\"" << fixed(left + pw - 120, 1) << "\" y=\"" << fixed(ly + 4, 1)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace scsim
