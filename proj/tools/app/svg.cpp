#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace respsim::app {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string escape(const std::string& s) {
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

struct Range {
  double lo = 0.0, hi = 1.0;
};

Range padded(double lo, double hi) {
  if (!(hi > lo)) {
    const double d = std::max(1e-6, std::abs(lo) * 0.1);
    return {lo - d, hi + d};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string sweep_svg(const std::vector<sweep::SummaryRow>& rows, const std::string& title) {
  std::map<double, std::vector<std::pair<double, double>>, std::greater<>> series;
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& r : rows) {
    if (!std::isfinite(r.empirical_sigma_m_mean) || !std::isfinite(r.snr_db_mean)) continue;
    series[r.scale].emplace_back(r.empirical_sigma_m_mean, r.snr_db_mean);
    xlo = std::min(xlo, r.empirical_sigma_m_mean);
    xhi = std::max(xhi, r.empirical_sigma_m_mean);
    ylo = std::min(ylo, r.snr_db_mean);
    yhi = std::max(yhi, r.snr_db_mean);
  }
  if (series.empty()) xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  const Range xr = padded(xlo, xhi);
  const Range yr = padded(ylo, yhi);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"14\">" << escape(title) << "</text>\n";
  o << "<polyline fill=\"none\" stroke=\"black\" points=\"" << kLeft << ',' << kTop << ' ' << kLeft << ','
    << kTop + ph << ' ' << kLeft + pw << ',' << kTop + ph << "\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double x = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double y = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    o << "<text x=\"" << fmt("%.1f", px(x)) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
      << fmt("%.3g", x) << "</text>\n";
    o << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt("%.1f", py(y) + 4) << "\" text-anchor=\"end\">"
      << fmt("%.3g", y) << "</text>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 16
    << "\" text-anchor=\"middle\">measured noise std (m)</text>\n";
  o << "<text transform=\"translate(18," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">SNR (dB)</text>\n";

  std::size_t k = 0;
  for (const auto& [scale, pts] : series) {
    const char* color = kColors[k % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      o << (i ? " " : "") << fmt("%.2f", px(pts[i].first)) << ',' << fmt("%.2f", py(pts[i].second));
    }
    o << "\"/>\n";
    for (const auto& [x, y] : pts) {
      o << "<circle cx=\"" << fmt("%.2f", px(x)) << "\" cy=\"" << fmt("%.2f", py(y)) << "\" r=\"3\" fill=\"" << color
        << "\"/>\n";
    }
    const double ly = kTop + 10 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << kLeft + pw + 16 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 40 << "\" y2=\"" << ly
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << kLeft + pw + 46 << "\" y=\"" << ly + 4 << "\">scale " << fmt("%g", scale) << "</text>\n";
    ++k;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace respsim::app
