#include "stylo/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace stylo {

namespace {

std::string fixed(double x, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string s(buf);
  if (s == "-0.00" || s == "-0.000") s.erase(0, 1);
  return s;
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

std::string header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" viewBox=\"0 0 800 400\">\n"
         "<rect x=\"0\" y=\"0\" width=\"800\" height=\"400\" fill=\"white\"/>\n";
}

}  // namespace

std::string render_fingerprint_svg(const StyleFingerprint& fp) {
  const double left = 70, right = 780, top = 40, bottom = 330;
  const double zero_y = (top + bottom) / 2.0;
  const double half = (bottom - top) / 2.0;
  const std::size_t n = fp.w_plus.size();

  std::string svg = header();
  svg += "<text x=\"400\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">"
         "style fingerprint w+</text>\n";
  for (double tick : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const double y = zero_y - tick * half;
    svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(right) + "\" y2=\"" +
           fixed(y) + "\" stroke=\"" + (tick == 0.0 ? "black" : "#dddddd") + "\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fixed(left - 8) + "\" y=\"" + fixed(y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + fixed(tick, 1) + "</text>\n";
  }
  const double slot = n == 0 ? 0.0 : (right - left) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::clamp(fp.w_plus[i], -1.0, 1.0);
    const double x = left + slot * static_cast<double>(i) + slot * 0.2;
    const double w = slot * 0.6;
    const double y = v >= 0 ? zero_y - v * half : zero_y;
    const double h = std::abs(v) * half;
    const std::string name = i < fp.measure_names.size() ? fp.measure_names[i] : "mu" + std::to_string(i + 1);
    svg += "<rect class=\"bar\" x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" width=\"" + fixed(w) +
           "\" height=\"" + fixed(h) + "\" fill=\"" + (v >= 0 ? "#3b6ea5" : "#b5523b") + "\"><title>" +
           escape(name) + " " + fixed(fp.w_plus[i], 6) + "</title></rect>\n";
    svg += "<text x=\"" + fixed(x + w / 2) + "\" y=\"" + fixed(bottom + 22) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" + escape(name) +
           "</text>\n";
    svg += "<text x=\"" + fixed(x + w / 2) + "\" y=\"" + fixed(bottom + 40) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" + fixed(fp.w_plus[i], 4) +
           "</text>\n";
  }
  svg += "<text x=\"400\" y=\"392\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">theta=" +
         fixed(fp.theta, 6) + " eta=" + (fp.eta ? fixed(*fp.eta, 6) : std::string("undefined")) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::string render_pca_svg(std::span<const std::array<double, 2>> projections,
                           std::span<const std::string> labels) {
  if (projections.size() < 2) throw std::invalid_argument("PCA plot needs at least two points");
  if (labels.size() != projections.size()) throw std::invalid_argument("one label per point required");
  const double left = 70, right = 770, top = 40, bottom = 350;

  std::array<double, 2> lo{projections[0][0], projections[0][1]}, hi = lo;
  for (const auto& p : projections)
    for (int a = 0; a < 2; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  for (int a = 0; a < 2; ++a) {
    double span = hi[a] - lo[a];
    if (span <= 0.0) span = 2.0;  // collinear: centre the flat axis
    const double mid = (hi[a] + lo[a]) / 2.0;
    lo[a] = mid - span * 0.6;
    hi[a] = mid + span * 0.6;
  }
  auto sx = [&](double x) { return left + (x - lo[0]) / (hi[0] - lo[0]) * (right - left); };
  auto sy = [&](double y) { return bottom - (y - lo[1]) / (hi[1] - lo[1]) * (bottom - top); };

  std::string svg = header();
  svg += "<text x=\"400\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">"
         "principal components</text>\n";
  svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(bottom) + "\" x2=\"" + fixed(right) + "\" y2=\"" +
         fixed(bottom) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(left) + "\" y2=\"" +
         fixed(bottom) + "\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + fixed((left + right) / 2) + "\" y=\"" + fixed(bottom + 30) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">first component</text>\n";
  svg += "<text x=\"20\" y=\"" + fixed((top + bottom) / 2) + "\" font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 20 " + fixed((top + bottom) / 2) +
         ")\">second component</text>\n";
  for (std::size_t i = 0; i < projections.size(); ++i) {
    const double x = sx(projections[i][0]), y = sy(projections[i][1]);
    svg += "<circle class=\"point\" cx=\"" + fixed(x) + "\" cy=\"" + fixed(y) +
           "\" r=\"4\" fill=\"#3b6ea5\"/>\n";
    svg += "<text x=\"" + fixed(x + 7) + "\" y=\"" + fixed(y - 7) +
           "\" font-family=\"sans-serif\" font-size=\"14\">" + escape(labels[i]) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace stylo
