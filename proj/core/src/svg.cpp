#include "acr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "acr/error.hpp"

namespace acr::svg {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (std::abs(v) >= 1e5 || (std::abs(v) < 1e-2 && v != 0.0)) {
    std::snprintf(buf, sizeof buf, "%.1e", v);
  } else {
    std::snprintf(buf, sizeof buf, "%g", v);
  }
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void check_finite(const Series& s, const std::vector<double>& v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw ValidationError("series '" + s.name + "' has a non-finite " + what +
                            " value at index " + std::to_string(i));
    }
  }
}

double nice_step(double span, int target) {
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double norm = raw / mag;
  double step = norm < 1.5 ? 1 : norm < 3 ? 2 : norm < 7 ? 5 : 10;
  return step * mag;
}

}  // namespace

std::string render_svg(const std::vector<Series>& series, const Axes& axes) {
  if (series.empty()) throw ValidationError("render_svg needs at least one series");
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) {
      throw ValidationError("series '" + s.name + "' has mismatched x and y lengths");
    }
    if ((!s.lower.empty() && s.lower.size() != s.y.size()) ||
        (!s.upper.empty() && s.upper.size() != s.y.size()) ||
        s.lower.size() != s.upper.size()) {
      throw ValidationError("series '" + s.name + "' has a malformed band");
    }
    check_finite(s, s.x, "x");
    check_finite(s, s.y, "y");
    check_finite(s, s.lower, "lower");
    check_finite(s, s.upper, "upper");
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      double lo = s.lower.empty() ? s.y[i] : std::min(s.y[i], s.lower[i]);
      double hi = s.upper.empty() ? s.y[i] : std::max(s.y[i], s.upper[i]);
      ymin = std::min(ymin, lo);
      ymax = std::max(ymax, hi);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (axes.log_y) {
    if (ymin <= 0) throw ValidationError("log axis needs positive values");
    ymin = std::log10(ymin);
    ymax = std::log10(ymax);
  }
  if (xmax == xmin) {
    xmin -= 1;
    xmax += 1;
  }
  if (ymax == ymin) {
    ymin -= 1;
    ymax += 1;
  }

  const double left = 70, right = 180, top = 40, bottom = 55;
  const double pw = axes.width - left - right;
  const double ph = axes.height - top - bottom;
  auto tx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto ty = [&](double y) {
    if (axes.log_y) y = std::log10(y);
    return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph;
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(axes.width) +
         "\" height=\"" + std::to_string(axes.height) + "\" font-family=\"sans-serif\" " +
         "font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" " +
         "font-size=\"15\">" + escape(axes.title) + "</text>\n";

  // Grid and ticks.
  double xs = nice_step(xmax - xmin, 8);
  for (double v = std::ceil(xmin / xs) * xs; v <= xmax + xs * 1e-9; v += xs) {
    out += "<line x1=\"" + num(tx(v)) + "\" y1=\"" + num(top) + "\" x2=\"" + num(tx(v)) +
           "\" y2=\"" + num(top + ph) + "\" stroke=\"#e6e6e6\"/>\n";
    out += "<text x=\"" + num(tx(v)) + "\" y=\"" + num(top + ph + 16) +
           "\" text-anchor=\"middle\">" + tick_label(v) + "</text>\n";
  }
  double ys = nice_step(ymax - ymin, 6);
  for (double v = std::ceil(ymin / ys) * ys; v <= ymax + ys * 1e-9; v += ys) {
    double shown = axes.log_y ? std::pow(10.0, v) : v;
    double y = top + (1.0 - (v - ymin) / (ymax - ymin)) * ph;
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left + pw) +
           "\" y2=\"" + num(y) + "\" stroke=\"#e6e6e6\"/>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\">" + tick_label(shown) + "</text>\n";
  }
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(axes.height - 12.0) +
         "\" text-anchor=\"middle\">" + escape(axes.x_label) + "</text>\n";
  out += "<text transform=\"translate(16," + num(top + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(axes.y_label) + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    if (!s.lower.empty() && !s.y.empty()) {
      std::string pts;
      for (std::size_t i = 0; i < s.y.size(); ++i) {
        pts += num(tx(s.x[i])) + "," + num(ty(s.upper[i])) + " ";
      }
      for (std::size_t i = s.y.size(); i-- > 0;) {
        pts += num(tx(s.x[i])) + "," + num(ty(s.lower[i])) + " ";
      }
      pts.pop_back();
      out += "<polygon points=\"" + pts + "\" fill=\"" + color +
             "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    if (!s.y.empty()) {
      std::string pts;
      for (std::size_t i = 0; i < s.y.size(); ++i) {
        if (i) pts += ' ';
        pts += num(tx(s.x[i])) + "," + num(ty(s.y[i]));
      }
      out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"1.5\"/>\n";
    }
    double ly = top + 14 + 18.0 * k;
    out += "<line x1=\"" + num(left + pw + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" +
           num(left + pw + 36) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text class=\"legend\" x=\"" + num(left + pw + 42) + "\" y=\"" + num(ly + 4) +
           "\">" + escape(s.name) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace acr::svg
