// SPDX-License-Identifier: Apache-2.0
#include "tlsw/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace tlsw::svg {
namespace {

std::string num(double v) {
  if (std::abs(v) < 0.005) v = 0.0;  // no "-0.00"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string points(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ' ';
    out += num(xs[i]) + ',' + num(ys[i]);
  }
  return out;
}

struct Frame {
  double left, top, width, height;
  double x_min, x_max, y_min, y_max;

  double x(double v) const { return left + (v - x_min) / (x_max - x_min) * width; }
  double y(double v) const { return top + (y_max - v) / (y_max - y_min) * height; }
};

// Range with a little headroom; degenerate ranges widened to +-1.
std::pair<double, double> padded_range(double lo, double hi) {
  if (!(hi > lo)) return {lo - 1.0, hi + 1.0};
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

void axes(Document& doc, const Frame& f, std::string_view x_label, std::string_view y_label) {
  doc.rect(f.left, f.top, f.width, f.height, "none", "#000000");
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x_min + (f.x_max - f.x_min) * i / 4.0;
    const double yv = f.y_min + (f.y_max - f.y_min) * i / 4.0;
    const double px = f.x(xv);
    const double py = f.y(yv);
    doc.line(px, f.top + f.height, px, f.top + f.height + 5, "#000000");
    doc.text(px, f.top + f.height + 18, num(xv), 10, "middle");
    doc.line(f.left - 5, py, f.left, py, "#000000");
    doc.text(f.left - 8, py + 4, num(yv), 10, "end");
  }
  doc.text(f.left + f.width / 2, f.top + f.height + 36, x_label, 12, "middle");
  doc.text(14, f.top + f.height / 2, y_label, 12, "middle");
}

}  // namespace

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" fill=\"" + std::string(fill) + "\" stroke=\"" + std::string(stroke) + "\"/>\n";
}

void Document::line(double x1, double y1, double x2, double y2, std::string_view stroke, double width,
                    std::string_view dash) {
  body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
           "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) + "\"";
  if (!dash.empty()) body_ += " stroke-dasharray=\"" + std::string(dash) + "\"";
  body_ += "/>\n";
}

void Document::polyline(const std::vector<double>& xs, const std::vector<double>& ys, std::string_view stroke,
                        double width, std::string_view dash) {
  body_ += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) + "\"";
  if (!dash.empty()) body_ += " stroke-dasharray=\"" + std::string(dash) + "\"";
  body_ += " points=\"" + points(xs, ys) + "\"/>\n";
}

void Document::polygon(const std::vector<double>& xs, const std::vector<double>& ys, std::string_view fill,
                       double opacity) {
  body_ += "<polygon fill=\"" + std::string(fill) + "\" fill-opacity=\"" + num(opacity) + "\" stroke=\"none\"" +
           " points=\"" + points(xs, ys) + "\"/>\n";
}

void Document::text(double x, double y, std::string_view content, double size, std::string_view anchor) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
           num(size) + "\" text-anchor=\"" + std::string(anchor) + "\">" + escape(content) + "</text>\n";
}

std::string Document::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         num(width_) + "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) +
         "\">\n<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n" + body_ + "</svg>\n";
}

SpectrumScaling parse_scaling(std::string_view name) {
  if (name == "global") return SpectrumScaling::Global;
  if (name == "by-level" || name == "by.level") return SpectrumScaling::ByLevel;
  throw Error(Errc::InvalidArgument, "scaling must be 'global' or 'by-level'");
}

std::string trend_figure(const VectorXd& data, const VectorXd& trend, const std::optional<VectorXd>& lo,
                         const std::optional<VectorXd>& hi) {
  const Index n = trend.size();
  const bool band = lo && hi;
  double y_lo = std::min(data.minCoeff(), trend.minCoeff());
  double y_hi = std::max(data.maxCoeff(), trend.maxCoeff());
  if (band) {
    y_lo = std::min(y_lo, lo->minCoeff());
    y_hi = std::max(y_hi, hi->maxCoeff());
  }
  const auto [ymin, ymax] = padded_range(y_lo, y_hi);
  const Frame f{70, 30, 860, 400, 0.0, static_cast<double>(std::max<Index>(n - 1, 1)), ymin, ymax};

  Document doc(960, 500);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (Index t = 0; t < n; ++t) xs[static_cast<std::size_t>(t)] = f.x(static_cast<double>(t));
  auto ys_of = [&](const VectorXd& v) {
    std::vector<double> ys(static_cast<std::size_t>(v.size()));
    for (Index t = 0; t < v.size(); ++t) ys[static_cast<std::size_t>(t)] = f.y(v(t));
    return ys;
  };

  if (band) {
    std::vector<double> px = xs;
    std::vector<double> py = ys_of(*hi);
    const auto lower = ys_of(*lo);
    px.insert(px.end(), xs.rbegin(), xs.rend());
    py.insert(py.end(), lower.rbegin(), lower.rend());
    doc.polygon(px, py, "#9ecae1", 0.6);
  }
  doc.polyline(xs, ys_of(data), "#999999", 1.0);
  if (band) {
    doc.polyline(xs, ys_of(*lo), "#3182bd", 1.0, "4,3");
    doc.polyline(xs, ys_of(*hi), "#3182bd", 1.0, "4,3");
  }
  doc.polyline(xs, ys_of(trend), "#d62728", 2.0);
  axes(doc, f, "Time", "Value");
  return doc.str();
}

std::string spectrum_figure(const MatrixXd& spectrum, SpectrumScaling scaling) {
  const Index j0 = spectrum.rows();
  const Index n = spectrum.cols();
  const double panel_h = 70.0;
  const double left = 70.0;
  const double width = 860.0;
  const double top = 30.0;
  Document doc(960, top + panel_h * static_cast<double>(j0) + 60.0);

  const double global_max = spectrum.size() > 0 ? spectrum.cwiseAbs().maxCoeff() : 0.0;
  for (Index j = 0; j < j0; ++j) {
    const double y0 = top + panel_h * static_cast<double>(j);
    const double base = y0 + panel_h / 2.0;
    const auto row = spectrum.row(j);
    const double level_max = row.cwiseAbs().maxCoeff();
    const double denom = scaling == SpectrumScaling::Global ? global_max : level_max;
    doc.rect(left, y0, width, panel_h, "none", "#cccccc");
    doc.line(left, base, left + width, base, "#bbbbbb", 0.5);
    doc.text(left - 8, base + 4, std::to_string(j + 1), 11, "end");
    if (denom > 0.0) {
      for (Index t = 0; t < n; ++t) {
        const double px = left + (static_cast<double>(t) + 0.5) / static_cast<double>(n) * width;
        const double h = row(t) / denom * (panel_h / 2.0 - 2.0);
        doc.line(px, base, px, base - h, "#08519c", 0.6);
      }
    }
  }
  const double bottom = top + panel_h * static_cast<double>(j0);
  for (int i = 0; i <= 4; ++i) {
    const double px = left + width * i / 4.0;
    doc.line(px, bottom, px, bottom + 5, "#000000");
    doc.text(px, bottom + 18, num(static_cast<double>(n) * i / 4.0), 10, "middle");
  }
  doc.text(left + width / 2, bottom + 40, "Translate", 12, "middle");
  doc.text(14, top + panel_h * static_cast<double>(j0) / 2.0, "Scale", 12, "middle");
  doc.text(left + width, 20, scaling == SpectrumScaling::Global ? "scaling: global" : "scaling: by level", 10,
           "end");
  return doc.str();
}

std::string lacf_figure(const MatrixXd& lacr, const std::vector<Index>& times) {
  const Index lags = lacr.cols();
  const Frame f{70, 30, 860, 400, 0.0, static_cast<double>(std::max<Index>(lags - 1, 1)), -1.05, 1.05};
  Document doc(960, 500);
  doc.line(f.left, f.y(0.0), f.left + f.width, f.y(0.0), "#bbbbbb", 0.5);

  constexpr std::array<std::string_view, 4> colours{"#1f77b4", "#d62728", "#000000", "#2ca02c"};
  constexpr std::array<std::string_view, 4> dashes{"", "6,3", "8,3,2,3", "2,2"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Index t = times[i];
    if (t < 0 || t >= lacr.rows()) continue;
    std::vector<double> xs;
    std::vector<double> ys;
    for (Index tau = 0; tau < lags; ++tau) {
      const double v = lacr(t, tau);
      if (!std::isfinite(v)) continue;
      xs.push_back(f.x(static_cast<double>(tau)));
      ys.push_back(f.y(std::clamp(v, -1.05, 1.05)));
    }
    doc.polyline(xs, ys, colours[i % colours.size()], 2.0, dashes[i % dashes.size()]);
    const double ly = f.top + 16.0 + 16.0 * static_cast<double>(i);
    doc.line(f.left + f.width - 120, ly - 4, f.left + f.width - 90, ly - 4, colours[i % colours.size()], 2.0,
             dashes[i % dashes.size()]);
    doc.text(f.left + f.width - 84, ly, "t = " + std::to_string(t), 11);
  }
  axes(doc, f, "Lag", "ACF");
  return doc.str();
}

}  // namespace tlsw::svg
