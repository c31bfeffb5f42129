// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tlsw/types.hpp"

namespace tlsw::svg {

/// Minimal SVG builder. Coordinates are written with two decimals so the
/// output is byte-stable for identical inputs.
class Document {
 public:
  Document(double width, double height);

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke = "none");
  void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1.0,
            std::string_view dash = {});
  void polyline(const std::vector<double>& xs, const std::vector<double>& ys, std::string_view stroke,
                double width = 1.0, std::string_view dash = {});
  void polygon(const std::vector<double>& xs, const std::vector<double>& ys, std::string_view fill,
               double opacity = 1.0);
  void text(double x, double y, std::string_view content, double size = 12.0,
            std::string_view anchor = "start");

  std::string str() const;

 private:
  double width_;
  double height_;
  std::string body_;
};

enum class SpectrumScaling { Global, ByLevel };

SpectrumScaling parse_scaling(std::string_view name);

/// Data (grey), trend (red) and, when both bounds are present, a shaded band.
std::string trend_figure(const VectorXd& data, const VectorXd& trend, const std::optional<VectorXd>& lo,
                         const std::optional<VectorXd>& hi);

/// One needle panel per scale (finest at the top).
std::string spectrum_figure(const MatrixXd& spectrum, SpectrumScaling scaling);

/// Local autocorrelation against lag for the requested time indices.
std::string lacf_figure(const MatrixXd& lacr, const std::vector<Index>& times);

}  // namespace tlsw::svg
