// SPDX-License-Identifier: Apache-2.0
#include "tlsw/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tlsw {
namespace {

// Equally spaced values from `from` to `to` inclusive.
VectorXd seq(double from, double to, Index length) {
  return VectorXd::LinSpaced(length, from, to);
}

}  // namespace

Scenario scenario_x1(Index n) {
  Scenario s;
  s.name = "x1";
  s.n = n;
  s.trend = RescaledFunction([](double z) { return 3.0 * (32.0 * z * z * z - 48.0 * z * z + 22.0 * z - 3.0); });
  std::vector<RescaledFunction> spec(4);
  spec[1] = [](double z) { return 2.0 + 12.0 * z - 12.0 * z * z; };
  spec[3] = [](double) { return 2.0; };
  s.spectrum = std::move(spec);
  return s;
}

Scenario scenario_x2() {
  constexpr Index n = 1024;
  const double pi = std::numbers::pi;
  const VectorXd index = seq(0.0, 1.0, n);

  VectorXd trend(n);
  trend.head(300) = seq(0.0, 10.0, 300);
  trend.tail(724) = seq(10.0, -4.0, 724);
  trend += (6.0 * pi * index).array().sin().matrix() * 5.0;

  MatrixXd spec = MatrixXd::Zero(floor_log2(n), n);
  spec.row(0) = seq(2.0, 10.0, n).transpose();
  VectorXd s3(n);
  s3 << VectorXd::Constant(200, 1.0), seq(1.0, 6.0, 200), seq(6.0, 1.0, 200), VectorXd::Constant(424, 1.0);
  spec.row(2) = s3.transpose();
  spec.row(4) = (2.0 + 4.0 * (4.0 * pi * index).array().sin().square()).matrix().transpose();

  Scenario s;
  s.name = "x2";
  s.n = n;
  s.trend = trend;
  s.spectrum = spec;
  return s;
}

VectorXd scenario_trend(const Scenario& s) { return sample_trend(s.trend, s.n); }

MatrixXd scenario_spectrum(const Scenario& s) { return sample_spec(s.spectrum, s.n); }

Scenario scenario_by_name(std::string_view name) {
  if (name == "x1") return scenario_x1();
  if (name == "x2") return scenario_x2();
  throw Error(Errc::InvalidArgument, "unknown scenario '" + std::string(name) + "' (expected x1 or x2)");
}

}  // namespace tlsw
