// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

#include "tlsw/simulate.hpp"
#include "tlsw/types.hpp"

namespace tlsw {

/// A trend/spectrum pair with the wavelet used to generate it.
struct Scenario {
  std::string_view name;
  Index n = 0;
  TrendSpec trend;
  SpectrumSpec spectrum;
  Family family = Family::ExtremalPhase;
  int filter_number = 4;
};

/// Cubic trend 3(32z^3 - 48z^2 + 22z - 3); S_2 = 2 + 12z - 12z^2, S_4 = 2.
/// Functional, so n must be dyadic (default 512).
Scenario scenario_x1(Index n = 512);

/// Sinusoid plus broken line, time-varying power at scales 1, 3 and 5; n = 1024.
Scenario scenario_x2();

/// True trend / spectrum matrix of a scenario sampled on its grid.
VectorXd scenario_trend(const Scenario& s);
MatrixXd scenario_spectrum(const Scenario& s);

/// Throws InvalidArgument for names other than "x1" and "x2".
Scenario scenario_by_name(std::string_view name);

}  // namespace tlsw
