// SPDX-License-Identifier: Apache-2.0
#include "tlsw/lacv.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace tlsw {

Index default_lag_max(Index n) {
  return static_cast<Index>(std::floor(10.0 * std::log(static_cast<double>(n))));
}

LacvEstimate lacv_from_spectrum(const MatrixXd& spectrum, const AutocorrelationWavelet& acw,
                                Index lag_max) {
  if (lag_max < 0) throw Error(Errc::InvalidArgument, "lag_max must be >= 0");
  const int j0 = static_cast<int>(spectrum.rows());
  if (acw.max_scale() < j0) {
    throw Error(Errc::DimensionMismatch, "autocorrelation wavelet covers fewer scales than the spectrum");
  }
  // psi_table(j, tau) = Psi_j(tau)
  MatrixXd psi_table(j0, lag_max + 1);
  for (int j = 1; j <= j0; ++j) {
    for (Index tau = 0; tau <= lag_max; ++tau) psi_table(j - 1, tau) = acw(j, tau);
  }

  LacvEstimate out;
  out.lag_max = lag_max;
  out.lacv = spectrum.transpose() * psi_table;
  out.lacr.resize(out.lacv.rows(), out.lacv.cols());
  for (Index t = 0; t < out.lacv.rows(); ++t) {
    const double c0 = out.lacv(t, 0);
    if (c0 > 0.0) {
      out.lacr.row(t) = out.lacv.row(t) / c0;
    } else {
      out.lacr.row(t).setConstant(std::numeric_limits<double>::quiet_NaN());
      ++out.nonpositive_variance_rows;
    }
  }
  return out;
}

}  // namespace tlsw
