// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tlsw/types.hpp"
#include "tlsw/wavelets.hpp"

namespace tlsw {

/// Local autocovariance c(t/n, tau) and autocorrelation, rows = time, columns = lag.
struct LacvEstimate {
  MatrixXd lacv;  // n x (lag_max + 1)
  MatrixXd lacr;  // NaN rows where lacv(t, 0) <= 0
  Index lag_max = 0;
  Index nonpositive_variance_rows = 0;
};

/// floor(10 ln n).
Index default_lag_max(Index n);

/// c(t/n, tau) = sum_j S_j(t/n) Psi_j(tau) for tau = 0..lag_max. `spectrum`
/// is J0 x n. Rows with nonpositive variance get NaN autocorrelations and
/// are counted rather than raised.
LacvEstimate lacv_from_spectrum(const MatrixXd& spectrum, const AutocorrelationWavelet& acw,
                                Index lag_max);

}  // namespace tlsw
