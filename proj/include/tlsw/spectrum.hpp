// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>

#include "tlsw/filters.hpp"
#include "tlsw/transforms.hpp"
#include "tlsw/types.hpp"
#include "tlsw/wavelets.hpp"

namespace tlsw {

enum class SmootherType { Mean, Median, Epan, None };

SmootherType parse_smoother(std::string_view name);
std::string_view smoother_name(SmootherType type);

struct SmootherConfig {
  SmootherType type = SmootherType::Mean;
  Index binwidth = 3;  // 2N + 1
};

/// Lag-p difference applied `order` times (order 2 only with lag 1).
struct Differencing {
  Index lag = 1;
  int order = 1;

  /// Number of samples lost: lag * order.
  Index span() const { return lag * order; }
};

/// Normalized differencing: (x_{t+p} - x_t) / sqrt(2), or
/// (x_{t+2} - 2 x_{t+1} + x_t) / sqrt(6). Throws InvalidDiffSpec.
VectorXd difference_series(const VectorXd& x, const Differencing& diff);

struct Periodogram {
  MatrixXd raw;       // J0 x n, I_{j,k} = d_{j,k}^2
  MatrixXd smoothed;  // empty until smooth_periodogram
  std::optional<SmootherConfig> smoother;
  std::optional<Differencing> differenced;
  ExtensionDescriptor extension;

  int j0() const { return static_cast<int>(raw.rows()); }
  Index n() const { return raw.cols(); }
};

/// Squared, time-aligned NDWT coefficients over the original window. With
/// `boundary` the raw series is LocalTrendReflect-extended first; with
/// differencing the extended series is then differenced circularly. Throws ScaleTooDeep, SeriesTooShort, InvalidDiffSpec.
Periodogram wavelet_periodogram(const VectorXd& x, const WaveletFilter& filter, int j0, bool boundary,
                                const std::optional<Differencing>& diff = std::nullopt);

/// 1 / median(chi^2_1): makes running medians of chi^2-type ordinates
/// consistent for their mean.
double median_consistency_factor();

/// Smooths one row. Windows shrink at the edges and weights are renormalized.
VectorXd smooth_row(const VectorXd& row, const SmootherConfig& config);

/// Throws InvalidBinwidth unless the binwidth is odd and in [3, n].
Periodogram smooth_periodogram(Periodogram p, const SmootherConfig& config);

struct SpectrumEstimate {
  MatrixXd S;  // J0 x n, corrected; negative entries are kept
  Periodogram periodogram;
  WaveletFilter filter;
  CorrectionMatrix correction;
  Index binwidth = 0;
  bool binwidth_clamped = false;
  bool floored = false;

  int j0() const { return static_cast<int>(S.rows()); }
  Index n() const { return S.cols(); }
};

/// S_hat(., k) = M^{-1} I_hat(., k), M = A for direct and D for differenced
/// periodograms. Uses the raw periodogram if no smoothing was applied.
/// Throws MatrixMismatch.
SpectrumEstimate correct_periodogram(const Periodogram& p, const CorrectionMatrix& correction);

/// floor(0.7 log2 n), at least 1.
int default_max_scale(Index n);

/// floor(6 sqrt(n)) rounded up to odd, clamped to the largest odd <= n/2.
Index default_binwidth(Index n, bool* clamped = nullptr);

struct SpectrumOptions {
  WaveletFilter filter = make_filter(Family::ExtremalPhase, 4);
  std::optional<int> max_scale;
  SmootherType smoother = SmootherType::Mean;
  std::optional<Index> binwidth;
  bool boundary = true;
  std::optional<Differencing> diff;
  std::optional<CorrectionMatrix> correction;  // precomputed, must match
  bool floor_negative = false;
};

/// (diff) -> extend -> NDWT -> square -> smooth -> correct. Needs n >= 16.
SpectrumEstimate estimate_spectrum(const VectorXd& x, const SpectrumOptions& options = {});

}  // namespace tlsw
