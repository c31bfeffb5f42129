// SPDX-License-Identifier: Apache-2.0
#include "tlsw/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace tlsw {

SmootherType parse_smoother(std::string_view name) {
  if (name == "mean") return SmootherType::Mean;
  if (name == "median") return SmootherType::Median;
  if (name == "epan") return SmootherType::Epan;
  if (name == "none") return SmootherType::None;
  throw Error(Errc::InvalidArgument, "unknown smoother '" + std::string(name) + "'");
}

std::string_view smoother_name(SmootherType type) {
  switch (type) {
    case SmootherType::Mean: return "mean";
    case SmootherType::Median: return "median";
    case SmootherType::Epan: return "epan";
    case SmootherType::None: return "none";
  }
  return "none";
}

VectorXd difference_series(const VectorXd& x, const Differencing& diff) {
  const bool valid = (diff.order == 1 && diff.lag >= 1) || (diff.order == 2 && diff.lag == 1);
  if (!valid) {
    throw Error(Errc::InvalidDiffSpec, "unsupported differencing (lag " + std::to_string(diff.lag) +
                                           ", order " + std::to_string(diff.order) + ")");
  }
  const Index m = x.size() - diff.span();
  if (m < 1) throw Error(Errc::SeriesTooShort, "series shorter than the differencing span");
  if (diff.order == 1) {
    return (x.tail(m) - x.head(m)) / std::sqrt(2.0);
  }
  return (x.tail(m) - 2.0 * x.segment(1, m) + x.head(m)) / std::sqrt(6.0);
}

Periodogram wavelet_periodogram(const VectorXd& x, const WaveletFilter& filter, int j0, bool boundary,
                                const std::optional<Differencing>& diff) {
  const Index n = x.size();
  if (n < 8) throw Error(Errc::SeriesTooShort, "need at least 8 points");
  if (j0 > floor_log2(n)) {
    throw Error(Errc::ScaleTooDeep, "J0 = " + std::to_string(j0) + " exceeds floor(log2 n) = " +
                                        std::to_string(floor_log2(n)));
  }

  // Differenced sample t sits between x_t and x_{t+span}; centre it.
  const Index shift = diff ? diff->span() / 2 : 0;

  // The raw series is reflected about fitted end levels, then differenced
  // circularly if asked. Reflecting about the noisy end value puts a random
  // level 2 eps_0 on each mirrored block, which shows up as spurious power at
  // the coarse scales (and is amplified by the D inverse after differencing).
  const ExtensionPolicy policy = boundary ? ExtensionPolicy::LocalTrendReflect : ExtensionPolicy::None;
  auto ext = extend_series(x, policy);
  if (diff) {
    const Index span = diff->span();
    VectorXd padded(ext.values.size() + span);
    padded << ext.values, ext.values.head(span);
    ext.values = difference_series(padded, *diff);
  }
  const auto pyr = ndwt_forward(ext.values, filter, j0);
  const Index len = ext.values.size();

  Periodogram p;
  p.differenced = diff;
  p.extension = ext.descriptor;
  p.raw.resize(j0, n);
  for (int j = 1; j <= j0; ++j) {
    const VectorXd& d = pyr.detail_at(j);
    for (Index k = 0; k < n; ++k) {
      const double v = d(detail::wrap(ext.descriptor.original_start + k - shift, len));
      p.raw(j - 1, k) = v * v;
    }
  }
  return p;
}

double median_consistency_factor() {
  static const double factor =
      1.0 / boost::math::quantile(boost::math::chi_squared_distribution<double>(1.0), 0.5);
  return factor;
}

VectorXd smooth_row(const VectorXd& row, const SmootherConfig& config) {
  if (config.type == SmootherType::None) return row;
  const Index n = row.size();
  const Index half = config.binwidth / 2;
  VectorXd out(n);

  if (config.type == SmootherType::Median) {
    const double factor = median_consistency_factor();
    std::vector<double> window;
    window.reserve(static_cast<std::size_t>(config.binwidth));
    for (Index k = 0; k < n; ++k) {
      const Index lo = std::max<Index>(0, k - half);
      const Index hi = std::min<Index>(n - 1, k + half);
      window.assign(row.data() + lo, row.data() + hi + 1);
      const std::size_t mid = window.size() / 2;
      std::nth_element(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(mid), window.end());
      double med = window[mid];
      if (window.size() % 2 == 0) {
        med = 0.5 * (med + *std::max_element(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(mid)));
      }
      out(k) = factor * med;
    }
    return out;
  }

  VectorXd weights(2 * half + 1);
  for (Index m = -half; m <= half; ++m) {
    if (config.type == SmootherType::Mean) {
      weights(m + half) = 1.0;
    } else {
      const double u = static_cast<double>(m) / static_cast<double>(half + 1);
      weights(m + half) = 1.0 - u * u;
    }
  }
  for (Index k = 0; k < n; ++k) {
    const Index lo = std::max<Index>(0, k - half);
    const Index hi = std::min<Index>(n - 1, k + half);
    const Index count = hi - lo + 1;
    const auto w = weights.segment(lo - k + half, count);
    out(k) = w.dot(row.segment(lo, count)) / w.sum();
  }
  return out;
}

Periodogram smooth_periodogram(Periodogram p, const SmootherConfig& config) {
  if (config.type != SmootherType::None) {
    if (config.binwidth % 2 == 0 || config.binwidth < 3 || config.binwidth > p.n()) {
      throw Error(Errc::InvalidBinwidth, "binwidth must be odd and in [3, " + std::to_string(p.n()) +
                                             "], got " + std::to_string(config.binwidth));
    }
  }
  p.smoothed.resize(p.raw.rows(), p.raw.cols());
  for (Index j = 0; j < p.raw.rows(); ++j) {
    p.smoothed.row(j) = smooth_row(p.raw.row(j).transpose(), config).transpose();
  }
  p.smoother = config;
  return p;
}

SpectrumEstimate correct_periodogram(const Periodogram& p, const CorrectionMatrix& correction) {
  const bool want_diff = p.differenced.has_value();
  const bool kind_ok =
      want_diff ? (correction.kind == CorrectionKind::DDiff && correction.lag == p.differenced->lag &&
                   correction.diff_order == p.differenced->order)
                : correction.kind == CorrectionKind::A;
  if (!kind_ok) {
    throw Error(Errc::MatrixMismatch, want_diff
                                          ? "differenced periodogram needs the matching D matrix"
                                          : "direct periodogram needs the A matrix");
  }
  if (correction.j0 != p.j0() || !correction.inverse) {
    throw Error(Errc::MatrixMismatch, "correction matrix is " + std::to_string(correction.j0) +
                                          " scales, periodogram has " + std::to_string(p.j0()));
  }
  SpectrumEstimate est;
  const MatrixXd& source = p.smoothed.size() > 0 ? p.smoothed : p.raw;
  est.S = (*correction.inverse) * source;
  est.periodogram = p;
  est.correction = correction;
  return est;
}

int default_max_scale(Index n) {
  const int j = static_cast<int>(std::floor(0.7 * std::log2(static_cast<double>(n)) + 1e-9));
  return std::max(1, j);
}

Index default_binwidth(Index n, bool* clamped) {
  Index bw = static_cast<Index>(std::floor(6.0 * std::sqrt(static_cast<double>(n))));
  if (bw % 2 == 0) ++bw;
  Index cap = n / 2;
  if (cap % 2 == 0) --cap;
  const bool clamp = bw > cap;
  if (clamped) *clamped = clamp;
  return clamp ? cap : bw;
}

SpectrumEstimate estimate_spectrum(const VectorXd& x, const SpectrumOptions& options) {
  const Index n = x.size();
  if (n < 16) throw Error(Errc::SeriesTooShort, "spectrum estimation needs at least 16 points");
  const int j0 = options.max_scale.value_or(default_max_scale(n));

  bool clamped = false;
  const Index bw = options.binwidth ? *options.binwidth : default_binwidth(n, &clamped);

  Periodogram p = wavelet_periodogram(x, options.filter, j0, options.boundary, options.diff);
  p = smooth_periodogram(std::move(p), SmootherConfig{options.smoother, bw});

  CorrectionMatrix correction;
  if (options.correction) {
    correction = *options.correction;
  } else {
    const auto acw = autocorr_wavelet(options.filter, j0);
    correction = options.diff ? diff_correction_matrix(acw, j0, options.diff->lag, options.diff->order)
                              : a_matrix(acw, j0);
  }
  SpectrumEstimate est = correct_periodogram(p, correction);
  est.filter = options.filter;
  est.binwidth = bw;
  est.binwidth_clamped = clamped;
  if (options.floor_negative) {
    est.S = est.S.cwiseMax(0.0);
    est.floored = true;
  }
  return est;
}

}  // namespace tlsw
