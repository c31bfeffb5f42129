// SPDX-License-Identifier: Apache-2.0
#include "tlsw/trend.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "tlsw/simulate.hpp"
#include "tlsw/wavelets.hpp"

namespace tlsw {

std::string_view trend_method_name(TrendMethod method) {
  return method == TrendMethod::Linear ? "linear" : "nonlinear";
}

std::string_view threshold_type_name(ThresholdType type) {
  return type == ThresholdType::Hard ? "hard" : "soft";
}

std::string_view ci_type_name(CiType type) {
  switch (type) {
    case CiType::None: return "none";
    case CiType::Analytic: return "analytic";
    case CiType::BootNormal: return "normal";
    case CiType::BootPercentile: return "percentile";
  }
  return "none";
}

std::string_view transform_mode_name(TransformMode mode) {
  return mode == TransformMode::Decimated ? "dec" : "nondec";
}

namespace {

struct Prepared {
  ExtendedSeries<double> ext;
  CoefficientPyramid<double> pyr;
  int j0 = 0;
};

Prepared transform_series(const VectorXd& x, const WaveletFilter& filter, std::optional<int> max_scale,
                          TransformMode transform, bool boundary) {
  Prepared p;
  p.j0 = max_scale.value_or(default_max_scale(x.size()));
  p.ext = extend_series(x, boundary ? ExtensionPolicy::SymmetricTriple : ExtensionPolicy::None);
  p.pyr = transform == TransformMode::Decimated ? dwt_forward(p.ext.values, filter, p.j0)
                                                : ndwt_forward(p.ext.values, filter, p.j0);
  p.pyr.extension = p.ext.descriptor;
  p.pyr.n_original = x.size();
  return p;
}

VectorXd invert_to_window(const Prepared& p) {
  const VectorXd full =
      p.pyr.mode == TransformMode::Decimated ? dwt_inverse(p.pyr) : ndwt_average_basis(p.pyr);
  return p.ext.descriptor.window(full);
}

// Original-data time for a position of the extended series, following the
// even reflection used by SymmetricTriple.
Index original_time(Index pos, const ExtensionDescriptor& ext) {
  const Index n = ext.original_len;
  Index u = pos - ext.original_start;
  if (u < 0) u = -u - 1;
  if (u >= n) u = 2 * n - 1 - u;
  return std::clamp<Index>(u, 0, n - 1);
}

double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(0.0, 1.0), p);
}

// Sample quantile with linear interpolation between order statistics.
double interpolated_quantile(std::vector<double>& values, double prob) {
  std::sort(values.begin(), values.end());
  const double h = prob * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace

TrendEstimate linear_trend(const VectorXd& x, const WaveletFilter& filter, std::optional<int> max_scale,
                           TransformMode transform, bool boundary) {
  Prepared p = transform_series(x, filter, max_scale, transform, boundary);
  const Index first = p.ext.descriptor.original_start;
  const Index last = first + p.ext.descriptor.original_len - 1;
  for (int j = 1; j <= p.j0; ++j) {
    const Index len = support_length(filter.length(), j);
    VectorXd& d = p.pyr.detail_at(j);
    for (Index k = 0; k < d.size(); ++k) {
      const Index s = coefficient_support_start(p.pyr, j, k);
      if (s >= first && s + len - 1 <= last) d(k) = 0.0;
    }
  }
  TrendEstimate est;
  est.T_hat = invert_to_window(p);
  est.method = TrendMethod::Linear;
  est.transform = transform;
  est.max_scale = p.j0;
  return est;
}

double coefficient_variance(const MatrixXd& spectrum, const CorrectionMatrix& cross, int scale, Index time) {
  if (cross.kind != CorrectionKind::CCross || cross.j0 < spectrum.rows() || scale < 1 || scale > cross.j0) {
    throw Error(Errc::MatrixMismatch, "cross matrix of " + std::to_string(cross.j0) +
                                          " scales cannot serve scale " + std::to_string(scale) +
                                          " with a " + std::to_string(spectrum.rows()) +
                                          "-scale spectrum");
  }
  const Index j0s = spectrum.rows();
  const double v = cross.entries.row(scale - 1).head(j0s).dot(spectrum.col(time));
  return std::max(0.0, v);
}

TrendEstimate nonlinear_trend(const VectorXd& x, const SpectrumEstimate* spectrum,
                              const WaveletFilter& thresh_filter, std::optional<int> max_scale,
                              const ThresholdPolicy& policy, TransformMode transform, bool boundary) {
  if (spectrum == nullptr || spectrum->S.size() == 0) {
    throw Error(Errc::MissingSpectrum, "nonlinear trend estimation needs a spectrum estimate");
  }
  if (spectrum->S.cols() != x.size()) {
    throw Error(Errc::DimensionMismatch, "spectrum estimate covers " + std::to_string(spectrum->S.cols()) +
                                             " time points, series has " + std::to_string(x.size()));
  }
  Prepared p = transform_series(x, thresh_filter, max_scale, transform, boundary);

  const int jc = std::max(p.j0, spectrum->j0());
  const auto cross = cross_a_matrix(autocorr_wavelet(spectrum->filter, jc),
                                    autocorr_wavelet(thresh_filter, jc), jc);
  const double mult = policy.multiplier(x.size());
  const Index len = p.ext.values.size();

  for (int j = 1; j <= p.j0; ++j) {
    const Index centre_offset = ndwt_offset(thresh_filter.length(), j);
    // One variance per original time point; coefficients look it up.
    VectorXd sigma(x.size());
    for (Index t = 0; t < x.size(); ++t) {
      sigma(t) = std::sqrt(coefficient_variance(spectrum->S, cross, j, t));
    }
    VectorXd& d = p.pyr.detail_at(j);
    for (Index k = 0; k < d.size(); ++k) {
      const Index centre = detail::wrap(coefficient_support_start(p.pyr, j, k) + centre_offset, len);
      const double lambda = sigma(original_time(centre, p.ext.descriptor)) * mult;
      d(k) = threshold(d(k), lambda, policy.type);
    }
  }

  TrendEstimate est;
  est.T_hat = invert_to_window(p);
  est.method = TrendMethod::Nonlinear;
  est.transform = transform;
  est.max_scale = p.j0;
  return est;
}

TrendEstimate estimate_trend(const VectorXd& x, const TrendConfig& config, const SpectrumEstimate* spectrum) {
  if (config.method == TrendMethod::Linear) {
    return linear_trend(x, config.filter, config.max_scale, config.transform, config.boundary);
  }
  return nonlinear_trend(x, spectrum, config.filter, config.max_scale, config.policy, config.transform,
                         config.boundary);
}

MatrixXd linear_trend_operator(Index n, const TrendConfig& config) {
  MatrixXd r(n, n);
  VectorXd unit = VectorXd::Zero(n);
  for (Index s = 0; s < n; ++s) {
    unit(s) = 1.0;
    r.col(s) = linear_trend(unit, config.filter, config.max_scale, config.transform, config.boundary).T_hat;
    unit(s) = 0.0;
  }
  return r;
}

TrendEstimate analytic_ci(const VectorXd& x, TrendEstimate estimate, const TrendConfig& config,
                          const LacvEstimate& lacv, double alpha) {
  if (config.method != TrendMethod::Linear || config.transform != TransformMode::Decimated) {
    throw Error(Errc::MethodMismatch, "analytic intervals need the linear estimator with the DWT");
  }
  const Index n = x.size();
  if (n > kAnalyticCiMaxLength) {
    throw Error(Errc::SeriesTooLong, "analytic intervals are limited to n <= 8192 (got " +
                                         std::to_string(n) + "); use a bootstrap interval instead");
  }
  if (lacv.lacv.rows() != n) {
    throw Error(Errc::DimensionMismatch, "local autocovariance has the wrong number of rows");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::InvalidArgument, "alpha must be in (0, 1)");

  const MatrixXd r = linear_trend_operator(n, config);
  const Index band = lacv.lag_max;
  const double z = normal_quantile(1.0 - alpha / 2.0);

  // Var(T_t) = sum_{s,u} r_ts r_tu c(max(s,u), |u - s|), banded at lag_max.
  VectorXd var = VectorXd::Zero(n);
  for (Index t = 0; t < n; ++t) {
    const auto row = r.row(t);
    double acc = 0.0;
    for (Index u = 0; u < n; ++u) {
      const double ru = row(u);
      if (ru == 0.0) continue;
      acc += ru * ru * lacv.lacv(u, 0);
      const Index s_lo = std::max<Index>(0, u - band);
      for (Index s = s_lo; s < u; ++s) {
        acc += 2.0 * row(s) * ru * lacv.lacv(u, u - s);
      }
    }
    var(t) = std::max(0.0, acc);
  }
  const VectorXd half = z * var.cwiseSqrt();
  estimate.ci_lo = estimate.T_hat - half;
  estimate.ci_hi = estimate.T_hat + half;
  estimate.ci_type = CiType::Analytic;
  estimate.sig_level = alpha;
  estimate.reps = 0;
  return estimate;
}

int analytic_ci_spectrum_depth(Index n, int trend_max_scale) {
  return std::min(floor_log2(n), trend_max_scale + 2);
}

Index min_bootstrap_reps(double alpha) {
  return std::max<Index>(20, static_cast<Index>(std::ceil(2.0 / alpha)));
}

TrendEstimate bootstrap_ci(TrendEstimate estimate, const SpectrumEstimate& spectrum,
                           const TrendConfig& config, const BootstrapOptions& options) {
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw Error(Errc::InvalidArgument, "alpha must be in (0, 1)");
  }
  if (options.type != CiType::BootNormal && options.type != CiType::BootPercentile) {
    throw Error(Errc::InvalidArgument, "bootstrap intervals are 'normal' or 'percentile'");
  }
  const Index reps = options.reps;
  if (reps < min_bootstrap_reps(options.alpha)) {
    throw Error(Errc::TooFewReps, "need at least " + std::to_string(min_bootstrap_reps(options.alpha)) +
                                      " replicates, got " + std::to_string(reps));
  }
  const Index n = estimate.T_hat.size();
  if (spectrum.S.cols() != n) {
    throw Error(Errc::DimensionMismatch, "spectrum and trend lengths differ");
  }
  const MatrixXd amplitude = spectrum.S.cwiseMax(0.0);

  MatrixXd boot(reps, n);
  auto run = [&](Index first, Index last) {
    for (Index b = first; b < last; ++b) {
      const std::uint64_t seed = options.seed ^ static_cast<std::uint64_t>(b + 1);
      VectorXd xb = estimate.T_hat + synthesize_lsw(amplitude, spectrum.filter, seed);
      boot.row(b) = estimate_trend(xb, config, &spectrum).T_hat.transpose();
    }
  };

  const int threads = std::clamp<int>(options.threads, 1, static_cast<int>(reps));
  if (threads == 1) {
    run(0, reps);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) {
      const Index first = reps * i / threads;
      const Index last = reps * (i + 1) / threads;
      pool.emplace_back(run, first, last);
    }
  }

  VectorXd lo(n);
  VectorXd hi(n);
  if (options.type == CiType::BootNormal) {
    const double z = normal_quantile(1.0 - options.alpha / 2.0);
    for (Index t = 0; t < n; ++t) {
      const auto col = boot.col(t);
      const double mean = col.mean();
      const double var = (col.array() - mean).square().sum() / static_cast<double>(reps - 1);
      const double half = z * std::sqrt(var);
      lo(t) = estimate.T_hat(t) - half;
      hi(t) = estimate.T_hat(t) + half;
    }
  } else {
    std::vector<double> values(static_cast<std::size_t>(reps));
    for (Index t = 0; t < n; ++t) {
      for (Index b = 0; b < reps; ++b) values[static_cast<std::size_t>(b)] = boot(b, t);
      lo(t) = interpolated_quantile(values, options.alpha / 2.0);
      hi(t) = interpolated_quantile(values, 1.0 - options.alpha / 2.0);
    }
  }
  estimate.ci_lo = std::move(lo);
  estimate.ci_hi = std::move(hi);
  estimate.ci_type = options.type;
  estimate.sig_level = options.alpha;
  estimate.reps = reps;
  return estimate;
}

}  // namespace tlsw
