// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>

#include "tlsw/filters.hpp"
#include "tlsw/lacv.hpp"
#include "tlsw/spectrum.hpp"
#include "tlsw/transforms.hpp"
#include "tlsw/types.hpp"

namespace tlsw {

enum class TrendMethod { Linear, Nonlinear };
enum class ThresholdType { Hard, Soft };
enum class CiType { None, Analytic, BootNormal, BootPercentile };

std::string_view trend_method_name(TrendMethod method);
std::string_view threshold_type_name(ThresholdType type);
std::string_view ci_type_name(CiType type);
std::string_view transform_mode_name(TransformMode mode);

struct ThresholdPolicy {
  ThresholdType type = ThresholdType::Hard;
  /// true: lambda = sigma sqrt(2 ln n); false: lambda = sigma ln n.
  bool normal_assumption = true;

  double multiplier(Index n) const {
    const double ln_n = std::log(static_cast<double>(n));
    return normal_assumption ? std::sqrt(2.0 * ln_n) : ln_n;
  }
};

/// Soft: sgn(d)(|d| - lambda)_+; hard: d 1{|d| > lambda}. Throws NegativeThreshold.
template <typename Scalar>
Scalar threshold(Scalar value, Scalar lambda, ThresholdType type) {
  if (!(lambda >= Scalar(0))) throw Error(Errc::NegativeThreshold, "threshold must be >= 0");
  using std::abs;
  const Scalar mag = abs(value);
  if (!(mag > lambda)) return Scalar(0);
  if (type == ThresholdType::Hard) return value;
  return value > Scalar(0) ? mag - lambda : lambda - mag;
}

struct TrendEstimate {
  VectorXd T_hat;
  std::optional<VectorXd> ci_lo;
  std::optional<VectorXd> ci_hi;
  TrendMethod method = TrendMethod::Linear;
  TransformMode transform = TransformMode::Nondecimated;
  int max_scale = 0;
  double sig_level = 0.05;
  CiType ci_type = CiType::None;
  Index reps = 0;
};

/// Everything needed to re-run a trend estimator on a new series.
struct TrendConfig {
  TrendMethod method = TrendMethod::Linear;
  WaveletFilter filter = make_filter(Family::ExtremalPhase, 4);
  std::optional<int> max_scale;
  TransformMode transform = TransformMode::Nondecimated;
  bool boundary = true;
  ThresholdPolicy policy;
};

/// Keeps scaling coefficients and every detail coefficient whose support
/// reaches outside the original data window; zeroes the rest and inverts.
TrendEstimate linear_trend(const VectorXd& x, const WaveletFilter& filter, std::optional<int> max_scale,
                           TransformMode transform, bool boundary);

/// sigma^2_{r,s} = sum_l C_{r,l} S_l(s), floored at zero. `spectrum` is
/// J0_S x n. Throws MatrixMismatch.
double coefficient_variance(const MatrixXd& spectrum, const CorrectionMatrix& cross, int scale, Index time);

/// Coefficient-specific thresholding with variances from a spectrum estimate
/// built on the generating wavelet. Throws MissingSpectrum.
TrendEstimate nonlinear_trend(const VectorXd& x, const SpectrumEstimate* spectrum,
                              const WaveletFilter& thresh_filter, std::optional<int> max_scale,
                              const ThresholdPolicy& policy, TransformMode transform, bool boundary);

/// Dispatches on config.method; `spectrum` is only read for nonlinear.
TrendEstimate estimate_trend(const VectorXd& x, const TrendConfig& config,
                             const SpectrumEstimate* spectrum = nullptr);

/// Matrix R with T_hat = R x for the linear estimator (columns are responses
/// to unit vectors).
MatrixXd linear_trend_operator(Index n, const TrendConfig& config);

/// Normal-theory pointwise interval for the linear decimated estimator,
/// T_hat_t +- z_{1-alpha/2} sqrt(sum_{s,u} R_ts R_tu c(max(s,u), |u-s|)).
/// Throws MethodMismatch and SeriesTooLong (n > 8192).
TrendEstimate analytic_ci(const VectorXd& x, TrendEstimate estimate, const TrendConfig& config,
                          const LacvEstimate& lacv, double alpha);

constexpr Index kAnalyticCiMaxLength = 8192;

/// Spectrum depth for the autocovariance fed to analytic_ci. The estimator
/// keeps the scaling coefficients at `trend_max_scale`, so its variance comes
/// from coarser scales than the trend's own: min(floor(log2 n), J0 + 2).
int analytic_ci_spectrum_depth(Index n, int trend_max_scale);

struct BootstrapOptions {
  Index reps = 200;
  double alpha = 0.05;
  CiType type = CiType::BootNormal;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Minimum accepted bootstrap size: max(20, ceil(2 / alpha)).
Index min_bootstrap_reps(double alpha);

/// Regenerates X^(b) = T_hat + LSW(max(S_hat, 0)) with replicate b seeded by
/// seed ^ b and re-estimates the trend with `config`. Output does not depend
/// on the thread count. Throws TooFewReps.
TrendEstimate bootstrap_ci(TrendEstimate estimate, const SpectrumEstimate& spectrum,
                           const TrendConfig& config, const BootstrapOptions& options);

}  // namespace tlsw
