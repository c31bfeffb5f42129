// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "tlsw/filters.hpp"
#include "tlsw/types.hpp"

namespace tlsw {

/// L_j = (2^j - 1)(N_h - 1) + 1.
constexpr Index support_length(Index filter_length, int scale) {
  return ((Index{1} << scale) - 1) * (filter_length - 1) + 1;
}

/// Discrete (non-decimated) wavelets psi_j for j = 1..max_scale.
class DiscreteWavelet {
 public:
  DiscreteWavelet() = default;
  explicit DiscreteWavelet(std::vector<VectorXd> scale_vectors)
      : vectors_(std::move(scale_vectors)) {}

  int max_scale() const { return static_cast<int>(vectors_.size()); }
  /// psi_j, 1-based scale.
  const VectorXd& operator[](int scale) const { return vectors_.at(scale - 1); }
  Index length(int scale) const { return (*this)[scale].size(); }

 private:
  std::vector<VectorXd> vectors_;
};

/// psi_1 = g, psi_{j+1,l} = sum_k h_{l-2k} psi_{j,k}.
DiscreteWavelet discrete_wavelet(const WaveletFilter& filter, int max_scale);

/// Psi_j(tau) = sum_t psi_j(t) psi_j(t + tau); stored for tau >= 0, read symmetrically.
class AutocorrelationWavelet {
 public:
  AutocorrelationWavelet() = default;
  explicit AutocorrelationWavelet(std::vector<VectorXd> one_sided)
      : values_(std::move(one_sided)) {}

  int max_scale() const { return static_cast<int>(values_.size()); }

  /// Largest |tau| with possibly non-zero value, i.e. L_j - 1.
  Index max_lag(int scale) const { return values_.at(scale - 1).size() - 1; }

  double operator()(int scale, Index tau) const {
    const auto& v = values_.at(scale - 1);
    const Index a = tau < 0 ? -tau : tau;
    return a < v.size() ? v(a) : 0.0;
  }

 private:
  std::vector<VectorXd> values_;
};

AutocorrelationWavelet autocorr_wavelet(const DiscreteWavelet& wavelet);

/// Convenience: filter -> discrete wavelet -> autocorrelation wavelet.
AutocorrelationWavelet autocorr_wavelet(const WaveletFilter& filter, int max_scale);

enum class CorrectionKind { A, ALagged, DDiff, CCross };

/// Truncated J0 x J0 inner-product matrix of autocorrelation wavelets.
struct CorrectionMatrix {
  CorrectionKind kind = CorrectionKind::A;
  int j0 = 0;
  Index lag = 0;       // p for ALagged / DDiff
  int diff_order = 0;  // d for DDiff
  MatrixXd entries;
  std::optional<MatrixXd> inverse;  // absent for CCross and ALagged
  double condition_number = 1.0;
};

/// A_{jl} = sum_tau Psi_j(tau) Psi_l(tau), with inverse. Throws SingularMatrix.
CorrectionMatrix a_matrix(const AutocorrelationWavelet& acw, int j0);

/// A^p_{jl} = sum_tau Psi_j(tau) Psi_l(tau - p).
CorrectionMatrix lagged_a_matrix(const AutocorrelationWavelet& acw, int j0, Index lag);

/// Bias operator of the normalized differenced periodogram.
/// order 1: D^p = A - A^p; order 2 (lag 1 only): A - (4/3) A^1 + (1/3) A^2.
CorrectionMatrix diff_correction_matrix(const AutocorrelationWavelet& acw, int j0, Index lag,
                                        int diff_order);

/// Rows index the thresholding wavelet's scales, columns the generating
/// wavelet's: C_{r,l} = sum_tau Psi^thresh_r(tau) Psi^gen_l(tau), so that
/// Var(d_r) ~ sum_l C_{r,l} S_l.
CorrectionMatrix cross_a_matrix(const AutocorrelationWavelet& acw_generating,
                                const AutocorrelationWavelet& acw_thresholding, int j0);

}  // namespace tlsw
