// SPDX-License-Identifier: Apache-2.0
#include "tlsw/wavelets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tlsw {
namespace {

constexpr double kMaxCondition = 1e12;

void require_scales(const AutocorrelationWavelet& acw, int j0) {
  if (j0 < 1) throw Error(Errc::InvalidArgument, "J0 must be >= 1");
  if (acw.max_scale() < j0) {
    throw Error(Errc::DimensionMismatch, "autocorrelation wavelet covers " +
                                             std::to_string(acw.max_scale()) +
                                             " scales, need " + std::to_string(j0));
  }
}

// sum_tau Psi_a(tau) Psi_b(tau - lag) over the union of supports.
double shifted_inner(const AutocorrelationWavelet& pa, int a, const AutocorrelationWavelet& pb,
                     int b, Index lag) {
  const Index ra = pa.max_lag(a);
  double sum = 0.0;
  for (Index tau = -ra; tau <= ra; ++tau) {
    sum += pa(a, tau) * pb(b, tau - lag);
  }
  return sum;
}

MatrixXd lagged_entries(const AutocorrelationWavelet& acw, int j0, Index lag) {
  MatrixXd m(j0, j0);
  for (int j = 1; j <= j0; ++j) {
    for (int l = 1; l <= j0; ++l) {
      m(j - 1, l - 1) = shifted_inner(acw, j, acw, l, lag);
    }
  }
  return m;
}

void attach_inverse(CorrectionMatrix& cm) {
  Eigen::JacobiSVD<MatrixXd> svd(cm.entries);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  cm.condition_number = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  if (!(cm.condition_number <= kMaxCondition)) {
    throw Error(Errc::SingularMatrix,
                "correction matrix condition number " + std::to_string(cm.condition_number) +
                    " exceeds 1e12");
  }
  cm.inverse = cm.entries.partialPivLu().inverse();
}

}  // namespace

DiscreteWavelet discrete_wavelet(const WaveletFilter& filter, int max_scale) {
  if (max_scale < 1) throw Error(Errc::InvalidArgument, "max scale must be >= 1");
  const Index nh = filter.length();
  std::vector<VectorXd> out;
  out.reserve(static_cast<std::size_t>(max_scale));
  out.push_back(filter.g);
  for (int j = 1; j < max_scale; ++j) {
    const VectorXd& prev = out.back();
    VectorXd next = VectorXd::Zero(support_length(nh, j + 1));
    // psi_{j+1,l} = sum_k h_{l-2k} psi_{j,k}
    for (Index k = 0; k < prev.size(); ++k) {
      for (Index m = 0; m < nh; ++m) {
        next(2 * k + m) += filter.h(m) * prev(k);
      }
    }
    out.push_back(std::move(next));
  }
  return DiscreteWavelet(std::move(out));
}

AutocorrelationWavelet autocorr_wavelet(const DiscreteWavelet& wavelet) {
  std::vector<VectorXd> values;
  values.reserve(static_cast<std::size_t>(wavelet.max_scale()));
  for (int j = 1; j <= wavelet.max_scale(); ++j) {
    const VectorXd& psi = wavelet[j];
    const Index len = psi.size();
    VectorXd one_sided(len);
    for (Index tau = 0; tau < len; ++tau) {
      one_sided(tau) = psi.head(len - tau).dot(psi.tail(len - tau));
    }
    values.push_back(std::move(one_sided));
  }
  return AutocorrelationWavelet(std::move(values));
}

AutocorrelationWavelet autocorr_wavelet(const WaveletFilter& filter, int max_scale) {
  return autocorr_wavelet(discrete_wavelet(filter, max_scale));
}

CorrectionMatrix a_matrix(const AutocorrelationWavelet& acw, int j0) {
  require_scales(acw, j0);
  CorrectionMatrix cm;
  cm.kind = CorrectionKind::A;
  cm.j0 = j0;
  cm.entries = lagged_entries(acw, j0, 0);
  attach_inverse(cm);
  return cm;
}

CorrectionMatrix lagged_a_matrix(const AutocorrelationWavelet& acw, int j0, Index lag) {
  require_scales(acw, j0);
  if (lag < 0) throw Error(Errc::InvalidArgument, "lag must be >= 0");
  CorrectionMatrix cm;
  cm.kind = CorrectionKind::ALagged;
  cm.j0 = j0;
  cm.lag = lag;
  cm.entries = lagged_entries(acw, j0, lag);
  return cm;
}

CorrectionMatrix diff_correction_matrix(const AutocorrelationWavelet& acw, int j0, Index lag,
                                        int diff_order) {
  require_scales(acw, j0);
  const bool valid = (diff_order == 1 && lag >= 1) || (diff_order == 2 && lag == 1);
  if (!valid) {
    throw Error(Errc::InvalidDiffSpec, "unsupported differencing (lag " + std::to_string(lag) +
                                           ", order " + std::to_string(diff_order) + ")");
  }
  CorrectionMatrix cm;
  cm.kind = CorrectionKind::DDiff;
  cm.j0 = j0;
  cm.lag = lag;
  cm.diff_order = diff_order;
  const MatrixXd a = lagged_entries(acw, j0, 0);
  if (diff_order == 1) {
    cm.entries = a - lagged_entries(acw, j0, lag);
  } else {
    cm.entries = a - (4.0 / 3.0) * lagged_entries(acw, j0, 1) +
                 (1.0 / 3.0) * lagged_entries(acw, j0, 2);
  }
  attach_inverse(cm);
  return cm;
}

CorrectionMatrix cross_a_matrix(const AutocorrelationWavelet& acw_generating,
                                const AutocorrelationWavelet& acw_thresholding, int j0) {
  require_scales(acw_generating, j0);
  require_scales(acw_thresholding, j0);
  CorrectionMatrix cm;
  cm.kind = CorrectionKind::CCross;
  cm.j0 = j0;
  cm.entries.resize(j0, j0);
  for (int r = 1; r <= j0; ++r) {
    for (int l = 1; l <= j0; ++l) {
      cm.entries(r - 1, l - 1) = shifted_inner(acw_thresholding, r, acw_generating, l, 0);
    }
  }
  return cm;
}

}  // namespace tlsw
