// SPDX-License-Identifier: Apache-2.0
#include "tlsw/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "tlsw/transforms.hpp"
#include "tlsw/wavelets.hpp"

namespace tlsw {
namespace {

std::mt19937_64 scale_engine(std::uint64_t seed, int scale) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(scale)};
  return std::mt19937_64(seq);
}

void check_nonnegative(const MatrixXd& spectrum) {
  for (Index j = 0; j < spectrum.rows(); ++j) {
    for (Index k = 0; k < spectrum.cols(); ++k) {
      const double v = spectrum(j, k);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw Error(Errc::NegativeSpectrum, "spectrum entry at scale " + std::to_string(j + 1) +
                                                ", time " + std::to_string(k) +
                                                " is negative or not finite");
      }
    }
  }
}

}  // namespace

InnovationSource gaussian_innovations() {
  return [](std::mt19937_64& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); };
}

MatrixXd sample_spec(const SpectrumSpec& spec, Index n) {
  const int levels = floor_log2(n);
  MatrixXd out;
  if (const auto* m = std::get_if<MatrixXd>(&spec)) {
    if (m->rows() != levels || m->cols() != n) {
      throw Error(Errc::DimensionMismatch,
                  "spectrum matrix must be " + std::to_string(levels) + " x " + std::to_string(n) +
                      ", got " + std::to_string(m->rows()) + " x " + std::to_string(m->cols()));
    }
    out = *m;
  } else {
    const auto& fns = std::get<std::vector<RescaledFunction>>(spec);
    if (static_cast<Index>(fns.size()) > levels) {
      throw Error(Errc::DimensionMismatch, "spectrum has " + std::to_string(fns.size()) +
                                               " scales, at most " + std::to_string(levels) +
                                               " allowed");
    }
    out = MatrixXd::Zero(levels, n);
    for (std::size_t j = 0; j < fns.size(); ++j) {
      if (!fns[j]) continue;
      for (Index t = 0; t < n; ++t) out(static_cast<Index>(j), t) = fns[j](rescaled_time(t, n));
    }
  }
  check_nonnegative(out);
  return out;
}

VectorXd sample_trend(const TrendSpec& trend, Index n) {
  if (const auto* v = std::get_if<VectorXd>(&trend)) {
    if (v->size() != n) {
      throw Error(Errc::DimensionMismatch, "trend has length " + std::to_string(v->size()) +
                                               ", expected " + std::to_string(n));
    }
    if (!v->allFinite()) throw Error(Errc::InvalidArgument, "trend values must be finite");
    return *v;
  }
  const auto& fn = std::get<RescaledFunction>(trend);
  VectorXd out(n);
  for (Index t = 0; t < n; ++t) out(t) = fn(rescaled_time(t, n));
  return out;
}

VectorXd synthesize_lsw(const MatrixXd& spectrum, const WaveletFilter& filter, std::uint64_t seed,
                        const InnovationSource& innovations) {
  const Index n = spectrum.cols();
  if (spectrum.rows() > floor_log2(n)) {
    throw Error(Errc::DimensionMismatch, "spectrum has more than floor(log2 n) scales");
  }
  check_nonnegative(spectrum);
  VectorXd out = VectorXd::Zero(n);
  if (spectrum.rows() == 0) return out;

  const DiscreteWavelet psi = discrete_wavelet(filter, static_cast<int>(spectrum.rows()));
  for (int j = 1; j <= psi.max_scale(); ++j) {
    const auto row = spectrum.row(j - 1);
    if ((row.array() == 0.0).all()) continue;

    const VectorXd& w = psi[j];
    const Index len = w.size();
    const Index c = ndwt_offset(filter.length(), j);
    // psi_j placed at k - c covers times [k - c, k - c + L - 1]; every k whose
    // support meets [0, n) contributes, amplitudes clamped to the edge values.
    const Index k_first = c - len + 1;
    const Index count = n + len - 1;
    auto rng = scale_engine(seed, j);
    VectorXd amp(count);
    for (Index i = 0; i < count; ++i) {
      const Index k = std::clamp<Index>(k_first + i, 0, n - 1);
      amp(i) = std::sqrt(row(k)) * innovations(rng);
    }
    for (Index i = 0; i < count; ++i) {
      const double a = amp(i);
      if (a == 0.0) continue;
      const Index start = k_first + i - c;
      const Index l_lo = std::max<Index>(0, -start);
      const Index l_hi = std::min<Index>(len, n - start);
      for (Index l = l_lo; l < l_hi; ++l) out(start + l) += a * w(l);
    }
  }
  return out;
}

VectorXd tlsw_sim(const TrendSpec& trend, const SpectrumSpec& spec, Index n,
                  const WaveletFilter& filter, std::uint64_t seed,
                  const InnovationSource& innovations) {
  if (n < 8) throw Error(Errc::SeriesTooShort, "need at least 8 points");
  const bool functional = std::holds_alternative<RescaledFunction>(trend) ||
                          std::holds_alternative<std::vector<RescaledFunction>>(spec);
  if (functional && !is_power_of_two(n)) {
    throw Error(Errc::NonDyadicFunctionalSpec,
                "functional trend or spectrum needs a power-of-two length; pass numeric values for n = " +
                    std::to_string(n));
  }
  const MatrixXd s = sample_spec(spec, n);
  VectorXd x = synthesize_lsw(s, filter, seed, innovations);
  x += sample_trend(trend, n);
  return x;
}

}  // namespace tlsw
