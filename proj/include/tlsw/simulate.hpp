// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <variant>
#include <vector>

#include "tlsw/filters.hpp"
#include "tlsw/types.hpp"

namespace tlsw {

/// A function on rescaled time z in (0, 1).
using RescaledFunction = std::function<double(double)>;

/// Trend: explicit values (length n) or a function evaluated at z = (t + 0.5) / n.
using TrendSpec = std::variant<VectorXd, RescaledFunction>;

/// Spectrum: J x n matrix of S_j(k/n), or one function per scale where an
/// empty function means zero power at that scale.
using SpectrumSpec = std::variant<MatrixXd, std::vector<RescaledFunction>>;

/// Draws i.i.d. zero-mean unit-variance innovations.
using InnovationSource = std::function<double(std::mt19937_64&)>;

InnovationSource gaussian_innovations();

/// Rescaled-time grid point for sample t of n.
constexpr double rescaled_time(Index t, Index n) {
  return (static_cast<double>(t) + 0.5) / static_cast<double>(n);
}

/// Evaluates a spectrum specification as a J x n matrix, J = floor(log2 n).
/// Throws NegativeSpectrum and DimensionMismatch.
MatrixXd sample_spec(const SpectrumSpec& spec, Index n);

/// Evaluates the trend as a length-n vector.
VectorXd sample_trend(const TrendSpec& trend, Index n);

/// Stochastic LSW part: sum_j sum_k S_j(k)^{1/2} psi_j centred at k times xi_{j,k}.
/// `spectrum` may have any number of rows <= floor(log2 n); entries must be
/// nonnegative. Scale j draws from its own generator seeded with (seed, j).
VectorXd synthesize_lsw(const MatrixXd& spectrum, const WaveletFilter& filter, std::uint64_t seed,
                        const InnovationSource& innovations = gaussian_innovations());

/// X_t = T_t + LSW noise. Functional trend or spectrum requires dyadic n.
/// Throws NegativeSpectrum, DimensionMismatch, NonDyadicFunctionalSpec, SeriesTooShort.
VectorXd tlsw_sim(const TrendSpec& trend, const SpectrumSpec& spec, Index n,
                  const WaveletFilter& filter, std::uint64_t seed,
                  const InnovationSource& innovations = gaussian_innovations());

}  // namespace tlsw
