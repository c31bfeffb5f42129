// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

#include "tlsw/types.hpp"

namespace tlsw {

enum class Family { ExtremalPhase, LeastAsymmetric };

/// "DaubExPhase" / "DaubLeAsymm"; also accepts "ExtremalPhase" / "LeastAsymmetric".
Family parse_family(std::string_view name);
std::string_view family_name(Family family);

/// Orthonormal Daubechies quadrature-mirror pair. Indexing is 0-based with
/// g_k = (-1)^k h_{N-1-k}.
struct WaveletFilter {
  Family family = Family::ExtremalPhase;
  int filter_number = 1;
  VectorXd h;
  VectorXd g;

  Index length() const { return h.size(); }
};

/// ExtremalPhase accepts 1..10, LeastAsymmetric 4..10. Throws UnsupportedFilter.
WaveletFilter make_filter(Family family, int filter_number);

}  // namespace tlsw
