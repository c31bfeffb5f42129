// SPDX-License-Identifier: Apache-2.0
#include "tlsw/transforms.hpp"

namespace tlsw {

std::string_view extension_policy_name(ExtensionPolicy policy) {
  switch (policy) {
    case ExtensionPolicy::TrendReflect: return "trend_reflect";
    case ExtensionPolicy::LocalTrendReflect: return "local_trend_reflect";
    case ExtensionPolicy::SymmetricTriple: return "symmetric_triple";
    case ExtensionPolicy::None: return "none";
  }
  return "none";
}

}  // namespace tlsw
