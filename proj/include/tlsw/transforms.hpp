// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "tlsw/filters.hpp"
#include "tlsw/types.hpp"
#include "tlsw/wavelets.hpp"

namespace tlsw {

enum class ExtensionPolicy { TrendReflect, LocalTrendReflect, SymmetricTriple, None };

/// Dyadic pads to the next power of two; Minimal stops at 2n (TrendReflect)
/// or 3n (SymmetricTriple).
enum class ExtensionTarget { Dyadic, Minimal };

struct ExtensionDescriptor {
  ExtensionPolicy policy = ExtensionPolicy::None;
  Index original_start = 0;
  Index original_len = 0;
  Index extended_len = 0;

  template <typename Derived>
  auto window(const Eigen::MatrixBase<Derived>& extended) const {
    return extended.segment(original_start, original_len);
  }
};

template <typename Scalar>
struct ExtendedSeries {
  Vector<Scalar> values;
  ExtensionDescriptor descriptor;
};

std::string_view extension_policy_name(ExtensionPolicy policy);

namespace detail {

// Value of the infinite odd (point) reflection of `base` at integer index i
// about the levels `left` and `right`: b_{-k} = 2 left - b_k and
// b_{m-1+k} = 2 right - b_{m-1-k}.
template <typename Derived, typename Scalar = typename Derived::Scalar>
Scalar odd_reflect_at(const Eigen::MatrixBase<Derived>& base, Index i, Scalar left, Scalar right) {
  const Index m = base.size();
  Scalar offset = Scalar(0);
  Scalar sign = Scalar(1);
  for (;;) {
    if (i < 0) {
      offset += sign * Scalar(2) * left;
      sign = -sign;
      i = -i;
    } else if (i > m - 1) {
      offset += sign * Scalar(2) * right;
      sign = -sign;
      i = 2 * (m - 1) - i;
    } else {
      return offset + sign * base(i);
    }
  }
}

template <typename Derived>
typename Derived::Scalar odd_reflect_at(const Eigen::MatrixBase<Derived>& base, Index i) {
  return odd_reflect_at(base, i, base(0), base(base.size() - 1));
}

// Value at the first point of the least-squares line through x(0..w-1).
template <typename Derived>
typename Derived::Scalar line_fit_start(const Eigen::MatrixBase<Derived>& x, Index w) {
  using Scalar = typename Derived::Scalar;
  const Scalar tbar = Scalar(w - 1) / Scalar(2);
  Scalar xbar = Scalar(0);
  for (Index i = 0; i < w; ++i) xbar += x(i);
  xbar /= Scalar(w);
  Scalar sxy = Scalar(0);
  Scalar sxx = Scalar(0);
  for (Index i = 0; i < w; ++i) {
    sxy += (Scalar(i) - tbar) * (x(i) - xbar);
    sxx += (Scalar(i) - tbar) * (Scalar(i) - tbar);
  }
  return xbar - sxy / sxx * tbar;
}

}  // namespace detail

/// Points used by LocalTrendReflect to fit each end line.
constexpr Index local_fit_width(Index n) {
  Index w = 8;
  while ((w + 1) * (w + 1) <= 4 * n) ++w;  // floor(2 sqrt(n)), at least 8
  return w < n ? w : n;
}

/// Boundary extension that places the original series strictly inside a
/// longer one. TrendReflect: odd reflection about the end values to >= 2n.
/// LocalTrendReflect: the same about the values of least-squares lines
/// fitted to the local_fit_width(n) points at each end. SymmetricTriple:
/// [reverse(x), x, reverse(x)], odd-reflection padded beyond 3n.
/// Throws SeriesTooShort for fewer than 8 points.
template <typename Derived>
ExtendedSeries<typename Derived::Scalar> extend_series(const Eigen::MatrixBase<Derived>& x,
                                                       ExtensionPolicy policy,
                                                       ExtensionTarget target = ExtensionTarget::Dyadic) {
  using Scalar = typename Derived::Scalar;
  const Index n = x.size();
  if (n < 8) throw Error(Errc::SeriesTooShort, "need at least 8 points, got " + std::to_string(n));

  ExtendedSeries<Scalar> out;
  out.descriptor.policy = policy;
  out.descriptor.original_len = n;

  if (policy == ExtensionPolicy::None) {
    out.values = x;
    out.descriptor.original_start = 0;
    out.descriptor.extended_len = n;
    return out;
  }

  Vector<Scalar> base;
  Index base_offset = 0;  // position of x inside base
  Index minimal = 0;
  if (policy == ExtensionPolicy::TrendReflect || policy == ExtensionPolicy::LocalTrendReflect) {
    base = x;
    minimal = 2 * n;
  } else {
    base.resize(3 * n);
    base.head(n) = x.reverse();
    base.segment(n, n) = x;
    base.tail(n) = x.reverse();
    base_offset = n;
    minimal = 3 * n;
  }

  const Index total = target == ExtensionTarget::Dyadic ? next_power_of_two(minimal) : minimal;
  const Index start = (total - n) / 2;
  Scalar left = base(0);
  Scalar right = base(base.size() - 1);
  if (policy == ExtensionPolicy::LocalTrendReflect) {
    const Index w = local_fit_width(n);
    left = detail::line_fit_start(base.head(w), w);
    right = detail::line_fit_start(base.tail(w).reverse(), w);
  }
  out.values.resize(total);
  for (Index i = 0; i < total; ++i) {
    out.values(i) = detail::odd_reflect_at(base, i - start + base_offset, left, right);
  }
  out.descriptor.original_start = start;
  out.descriptor.extended_len = total;
  return out;
}

enum class TransformMode { Decimated, Nondecimated };

/// Wavelet coefficients of a (possibly extended) series.
///
/// Nondecimated: detail[j-1] and scaling have the series length and are
/// time-aligned, i.e. entry t holds the coefficient whose filter support is
/// centred on t (raw index t - ndwt_offset(N_h, j)). Decimated: detail[j-1]
/// has length n / 2^j and entry k has support starting at 2^j k.
template <typename Scalar>
struct CoefficientPyramid {
  TransformMode mode = TransformMode::Nondecimated;
  WaveletFilter filter;
  std::vector<Vector<Scalar>> detail;
  Vector<Scalar> scaling;
  Index n_original = 0;
  ExtensionDescriptor extension;

  int levels() const { return static_cast<int>(detail.size()); }
  Vector<Scalar>& detail_at(int scale) { return detail.at(scale - 1); }
  const Vector<Scalar>& detail_at(int scale) const { return detail.at(scale - 1); }
};

/// Shift between raw and aligned NDWT indices: ceil((L_j - 1) / 2).
constexpr Index ndwt_offset(Index filter_length, int scale) {
  const Index span = support_length(filter_length, scale) - 1;
  return span - span / 2;
}

namespace detail {

inline Index wrap(Index i, Index n) {
  const Index r = i % n;
  return r < 0 ? r + n : r;
}

template <typename Scalar>
Vector<Scalar> rotate(const Vector<Scalar>& v, Index shift) {
  // out(t) = v(t - shift)
  const Index n = v.size();
  Vector<Scalar> out(n);
  for (Index t = 0; t < n; ++t) out(t) = v(wrap(t - shift, n));
  return out;
}

inline void require_depth(Index n, int j0) {
  if (j0 < 1) throw Error(Errc::InvalidArgument, "J0 must be >= 1");
  if (j0 > floor_log2(n)) {
    throw Error(Errc::ScaleTooDeep, "J0 = " + std::to_string(j0) + " exceeds floor(log2(" +
                                        std::to_string(n) + "))");
  }
}

}  // namespace detail

/// Periodic a-trous transform; detail j is the circular correlation of x
/// with psi_j, stored time-aligned. Throws ScaleTooDeep.
template <typename Derived>
CoefficientPyramid<typename Derived::Scalar> ndwt_forward(const Eigen::MatrixBase<Derived>& x,
                                                          const WaveletFilter& filter, int j0) {
  using Scalar = typename Derived::Scalar;
  const Index n = x.size();
  detail::require_depth(n, j0);
  const Vector<Scalar> h = filter.h.cast<Scalar>();
  const Vector<Scalar> g = filter.g.cast<Scalar>();
  const Index nh = filter.length();

  CoefficientPyramid<Scalar> pyr;
  pyr.mode = TransformMode::Nondecimated;
  pyr.filter = filter;
  pyr.n_original = n;
  pyr.extension = {ExtensionPolicy::None, 0, n, n};

  Vector<Scalar> smooth = x;
  Vector<Scalar> next(n);
  Vector<Scalar> d(n);
  Index step = 1;
  for (int j = 1; j <= j0; ++j) {
    for (Index t = 0; t < n; ++t) {
      Scalar lo = Scalar(0);
      Scalar hi = Scalar(0);
      for (Index k = 0; k < nh; ++k) {
        const Scalar v = smooth(detail::wrap(t + step * k, n));
        lo += h(k) * v;
        hi += g(k) * v;
      }
      next(t) = lo;
      d(t) = hi;
    }
    pyr.detail.push_back(detail::rotate(d, ndwt_offset(nh, j)));
    smooth.swap(next);
    step *= 2;
  }
  pyr.scaling = detail::rotate(smooth, ndwt_offset(nh, j0));
  return pyr;
}

/// Translation-invariant inverse: average of the reconstructions over all
/// shifted orthogonal bases. Throws ModeMismatch for decimated input.
template <typename Scalar>
Vector<Scalar> ndwt_average_basis(const CoefficientPyramid<Scalar>& pyr) {
  if (pyr.mode != TransformMode::Nondecimated) {
    throw Error(Errc::ModeMismatch, "basis averaging needs a nondecimated pyramid");
  }
  const int j0 = pyr.levels();
  const Index nh = pyr.filter.length();
  const Index n = pyr.scaling.size();
  const Vector<Scalar> h = pyr.filter.h.template cast<Scalar>();
  const Vector<Scalar> g = pyr.filter.g.template cast<Scalar>();

  Vector<Scalar> smooth = detail::rotate(pyr.scaling, -ndwt_offset(nh, j0));
  Vector<Scalar> prev(n);
  for (int j = j0; j >= 1; --j) {
    const Index step = Index{1} << (j - 1);
    const Vector<Scalar> d = detail::rotate(pyr.detail_at(j), -ndwt_offset(nh, j));
    prev.setZero();
    // adjoint of the analysis step, halved
    for (Index t = 0; t < n; ++t) {
      const Scalar c = smooth(t);
      const Scalar w = d(t);
      for (Index k = 0; k < nh; ++k) {
        prev(detail::wrap(t + step * k, n)) += h(k) * c + g(k) * w;
      }
    }
    smooth = prev * Scalar(0.5);
  }
  return smooth;
}

/// Periodic orthogonal DWT. Throws NonDyadicLength and ScaleTooDeep.
template <typename Derived>
CoefficientPyramid<typename Derived::Scalar> dwt_forward(const Eigen::MatrixBase<Derived>& x,
                                                         const WaveletFilter& filter, int j0) {
  using Scalar = typename Derived::Scalar;
  const Index n = x.size();
  if (!is_power_of_two(n)) {
    throw Error(Errc::NonDyadicLength, "DWT needs a power-of-two length, got " + std::to_string(n));
  }
  detail::require_depth(n, j0);
  const Vector<Scalar> h = filter.h.cast<Scalar>();
  const Vector<Scalar> g = filter.g.cast<Scalar>();
  const Index nh = filter.length();

  CoefficientPyramid<Scalar> pyr;
  pyr.mode = TransformMode::Decimated;
  pyr.filter = filter;
  pyr.n_original = n;
  pyr.extension = {ExtensionPolicy::None, 0, n, n};

  Vector<Scalar> approx = x;
  for (int j = 1; j <= j0; ++j) {
    const Index m = approx.size();
    Vector<Scalar> lo(m / 2);
    Vector<Scalar> hi(m / 2);
    for (Index k = 0; k < m / 2; ++k) {
      Scalar a = Scalar(0);
      Scalar b = Scalar(0);
      for (Index i = 0; i < nh; ++i) {
        const Scalar v = approx(detail::wrap(2 * k + i, m));
        a += h(i) * v;
        b += g(i) * v;
      }
      lo(k) = a;
      hi(k) = b;
    }
    pyr.detail.push_back(std::move(hi));
    approx = std::move(lo);
  }
  pyr.scaling = std::move(approx);
  return pyr;
}

template <typename Scalar>
Vector<Scalar> dwt_inverse(const CoefficientPyramid<Scalar>& pyr) {
  if (pyr.mode != TransformMode::Decimated) {
    throw Error(Errc::ModeMismatch, "dwt_inverse needs a decimated pyramid");
  }
  const Index nh = pyr.filter.length();
  const Vector<Scalar> h = pyr.filter.h.template cast<Scalar>();
  const Vector<Scalar> g = pyr.filter.g.template cast<Scalar>();

  Vector<Scalar> approx = pyr.scaling;
  for (int j = pyr.levels(); j >= 1; --j) {
    const Vector<Scalar>& d = pyr.detail_at(j);
    const Index half = approx.size();
    const Index m = 2 * half;
    Vector<Scalar> up = Vector<Scalar>::Zero(m);
    for (Index k = 0; k < half; ++k) {
      for (Index i = 0; i < nh; ++i) {
        up(detail::wrap(2 * k + i, m)) += h(i) * approx(k) + g(i) * d(k);
      }
    }
    approx = std::move(up);
  }
  return approx;
}

/// Start index (in the transformed series) of the filter support of a detail
/// coefficient; the support is [start, start + L_j - 1] taken circularly.
template <typename Scalar>
Index coefficient_support_start(const CoefficientPyramid<Scalar>& pyr, int scale, Index k) {
  const Index n = pyr.mode == TransformMode::Decimated
                      ? pyr.detail_at(scale).size() << scale
                      : pyr.detail_at(scale).size();
  if (pyr.mode == TransformMode::Decimated) return (k << scale) % n;
  return detail::wrap(k - ndwt_offset(pyr.filter.length(), scale), n);
}

}  // namespace tlsw
