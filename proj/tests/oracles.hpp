// SPDX-License-Identifier: Apache-2.0
// Slow reference implementations used only by the tests. They are written
// from the definitions without sharing code paths with the library.
#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

inline Vec convolve(const Vec& a, const Vec& b) {
  Vec out = Vec::Zero(a.size() + b.size() - 1);
  for (Index i = 0; i < a.size(); ++i)
    for (Index k = 0; k < b.size(); ++k) out(i + k) += a(i) * b(k);
  return out;
}

inline Vec upsample(const Vec& v, Index factor) {
  Vec out = Vec::Zero((v.size() - 1) * factor + 1);
  for (Index i = 0; i < v.size(); ++i) out(i * factor) = v(i);
  return out;
}

// Cascade form: psi_j = g(up 2^{j-1}) * h(up 2^{j-2}) * ... * h.
inline Vec discrete_wavelet(const Vec& h, const Vec& g, int j) {
  Vec out = upsample(g, Index{1} << (j - 1));
  for (int m = j - 2; m >= 0; --m) out = convolve(out, upsample(h, Index{1} << m));
  return out;
}

// Psi_j(tau) for any integer tau, straight from the raw vector.
inline double autocorr(const Vec& psi, Index tau) {
  double s = 0.0;
  for (Index t = 0; t < psi.size(); ++t) {
    const Index u = t + tau;
    if (u >= 0 && u < psi.size()) s += psi(t) * psi(u);
  }
  return s;
}

// sum_tau Psi_a(tau) Psi_b(tau - p), tau over the union of supports.
inline double lagged_inner(const Vec& psi_a, const Vec& psi_b, Index p) {
  const Index reach = psi_a.size() + psi_b.size() + std::abs(p);
  double s = 0.0;
  for (Index tau = -reach; tau <= reach; ++tau) s += autocorr(psi_a, tau) * autocorr(psi_b, tau - p);
  return s;
}

inline Mat lagged_matrix(const Vec& h, const Vec& g, int j0, Index p) {
  std::vector<Vec> psi;
  for (int j = 1; j <= j0; ++j) psi.push_back(discrete_wavelet(h, g, j));
  Mat m(j0, j0);
  for (int a = 0; a < j0; ++a)
    for (int b = 0; b < j0; ++b) m(a, b) = lagged_inner(psi[a], psi[b], p);
  return m;
}

// C_{r,l} = sum_tau Psi^thresh_r(tau) Psi^gen_l(tau).
inline Mat cross_matrix(const Vec& h_gen, const Vec& g_gen, const Vec& h_thr, const Vec& g_thr, int j0) {
  Mat m(j0, j0);
  for (int r = 1; r <= j0; ++r)
    for (int l = 1; l <= j0; ++l)
      m(r - 1, l - 1) =
          lagged_inner(discrete_wavelet(h_thr, g_thr, r), discrete_wavelet(h_gen, g_gen, l), 0);
  return m;
}

// Direct circular correlation d_j[t] = sum_l x[(t + l) mod n] psi_j[l], unaligned.
inline Vec circular_detail(const Vec& x, const Vec& psi) {
  const Index n = x.size();
  Vec d = Vec::Zero(n);
  for (Index t = 0; t < n; ++t)
    for (Index l = 0; l < psi.size(); ++l) d(t) += x((t + l) % n) * psi(l);
  return d;
}

// One decimated analysis step by explicit filtering and downsampling.
inline void dwt_step(const Vec& c, const Vec& h, const Vec& g, Vec& smooth, Vec& detail) {
  const Index n = c.size();
  smooth = Vec::Zero(n / 2);
  detail = Vec::Zero(n / 2);
  for (Index k = 0; k < n / 2; ++k)
    for (Index l = 0; l < h.size(); ++l) {
      smooth(k) += h(l) * c((2 * k + l) % n);
      detail(k) += g(l) * c((2 * k + l) % n);
    }
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sd(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline double standard_error(const std::vector<double>& v) {
  return sd(v) / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace oracle
