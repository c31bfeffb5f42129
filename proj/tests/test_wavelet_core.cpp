// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tlsw/filters.hpp"
#include "tlsw/wavelets.hpp"

using namespace tlsw;

namespace {

std::vector<WaveletFilter> all_filters() {
  std::vector<WaveletFilter> out;
  for (int m = 1; m <= 10; ++m) out.push_back(make_filter(Family::ExtremalPhase, m));
  for (int m = 4; m <= 10; ++m) out.push_back(make_filter(Family::LeastAsymmetric, m));
  return out;
}

double max_abs(const MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("haar filter pair") {
  const auto f = make_filter(Family::ExtremalPhase, 1);
  const double r = 1.0 / std::sqrt(2.0);
  REQUIRE(f.length() == 2);
  CHECK(f.h(0) == doctest::Approx(r));
  CHECK(f.h(1) == doctest::Approx(r));
  CHECK(f.g(0) == doctest::Approx(r));
  CHECK(f.g(1) == doctest::Approx(-r));
}

TEST_CASE("filters are orthonormal quadrature mirror pairs") {
  for (const auto& f : all_filters()) {
    CAPTURE(f.filter_number);
    const Index nh = f.length();
    CHECK(nh == 2 * f.filter_number);
    CHECK(f.h.sum() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    for (Index shift = 0; shift < nh; shift += 2) {
      double s = 0.0;
      for (Index k = 0; k + shift < nh; ++k) s += f.h(k) * f.h(k + shift);
      CHECK(std::abs(s - (shift == 0 ? 1.0 : 0.0)) < 1e-12);
    }
    for (Index k = 0; k < nh; ++k) {
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      CHECK(f.g(k) == doctest::Approx(sign * f.h(nh - 1 - k)));
    }
  }
}

TEST_CASE("unsupported filters are rejected") {
  CHECK_THROWS_AS(make_filter(Family::LeastAsymmetric, 3), Error);
  CHECK_THROWS_AS(make_filter(Family::ExtremalPhase, 11), Error);
  CHECK_THROWS_AS(make_filter(Family::ExtremalPhase, 0), Error);
  try {
    make_filter(Family::LeastAsymmetric, 3);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedFilter);
  }
  CHECK(parse_family("DaubLeAsymm") == Family::LeastAsymmetric);
  CHECK_THROWS_AS(parse_family("Coiflet"), Error);
}

TEST_CASE("haar discrete wavelet at scale 2") {
  const auto dw = discrete_wavelet(make_filter(Family::ExtremalPhase, 1), 2);
  REQUIRE(dw.length(2) == 4);
  CHECK(dw[2](0) == doctest::Approx(0.5));
  CHECK(dw[2](1) == doctest::Approx(0.5));
  CHECK(dw[2](2) == doctest::Approx(-0.5));
  CHECK(dw[2](3) == doctest::Approx(-0.5));
}

TEST_CASE("discrete wavelets match the cascade oracle") {
  for (const auto& f : all_filters()) {
    const auto dw = discrete_wavelet(f, 5);
    for (int j = 1; j <= 5; ++j) {
      CAPTURE(j);
      const auto ref = oracle::discrete_wavelet(f.h, f.g, j);
      REQUIRE(dw.length(j) == support_length(f.length(), j));
      REQUIRE(ref.size() == dw.length(j));
      CHECK((dw[j] - ref).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(dw[j].squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("autocorrelation wavelet") {
  const auto f = make_filter(Family::ExtremalPhase, 3);
  const auto dw = discrete_wavelet(f, 4);
  const auto acw = autocorr_wavelet(dw);
  for (int j = 1; j <= 4; ++j) {
    CHECK(acw(j, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(acw.max_lag(j) == support_length(f.length(), j) - 1);
    for (Index tau = -acw.max_lag(j) - 2; tau <= acw.max_lag(j) + 2; ++tau) {
      CHECK(acw(j, tau) == acw(j, -tau));
      CHECK(std::abs(acw(j, tau) - oracle::autocorr(dw[j], tau)) < 1e-12);
    }
  }
  const auto haar = autocorr_wavelet(make_filter(Family::ExtremalPhase, 1), 2);
  CHECK(haar(1, 1) == doctest::Approx(-0.5));
  CHECK(haar(2, 2) == doctest::Approx(-0.5));
  CHECK(haar(2, 1) == doctest::Approx(0.25));
}

TEST_CASE("haar A matrix") {
  const auto acw = autocorr_wavelet(make_filter(Family::ExtremalPhase, 1), 2);
  const auto a = a_matrix(acw, 2);
  REQUIRE(a.inverse);
  CHECK(a.entries(0, 0) == doctest::Approx(1.5));
  CHECK(a.entries(0, 1) == doctest::Approx(0.75));
  CHECK(a.entries(1, 0) == doctest::Approx(0.75));
  CHECK(a.entries(1, 1) == doctest::Approx(1.75));
  CHECK(max_abs(a.entries * *a.inverse - MatrixXd::Identity(2, 2)) < 1e-12);
}

TEST_CASE("lagged and difference matrices") {
  const auto acw = autocorr_wavelet(make_filter(Family::ExtremalPhase, 1), 2);
  const auto a = a_matrix(acw, 2);
  CHECK(max_abs(lagged_a_matrix(acw, 2, 0).entries - a.entries) < 1e-15);
  const auto a1 = lagged_a_matrix(acw, 2, 1);
  CHECK(a1.entries(0, 0) == doctest::Approx(-1.0));
  const auto d1 = diff_correction_matrix(acw, 2, 1, 1);
  CHECK(d1.entries(0, 0) == doctest::Approx(2.5));
  CHECK(max_abs(d1.entries - (a.entries - a1.entries)) < 1e-14);

  // Supports of Psi_j and Psi_l(. - p) never overlap once p >= L_j + L_l - 1.
  const auto far = lagged_a_matrix(acw, 2, 7);
  CHECK(max_abs(far.entries) == 0.0);

  const auto d2 = diff_correction_matrix(acw, 2, 1, 2);
  const MatrixXd a2 = lagged_a_matrix(acw, 2, 2).entries;
  CHECK(max_abs(d2.entries - (a.entries - 4.0 / 3.0 * a1.entries + a2 / 3.0)) < 1e-14);

  CHECK_THROWS_AS(diff_correction_matrix(acw, 2, 2, 2), Error);
  CHECK_THROWS_AS(diff_correction_matrix(acw, 2, 1, 3), Error);
}

TEST_CASE("matrices match the brute-force oracle") {
  for (const auto& f : {make_filter(Family::ExtremalPhase, 1), make_filter(Family::ExtremalPhase, 2),
                        make_filter(Family::LeastAsymmetric, 4)}) {
    for (int j0 = 1; j0 <= 5; ++j0) {
      CAPTURE(j0);
      const auto acw = autocorr_wavelet(f, j0);
      CHECK(max_abs(a_matrix(acw, j0).entries - oracle::lagged_matrix(f.h, f.g, j0, 0)) < 1e-10);
      for (Index p : {Index{1}, Index{3}, Index{12}}) {
        CHECK(max_abs(lagged_a_matrix(acw, j0, p).entries - oracle::lagged_matrix(f.h, f.g, j0, p)) < 1e-10);
      }
      const auto a = a_matrix(acw, j0);
      CHECK(max_abs(a.entries * *a.inverse - MatrixXd::Identity(j0, j0)) < 1e-9);
      CHECK(a.condition_number >= 1.0);
    }
  }
}

TEST_CASE("cross matrix") {
  const auto haar = make_filter(Family::ExtremalPhase, 1);
  const auto d4 = make_filter(Family::ExtremalPhase, 2);
  const int j0 = 4;
  const auto acw_h = autocorr_wavelet(haar, j0);
  const auto acw_d = autocorr_wavelet(d4, j0);

  const auto same = cross_a_matrix(acw_d, acw_d, j0);
  CHECK(max_abs(same.entries - a_matrix(acw_d, j0).entries) < 1e-14);
  CHECK_FALSE(same.inverse);

  const auto cross = cross_a_matrix(acw_h, acw_d, j0);
  CHECK(max_abs(cross.entries - oracle::cross_matrix(haar.h, haar.g, d4.h, d4.g, j0)) < 1e-12);
  CHECK(max_abs(cross.entries - cross_a_matrix(acw_d, acw_h, j0).entries.transpose()) < 1e-14);
}
