// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tlsw/transforms.hpp"

using namespace tlsw;

namespace {

VectorXd noise(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  VectorXd v(n);
  for (Index i = 0; i < n; ++i) v(i) = z(rng);
  return v;
}

VectorXd ramp(Index n, double a, double b) {
  VectorXd v(n);
  for (Index i = 0; i < n; ++i) v(i) = a + b * static_cast<double>(i);
  return v;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::Io;
}

}  // namespace

TEST_CASE("trend reflection continues a line") {
  const VectorXd x = ramp(12, 1.0, 0.5);
  for (auto policy : {ExtensionPolicy::TrendReflect, ExtensionPolicy::LocalTrendReflect}) {
    const auto ext = extend_series(x, policy);
    CHECK(ext.values.size() == 32);
    CHECK(ext.descriptor.window(ext.values) == x);
    const Index s = ext.descriptor.original_start;
    for (Index i = 0; i < ext.values.size(); ++i) {
      CHECK(ext.values(i) == doctest::Approx(1.0 + 0.5 * static_cast<double>(i - s)));
    }
  }
}

TEST_CASE("local trend reflection ignores end noise") {
  const Index n = 64;
  VectorXd x = ramp(n, 0.0, 0.0);
  x(0) = 5.0;
  const auto plain = extend_series(x, ExtensionPolicy::TrendReflect);
  const auto local = extend_series(x, ExtensionPolicy::LocalTrendReflect);
  const Index s = plain.descriptor.original_start;
  // Mirror of x(1) about the pivot.
  CHECK(plain.values(s - 1) == doctest::Approx(10.0));
  CHECK(std::abs(local.values(s - 1)) < 5.0);
  CHECK(local_fit_width(64) == 16);
  CHECK(local_fit_width(10) == 8);
  CHECK(local_fit_width(8) == 8);
}

TEST_CASE("symmetric triple extension") {
  const VectorXd x = noise(300, 3);
  const auto ext = extend_series(x, ExtensionPolicy::SymmetricTriple);
  CHECK(ext.values.size() == 1024);
  CHECK(ext.descriptor.original_len == 300);
  CHECK(ext.descriptor.window(ext.values) == x);
  const Index s = ext.descriptor.original_start;
  for (Index i = 0; i < 300; ++i) {
    CHECK(ext.values(s - 1 - i) == x(i));
    CHECK(ext.values(s + 300 + i) == x(299 - i));
  }
  const auto minimal = extend_series(x, ExtensionPolicy::SymmetricTriple, ExtensionTarget::Minimal);
  CHECK(minimal.values.size() == 900);
}

TEST_CASE("constant series extends to a constant") {
  const VectorXd x = VectorXd::Constant(37, 2.5);
  for (auto policy : {ExtensionPolicy::TrendReflect, ExtensionPolicy::LocalTrendReflect,
                      ExtensionPolicy::SymmetricTriple}) {
    const auto ext = extend_series(x, policy);
    CHECK(is_power_of_two(ext.values.size()));
    CHECK((ext.values.array() - 2.5).abs().maxCoeff() < 1e-12);
  }
  CHECK(code_of([] { extend_series(VectorXd::Zero(7), ExtensionPolicy::TrendReflect); }) ==
        Errc::SeriesTooShort);
}

TEST_CASE("ndwt matches circular correlation with the discrete wavelet") {
  const auto f = make_filter(Family::ExtremalPhase, 3);
  const VectorXd x = noise(128, 11);
  const auto pyr = ndwt_forward(x, f, 4);
  for (int j = 1; j <= 4; ++j) {
    CAPTURE(j);
    const VectorXd raw = oracle::circular_detail(x, oracle::discrete_wavelet(f.h, f.g, j));
    const Index off = ndwt_offset(f.length(), j);
    for (Index t = 0; t < 128; ++t) CHECK(std::abs(pyr.detail_at(j)(t) - raw(detail::wrap(t - off, 128))) < 1e-12);
  }
}

TEST_CASE("impulse response is the time-reversed wavelet centred on the impulse") {
  const auto f = make_filter(Family::ExtremalPhase, 2);
  VectorXd x = VectorXd::Zero(64);
  x(32) = 1.0;
  const auto pyr = ndwt_forward(x, f, 3);
  for (int j = 1; j <= 3; ++j) {
    const VectorXd psi = oracle::discrete_wavelet(f.h, f.g, j);
    const Index off = ndwt_offset(f.length(), j);
    for (Index l = 0; l < psi.size(); ++l) CHECK(pyr.detail_at(j)(32 - l + off) == doctest::Approx(psi(l)));
  }
}

TEST_CASE("vanishing moments annihilate polynomials") {
  const auto f = make_filter(Family::ExtremalPhase, 3);
  VectorXd x(256);
  for (Index i = 0; i < 256; ++i) {
    const double t = static_cast<double>(i) / 256.0;
    x(i) = 1.0 - 2.0 * t + 3.0 * t * t;
  }
  const auto ext = extend_series(x, ExtensionPolicy::TrendReflect);
  const auto pyr = ndwt_forward(ext.values, f, 3);
  for (int j = 1; j <= 3; ++j) {
    const Index reach = support_length(f.length(), j);
    // Away from the kinks at the extension seams.
    const VectorXd inner = pyr.detail_at(j).segment(ext.descriptor.original_start + reach, 256 - 2 * reach);
    CHECK(inner.cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("haar dwt by hand") {
  const auto f = make_filter(Family::ExtremalPhase, 1);
  VectorXd x(4);
  x << 1, 3, 5, 11;
  const auto pyr = dwt_forward(x, f, 2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(pyr.detail_at(1)(0) == doctest::Approx(-2.0 * r));
  CHECK(pyr.detail_at(1)(1) == doctest::Approx(-6.0 * r));
  CHECK(pyr.detail_at(2)(0) == doctest::Approx(-6.0));
  CHECK(pyr.scaling(0) == doctest::Approx(10.0));
}

TEST_CASE("dwt matches explicit filtering and downsampling") {
  const auto f = make_filter(Family::LeastAsymmetric, 5);
  const VectorXd x = noise(64, 5);
  const auto pyr = dwt_forward(x, f, 3);
  VectorXd c = x;
  for (int j = 1; j <= 3; ++j) {
    VectorXd s, d;
    oracle::dwt_step(c, f.h, f.g, s, d);
    CHECK((pyr.detail_at(j) - d).cwiseAbs().maxCoeff() < 1e-12);
    c = s;
  }
  CHECK((pyr.scaling - c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dwt preserves energy and is linear") {
  const auto f = make_filter(Family::ExtremalPhase, 6);
  const VectorXd x = noise(128, 7);
  const VectorXd y = noise(128, 8);
  const auto px = dwt_forward(x, f, 5);
  double energy = px.scaling.squaredNorm();
  for (int j = 1; j <= 5; ++j) energy += px.detail_at(j).squaredNorm();
  CHECK(energy == doctest::Approx(x.squaredNorm()).epsilon(1e-12));

  const VectorXd z = 2.0 * x - 0.5 * y;
  const auto pz = dwt_forward(z, f, 5);
  const auto py = dwt_forward(y, f, 5);
  for (int j = 1; j <= 5; ++j) {
    CHECK((pz.detail_at(j) - (2.0 * px.detail_at(j) - 0.5 * py.detail_at(j))).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("round trips") {
  for (int m : {1, 4, 10}) {
    const auto f = make_filter(Family::ExtremalPhase, m);
    const VectorXd x = noise(256, 100 + static_cast<std::uint64_t>(m));
    CHECK((dwt_inverse(dwt_forward(x, f, 5)) - x).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((ndwt_average_basis(ndwt_forward(x, f, 5)) - x).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("transform errors") {
  const auto f = make_filter(Family::ExtremalPhase, 2);
  const VectorXd x = noise(100, 1);
  CHECK(code_of([&] { dwt_forward(x, f, 2); }) == Errc::NonDyadicLength);
  CHECK(code_of([&] { ndwt_forward(x, f, 7); }) == Errc::ScaleTooDeep);
  CHECK(code_of([&] { dwt_forward(noise(64, 1), f, 7); }) == Errc::ScaleTooDeep);
  CHECK(code_of([&] { ndwt_average_basis(dwt_forward(noise(64, 1), f, 2)); }) == Errc::ModeMismatch);
  CHECK(code_of([&] { dwt_inverse(ndwt_forward(noise(64, 1), f, 2)); }) == Errc::ModeMismatch);
}

TEST_CASE("coefficient support starts") {
  const auto f = make_filter(Family::ExtremalPhase, 2);
  const auto dec = dwt_forward(noise(64, 2), f, 3);
  CHECK(coefficient_support_start(dec, 2, 3) == 12);
  const auto nd = ndwt_forward(noise(64, 2), f, 3);
  CHECK(coefficient_support_start(nd, 1, 10) == 10 - ndwt_offset(4, 1));
}
