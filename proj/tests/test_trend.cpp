// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tlsw/lacv.hpp"
#include "tlsw/spectrum.hpp"
#include "tlsw/trend.hpp"

using namespace tlsw;

namespace {

VectorXd noise(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  VectorXd v(n);
  for (Index i = 0; i < n; ++i) v(i) = z(rng);
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

double max_abs(const VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

TrendConfig decimated_linear() {
  TrendConfig c;
  c.transform = TransformMode::Decimated;
  return c;
}

}  // namespace

TEST_CASE("threshold rules") {
  CHECK(threshold(3.0, 1.0, ThresholdType::Soft) == 2.0);
  CHECK(threshold(-3.0, 1.0, ThresholdType::Soft) == -2.0);
  CHECK(threshold(-0.5, 1.0, ThresholdType::Hard) == 0.0);
  CHECK(threshold(-1.5, 1.0, ThresholdType::Hard) == -1.5);
  CHECK(threshold(1.0, 1.0, ThresholdType::Hard) == 0.0);
  CHECK(threshold(0.7, 0.0, ThresholdType::Soft) == 0.7);
  CHECK(code_of([] { threshold(1.0, -0.1, ThresholdType::Soft); }) == Errc::NegativeThreshold);
  for (double d = -4.0; d <= 4.0; d += 0.37) {
    for (double lambda : {0.0, 0.5, 2.0, 10.0}) CHECK(std::abs(threshold(d, lambda, ThresholdType::Soft)) <= std::abs(d));
  }
  CHECK(ThresholdPolicy{ThresholdType::Hard, true}.multiplier(100) == doctest::Approx(std::sqrt(2.0 * std::log(100.0))));
  CHECK(ThresholdPolicy{ThresholdType::Hard, false}.multiplier(100) == doctest::Approx(std::log(100.0)));
}

TEST_CASE("constant series is reproduced") {
  const VectorXd x = VectorXd::Constant(200, 3.25);
  for (int m : {1, 4, 10}) {
    for (auto mode : {TransformMode::Decimated, TransformMode::Nondecimated}) {
      const auto est = linear_trend(x, make_filter(Family::ExtremalPhase, m), std::nullopt, mode, true);
      CHECK(max_abs(est.T_hat.array() - 3.25) < 1e-9);
    }
  }
}

TEST_CASE("cubic is reproduced with four vanishing moments") {
  VectorXd x(256);
  for (Index t = 0; t < 256; ++t) {
    const double z = (static_cast<double>(t) + 0.5) / 256.0;
    x(t) = 3.0 * (32 * z * z * z - 48 * z * z + 22 * z - 3);
  }
  const auto f = make_filter(Family::ExtremalPhase, 4);
  for (auto mode : {TransformMode::Decimated, TransformMode::Nondecimated}) {
    const auto est = linear_trend(x, f, std::nullopt, mode, true);
    CHECK(max_abs(est.T_hat - x) < 1e-6 * max_abs(x));
  }
}

TEST_CASE("linear estimator is equivariant and matches its operator") {
  const VectorXd x = noise(150, 4);
  const auto f = make_filter(Family::ExtremalPhase, 3);
  for (auto mode : {TransformMode::Decimated, TransformMode::Nondecimated}) {
    const VectorXd base = linear_trend(x, f, std::nullopt, mode, true).T_hat;
    CHECK(max_abs(linear_trend(VectorXd(x.array() + 7.5), f, std::nullopt, mode, true).T_hat - (base.array() + 7.5).matrix()) <
          1e-12);
    CHECK(max_abs(linear_trend(VectorXd(-2.0 * x), f, std::nullopt, mode, true).T_hat + 2.0 * base) < 1e-12);
    TrendConfig c;
    c.filter = f;
    c.transform = mode;
    CHECK(max_abs(linear_trend_operator(150, c) * x - base) < 1e-12);
  }
}

TEST_CASE("coefficient variance") {
  const auto haar = make_filter(Family::ExtremalPhase, 1);
  const auto acw = autocorr_wavelet(haar, 3);
  const auto cross = cross_a_matrix(acw, acw, 3);
  MatrixXd s = MatrixXd::Zero(3, 5);
  CHECK(coefficient_variance(s, cross, 1, 2) == 0.0);
  s(0, 2) = 1.0;
  CHECK(coefficient_variance(s, cross, 1, 2) == doctest::Approx(1.5));
  s(1, 2) = -10.0;
  CHECK(coefficient_variance(s, cross, 1, 2) == 0.0);
  CHECK(code_of([&] { coefficient_variance(s, a_matrix(acw, 3), 1, 2); }) == Errc::MatrixMismatch);
  CHECK(code_of([&] { coefficient_variance(s, cross_a_matrix(acw, acw, 2), 1, 2); }) == Errc::MatrixMismatch);
}

TEST_CASE("nonlinear estimator limits") {
  const Index n = 256;
  const VectorXd x = noise(n, 9);
  auto spec = estimate_spectrum(x);
  const auto f = make_filter(Family::LeastAsymmetric, 6);

  spec.S.setZero();
  for (auto mode : {TransformMode::Decimated, TransformMode::Nondecimated}) {
    const auto est = nonlinear_trend(x, &spec, f, std::nullopt, {}, mode, true);
    CHECK(max_abs(est.T_hat - x) < 1e-9);
  }

  // Huge variances remove every detail coefficient: scaling-space projection.
  spec.S.setConstant(1e12);
  const auto est = nonlinear_trend(x, &spec, f, 4, {}, TransformMode::Decimated, false);
  auto pyr = dwt_forward(x, f, 4);
  for (int j = 1; j <= 4; ++j) pyr.detail_at(j).setZero();
  CHECK(max_abs(est.T_hat - dwt_inverse(pyr)) < 1e-8);

  CHECK(code_of([&] { nonlinear_trend(x, nullptr, f, std::nullopt, {}, TransformMode::Nondecimated, true); }) ==
        Errc::MissingSpectrum);
  TrendConfig c;
  c.method = TrendMethod::Nonlinear;
  CHECK(code_of([&] { estimate_trend(x, c); }) == Errc::MissingSpectrum);
}

TEST_CASE("nonlinear beats linear on a cusp") {
  const Index n = 512;
  VectorXd trend(n);
  for (Index t = 0; t < n; ++t) trend(t) = 0.05 * static_cast<double>(t < n / 2 ? t : n - t);
  const auto f = make_filter(Family::LeastAsymmetric, 6);
  int wins = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    const VectorXd x = trend + noise(n, 300 + rep);
    SpectrumOptions o;
    o.diff = Differencing{1, 1};
    const auto spec = estimate_spectrum(x, o);
    const VectorXd nl = nonlinear_trend(x, &spec, f, std::nullopt, {}, TransformMode::Nondecimated, true).T_hat;
    const VectorXd lin = linear_trend(x, f, std::nullopt, TransformMode::Nondecimated, true).T_hat;
    if ((nl - trend).norm() < (lin - trend).norm()) ++wins;
  }
  CHECK(wins >= 70);
}

TEST_CASE("analytic interval") {
  const Index n = 128;
  const VectorXd x = noise(n, 1);
  const auto cfg = decimated_linear();
  const auto est = estimate_trend(x, cfg);
  const auto acw = autocorr_wavelet(cfg.filter, 5);

  MatrixXd s = MatrixXd::Zero(5, n);
  const auto zero = analytic_ci(x, est, cfg, lacv_from_spectrum(s, acw, 20), 0.05);
  CHECK(max_abs(*zero.ci_hi - *zero.ci_lo) == 0.0);

  s.row(0).setOnes();
  const auto lacv = lacv_from_spectrum(s, acw, 20);
  const auto wide = analytic_ci(x, est, cfg, lacv, 0.05);
  const auto narrow = analytic_ci(x, est, cfg, lacv, 0.32);
  CHECK(wide.ci_type == CiType::Analytic);
  const double ratio = (*narrow.ci_hi - *narrow.ci_lo)(60) / (*wide.ci_hi - *wide.ci_lo)(60);
  CHECK(std::abs(ratio - 0.9944578832097535 / 1.959963984540054) < 1e-3);
  CHECK(((*wide.ci_lo).array() <= est.T_hat.array()).all());
  CHECK(((*wide.ci_hi).array() >= est.T_hat.array()).all());

  CHECK(analytic_ci_spectrum_depth(256, 5) == 7);
  CHECK(analytic_ci_spectrum_depth(256, 7) == 8);

  TrendConfig nondec;
  CHECK(code_of([&] { analytic_ci(x, est, nondec, lacv, 0.05); }) == Errc::MethodMismatch);
  const VectorXd long_x = VectorXd::Zero(kAnalyticCiMaxLength + 1);
  CHECK(code_of([&] { analytic_ci(long_x, est, cfg, lacv, 0.05); }) == Errc::SeriesTooLong);
}

TEST_CASE("bootstrap intervals") {
  const Index n = 128;
  const VectorXd x = noise(n, 2);
  TrendConfig cfg;
  auto spec = estimate_spectrum(x);
  const auto est = estimate_trend(x, cfg);

  BootstrapOptions o;
  o.reps = 40;
  o.seed = 11;
  const auto normal = bootstrap_ci(est, spec, cfg, o);
  CHECK(normal.ci_type == CiType::BootNormal);
  CHECK(normal.reps == 40);
  CHECK(max_abs((*normal.ci_hi - normal.T_hat) - (normal.T_hat - *normal.ci_lo)) < 1e-9);

  o.threads = 4;
  const auto threaded = bootstrap_ci(est, spec, cfg, o);
  CHECK(*threaded.ci_lo == *normal.ci_lo);
  CHECK(*threaded.ci_hi == *normal.ci_hi);

  o.type = CiType::BootPercentile;
  const auto pct = bootstrap_ci(est, spec, cfg, o);
  CHECK(((*pct.ci_lo).array() <= (*pct.ci_hi).array()).all());

  spec.S.setZero();
  const auto flat = bootstrap_ci(est, spec, cfg, o);
  CHECK(max_abs(*flat.ci_hi - *flat.ci_lo) < 1e-9);

  o.reps = 19;
  CHECK(code_of([&] { bootstrap_ci(est, spec, cfg, o); }) == Errc::TooFewReps);
  CHECK(min_bootstrap_reps(0.05) == 40);
  CHECK(min_bootstrap_reps(0.2) == 20);
  o.reps = 50;
  o.type = CiType::Analytic;
  CHECK(code_of([&] { bootstrap_ci(est, spec, cfg, o); }) == Errc::InvalidArgument);
}
