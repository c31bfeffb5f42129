// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace tlsw {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

enum class Errc {
  UnsupportedFilter,
  SingularMatrix,
  InvalidDiffSpec,
  SeriesTooShort,
  ScaleTooDeep,
  NonDyadicLength,
  ModeMismatch,
  NegativeSpectrum,
  DimensionMismatch,
  NonDyadicFunctionalSpec,
  InvalidBinwidth,
  MatrixMismatch,
  MissingSpectrum,
  NegativeThreshold,
  MethodMismatch,
  TooFewReps,
  SeriesTooLong,
  InvalidArgument,
  Io,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::UnsupportedFilter: return "UnsupportedFilter";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::InvalidDiffSpec: return "InvalidDiffSpec";
    case Errc::SeriesTooShort: return "SeriesTooShort";
    case Errc::ScaleTooDeep: return "ScaleTooDeep";
    case Errc::NonDyadicLength: return "NonDyadicLength";
    case Errc::ModeMismatch: return "ModeMismatch";
    case Errc::NegativeSpectrum: return "NegativeSpectrum";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonDyadicFunctionalSpec: return "NonDyadicFunctionalSpec";
    case Errc::InvalidBinwidth: return "InvalidBinwidth";
    case Errc::MatrixMismatch: return "MatrixMismatch";
    case Errc::MissingSpectrum: return "MissingSpectrum";
    case Errc::NegativeThreshold: return "NegativeThreshold";
    case Errc::MethodMismatch: return "MethodMismatch";
    case Errc::TooFewReps: return "TooFewReps";
    case Errc::SeriesTooLong: return "SeriesTooLong";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

/// Every library failure is reported as an Error carrying a machine-readable
/// code; what() is "<CodeName>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// floor(log2(n)) for n >= 1.
constexpr int floor_log2(Index n) {
  int j = 0;
  while ((Index{1} << (j + 1)) <= n) ++j;
  return j;
}

constexpr bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

constexpr Index next_power_of_two(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace tlsw
