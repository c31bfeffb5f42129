// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tlsw/types.hpp"

namespace tlsw::io {

/// Shortest text that reads back to exactly the same double.
std::string format_double(double v);

/// Reads a single `value` column or `time,value` columns; a header row is
/// optional. Throws Io for unreadable files and InvalidArgument for
/// malformed or non-finite values.
VectorXd read_series(const std::filesystem::path& path);

/// Headerless numeric matrix, one row per line.
MatrixXd read_matrix(const std::filesystem::path& path);

/// Writes via a temporary file and rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& contents);

std::string series_csv(const VectorXd& values);
std::string matrix_csv(const MatrixXd& m);

/// Columns t, estimate, lo, hi; lo/hi are empty when absent.
std::string trend_csv(const VectorXd& estimate, const std::optional<VectorXd>& lo,
                      const std::optional<VectorXd>& hi);

struct TrendTable {
  VectorXd estimate;
  std::optional<VectorXd> lo;
  std::optional<VectorXd> hi;
};

TrendTable read_trend_csv(const std::filesystem::path& path);

}  // namespace tlsw::io
