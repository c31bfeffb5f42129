// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tlsw/types.hpp"

namespace tlsw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

/// Resolved command-line configuration. Option names follow the R argument
/// names in kebab case (S.do.diff -> --s-do-diff).
struct RunConfig {
  std::string command;
  std::filesystem::path input;
  std::filesystem::path out_dir = ".";
  std::filesystem::path results_dir;  // plot: defaults to out_dir
  std::uint64_t seed = 1;
  int threads = 1;

  // sim
  std::string scenario;
  std::filesystem::path trend_file;
  std::filesystem::path spec_file;
  std::optional<Index> sim_n;
  int filter_number = 4;
  std::string family = "DaubExPhase";

  // spectrum
  int s_filter_number = 4;
  std::string s_family = "DaubExPhase";
  bool s_smooth = true;
  std::string s_smooth_type = "mean";
  std::optional<Index> s_binwidth;
  std::optional<int> s_max_scale;
  bool s_boundary_handle = true;
  bool s_do_diff = false;
  Index s_lag = 1;
  int s_diff_number = 1;
  bool s_floor = false;

  // trend
  std::string t_est_type = "linear";
  int t_filter_number = 4;
  std::string t_family = "DaubExPhase";
  std::string t_transform = "nondec";
  bool t_boundary_handle = true;
  std::optional<int> t_max_scale;
  bool t_ci = false;
  double t_sig_lvl = 0.05;
  Index t_reps = 200;
  std::string t_ci_type = "normal";
  std::optional<Index> t_lacf_max_lag;
  std::optional<int> t_ci_max_scale;
  std::string t_thresh_type = "hard";
  bool t_thresh_normal = true;

  // plot
  std::string scaling = "global";
  std::vector<Index> lacf_times{50, 200, 350};
};

/// Parses argv (argv[0] is the program name) and runs the command. Returns
/// 0 on success, 2 on configuration errors and 3 on I/O errors; messages go
/// to standard error.
int run(const std::vector<std::string>& args);

int cmd_sim(const RunConfig& config);
int cmd_spec(const RunConfig& config);
int cmd_trend(const RunConfig& config);
int cmd_lacf(const RunConfig& config);
int cmd_analyze(const RunConfig& config);
int cmd_plot(const RunConfig& config);

}  // namespace tlsw::cli
