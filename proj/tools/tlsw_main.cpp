// SPDX-License-Identifier: Apache-2.0
#include <string>
#include <vector>

#include "tlsw/cli.hpp"

int main(int argc, char** argv) {
  return tlsw::cli::run(std::vector<std::string>(argv, argv + argc));
}
