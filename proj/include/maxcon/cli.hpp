#pragma once

#include <string>
#include <vector>

namespace maxcon {

/// Entry point shared by the `maxcon` binary and in-process tests.
/// args excludes argv[0]. Exit codes: 0 success, 2 usage/config error,
/// 3 runtime failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace maxcon
