#pragma once

#include <string>
#include <vector>

namespace rppg::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kIoError = 2;
inline constexpr int kDomainError = 3;

// Runs one `rppg` invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace rppg::cli
