#pragma once

#include <ostream>

namespace bilax::cli {

/// Exit codes: 0 all gates pass, 1 a gate failed, 2 usage error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitGateFailure = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutEnv = "BILAX_OUT";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bilax::cli
