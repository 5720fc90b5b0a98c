#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace memdyn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

// Upper bound on the length of an interactive session.
inline constexpr std::int64_t kMaxPlayRounds = 1'000'000;

// Environment variable naming the directory for relative output paths.
inline constexpr const char* kOutDirEnv = "MEMDYN_OUT_DIR";

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name; `in` feeds the interactive `play` session.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace memdyn::cli
