#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ramsey::cli {

/// Version tag carried by every JSON document the CLI prints.
inline constexpr const char* kSchema = "ramsey-cli/1";

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kUsage = 2,
  kRefutation = 3,
  kUnknown = 4,
};

/// Runs one command line (without the program name). Never throws.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits a sweep line into words; single and double quotes group words.
std::vector<std::string> split_words(const std::string& line);

}  // namespace ramsey::cli
