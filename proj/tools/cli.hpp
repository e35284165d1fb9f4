#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fbt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConvergence = 3;

/// Runs one command line (without the program name). Results go to `out`,
/// a one-line `error: <kind>: <reason>` to `err` on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Decimal literal, `log(x)`, or `k*log(x)`.
double parse_real(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

}  // namespace fbt::cli
