#ifndef KMOMENT_CLI_HPP
#define KMOMENT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace kmoment::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMalformed = 1;
inline constexpr int kExitNegative = 2;

/// Runs one subcommand (argv without the program name). Returns 0 on success
/// or a positive verdict, 2 on a structured negative outcome, 1 on malformed
/// input or usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kmoment::cli

#endif  // KMOMENT_CLI_HPP
