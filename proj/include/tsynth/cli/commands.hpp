#pragma once

#include <iosfwd>

namespace tsynth::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int no_solution = 1;
inline constexpr int timeout = 2;
inline constexpr int usage = 64;
inline constexpr int internal = 70;
}  // namespace exit_code

// Parses argv and runs one subcommand; never throws.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tsynth::cli
