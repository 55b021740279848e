#pragma once

namespace spltest {

// Stable exit codes of the spltest command-line tool.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;        // unexpected error
inline constexpr int usage = 2;          // bad flags or unusable input files
inline constexpr int model_parse = 3;    // malformed model
inline constexpr int inconsistent = 4;   // model has no valid product
inline constexpr int suite_mismatch = 5; // suite does not match the model
inline constexpr int budget = 6;         // exact-mode enumeration refused
} // namespace exit_code

// Entry point shared by the binary and the tests. argv[0] is the program
// name. Never throws; errors are reported on stderr and via the exit code.
int run_cli(int argc, const char* const* argv);

} // namespace spltest
