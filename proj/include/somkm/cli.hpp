#ifndef SOMKM_CLI_HPP
#define SOMKM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace somkm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

/**
 * Runs one subcommand (ingest, synth, run, sweep, report). `args` excludes
 * the program name. Machine-readable output goes to `out`; diagnostics,
 * usage text and `warning:` lines go to `err`.
 */
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace somkm::cli

#endif
