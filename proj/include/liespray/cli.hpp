#ifndef LIESPRAY_CLI_HPP
#define LIESPRAY_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "liespray/config.hpp"
#include "liespray/records.hpp"

namespace liespray {

/// Result of one subcommand execution (before any I/O).
struct RunResult {
  RecordSink records;
  RunManifest manifest;
  int exit_code = 0;  // 0 pass, 1 check failed, 2 config error, 3 runtime error
};

/// Executes one subcommand against a parsed config. Throws nothing;
/// errors are mapped into the manifest and exit code.
RunResult run_command(const std::string& command, const RunConfig& cfg);

/// Full CLI: argument parsing, config loading with overrides, output
/// writing. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liespray

#endif  // LIESPRAY_CLI_HPP
