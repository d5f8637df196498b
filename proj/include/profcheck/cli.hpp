#pragma once

#include <string>
#include <vector>

namespace profcheck::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  success = 0,
  refuted = 1,
  usage_error = 2,
  incomplete = 3,
};

struct RunResult {
  int exit_code = success;
  /// Report text (or JSON) destined for standard output.
  std::string output;
  /// Diagnostics destined for standard error.
  std::string errors;
};

/// Runs one command line; args excludes the program name. Never throws.
RunResult run(std::vector<std::string> const& args);

/// Directory holding the bundled presentation corpus.
std::string default_corpus_dir();

}  // namespace profcheck::cli
