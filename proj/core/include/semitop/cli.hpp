#pragma once

#include <string>
#include <vector>

#include "semitop/report.hpp"

namespace semitop {

// Outcome of one command-line invocation. `code` follows the CI contract:
// 0 when every check passed, 1 when any check failed or stayed unknown,
// 2 on a usage or input-parse error (then `error` holds the diagnostic and
// the report is empty).
struct DispatchResult {
  int code = 2;
  Report report;
  std::string rendered;  // report in the requested format
  std::string error;
};

// Runs one command given as tokens, without the program name.
DispatchResult dispatch(const std::vector<std::string>& args);

// Runs every entry of a JSON manifest {"entries": [["verb", "--flag", ...],
// ...]}. Entries are isolated: one bad entry records a failure and the rest
// still run.
Report run_batch(const std::string& manifest_text, const std::string& manifest_name);

// SEMITOP_CAP environment override for enumeration caps.
u64 enumeration_cap(u64 fallback);

// main() body of the semitop binary: prints the rendered report (or the
// usage diagnostic) and returns the exit code.
int run_main(int argc, char** argv);

}  // namespace semitop
