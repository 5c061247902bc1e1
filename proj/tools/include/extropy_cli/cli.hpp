#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace extropy_cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNumerical = 3,
  kExitViolations = 4,
};

// Runs one command line (without the program name). Tables go to `out`
// or the --out file; failures write an error document to `out` and a
// one-line message to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace extropy_cli
