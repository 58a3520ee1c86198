#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cellform {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitIo = 3,
    kExitHodgeMismatch = 4,
    kExitToleranceAmbiguous = 5,
    kExitGaussBonnet = 6,
    kExitProperty = 7,
};

// Runs one CLI invocation. args excludes the program name. Colour escapes are
// only written to text output when `color` is set.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace cellform
