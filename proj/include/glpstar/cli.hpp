#ifndef GLPSTAR_CLI_HPP
#define GLPSTAR_CLI_HPP

#include <string>
#include <vector>

namespace glpstar::cli {

enum ExitStatus : int {
    kAffirmative = 0,  // theorem, valid, accepted
    kNegative = 1,     // non-theorem, invalid, rejected
    kInputError = 2,
    kResourceLimit = 3,
};

struct Result {
    int status = kAffirmative;
    std::string out;
    std::string err;
};

/// Runs one command. `args` excludes the program name.
Result run(const std::vector<std::string>& args);

}  // namespace glpstar::cli

#endif
