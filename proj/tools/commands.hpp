#pragma once

#include <string>
#include <vector>

namespace procat::cli {

struct Outcome {
    std::string out;
    std::string err;
    int exit_code = 0;  // 0 pass, 1 some verdict failed, 2 usage, input or IO error
};

// Runs one command line (without the program name). Never throws.
Outcome run(const std::vector<std::string>& args);

}  // namespace procat::cli
