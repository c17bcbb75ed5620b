#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rspin {

// Full command-line driver; args exclude the program name. Exit codes:
// 0 = pass, 1 = a verdict came back negative, 2 = usage or domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rspin
