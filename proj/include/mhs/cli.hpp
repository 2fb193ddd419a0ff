#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mhs {

// Exit codes: 0 every report passes, 1 mathematical failure or guard error,
// 2 usage error. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mhs
