#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace persuasion::cli {

// Exit codes: 0 success, 2 input error, 3 solver error, 4 verification FAIL.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace persuasion::cli
