#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lionman::cli {

/// Exit status: 0 ok, 1 verification failure / violation / bound exceeded,
/// 2 usage error. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace lionman::cli
