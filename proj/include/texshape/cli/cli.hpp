#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace texshape::cli {

// Runs one command line (without the program name). Returns 0 on success,
// 2 for usage errors such as unknown flags, 1 for runtime failures. Failures
// print one line to err:
//   error: code=<code> message="<text>"
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace texshape::cli
