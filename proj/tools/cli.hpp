#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shapemetrics::cli {

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns 0 on success, 1 on runtime failure, 2 on usage
/// errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shapemetrics::cli
