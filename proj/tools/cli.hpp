#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace etalab::cli {

/// Runs one command line (without the program name). The primary document
/// goes to `out` only when the command succeeds; errors go to `err`.
/// Returns 0 on success, 1 on a domain error, 2 on a usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace etalab::cli
