#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cbm::cli {

// Entry point behind the cbm binary; streams are injected for testability.
// Exit codes: 0 success, 1 I/O or validation error, 2 verification or
// certification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cbm::cli
