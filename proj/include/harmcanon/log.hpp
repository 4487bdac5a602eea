#pragma once

#include <string>

namespace harmcanon {

/// Suppress warning output (CLI --quiet).
void set_quiet(bool quiet);
bool quiet();

/// Print "warning: <msg>" to stderr unless quiet.
void warn(const std::string& msg);

} // namespace harmcanon
