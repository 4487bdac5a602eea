#include "harmcanon/log.hpp"

#include <iostream>

namespace harmcanon {

namespace {
bool g_quiet = false;
}

void set_quiet(bool quiet) { g_quiet = quiet; }
bool quiet() { return g_quiet; }

void warn(const std::string& msg) {
    if (!g_quiet) {
        std::cerr << "warning: " << msg << "\n";
    }
}

} // namespace harmcanon
