#pragma once

#include "harmcanon/canonical.hpp"
#include "harmcanon/mesh.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>

namespace harmcanon {

/// Machine-readable record of one pipeline run.
struct RunReport {
    std::string source;
    MeshTopology topo;
    CanonicalResult result;
    std::map<std::string, double> timings_ms; // empty = omit from JSON
};

nlohmann::ordered_json report_to_json(const RunReport& report);

} // namespace harmcanon
