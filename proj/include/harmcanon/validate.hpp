#pragma once

#include "harmcanon/mesh.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace harmcanon {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidateOptions {
    std::uint64_t seed = 0;
    /// Test hook: corrupt the star1 used on the codifferential route so the
    /// adjointness check trips. Never set outside fault-injection tests.
    bool corrupt_star1 = false;
};

/// Run the cross-module invariant suite on one mesh: exactness of d compose d,
/// adjointness of the codifferential, the harmonic Gram matrix, wedge
/// antisymmetry, sampled minimality of the canonical factor, and pipeline
/// invariance under uniform scaling. Basis-dependent checks are skipped (and
/// reported as such) on genus-0 input.
std::vector<CheckResult> run_validation(const TriangleMesh& mesh, const ValidateOptions& options);

} // namespace harmcanon
