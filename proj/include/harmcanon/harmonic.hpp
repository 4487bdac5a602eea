#pragma once

#include "harmcanon/dec.hpp"
#include "harmcanon/forms.hpp"
#include "harmcanon/mesh.hpp"

#include <utility>
#include <vector>

namespace harmcanon {

/// Closed walk in the vertex graph as (edge id, +-1 traversal direction) steps.
struct GeneratorCycle {
    std::vector<std::pair<int, int>> steps;
};

/// Output of the tree-cotree construction: 2g exactly-closed +-1/0 cochains
/// spanning H^1(M), plus the primal generator cycles used for period tests.
struct HomologyGenerators {
    std::vector<DiscreteForm> forms;
    std::vector<GeneratorCycle> cycles;
};

/// Tree-cotree homology generators.
///
/// Builds a spanning tree of the vertex graph and a spanning cotree of the
/// dual graph avoiding tree edges (both breadth-first from cell 0, ascending
/// neighbor order, so the result is deterministic). Each of the 2g leftover
/// edges closes a dual cycle through the cotree; the generator assigns +-1 to
/// the primal edges that cycle crosses. Every output satisfies d1 w = 0 with
/// exact integer arithmetic. Throws AssumptionError when the genus is 0.
HomologyGenerators homology_generators(const TriangleMesh& mesh);

/// Hodge projection of a closed 1-form onto the discrete harmonic space:
/// xi = w - d0 u with (d0^T star1 d0) u = d0^T star1 w, star0-weighted
/// mean-zero gauge. Preserves the cohomology class and all cycle periods.
/// Requires d1 w = 0 exactly (PreconditionError otherwise); raises SolverError
/// if the solve misses the relative-residual tolerance.
DiscreteForm harmonic_projection(const TriangleMesh& mesh, const DiscreteForm& omega);

/// Modified Gram-Schmidt in the star1 inner product, in the given order, with
/// one reorthogonalization pass. Throws RankDeficiencyError when a vector's
/// remaining norm falls below 1e-12 of the largest input norm.
std::vector<DiscreteForm> orthonormalize(const TriangleMesh& mesh,
                                         const std::vector<DiscreteForm>& forms);

/// 2g orthonormal discrete harmonic 1-forms with quality diagnostics.
struct HarmonicBasis {
    std::vector<DiscreteForm> forms;
    double gram_residual = 0.0;        // max |Gram - I|
    double closedness_residual = 0.0;  // max |d1 xi|
    double coclosedness_residual = 0.0; // max |d0^T star1 xi|
    std::vector<int> solver_iterations; // solves per generator (1 = direct)
};

/// generators -> projection -> orthonormalization; deterministic.
HarmonicBasis harmonic_basis(const TriangleMesh& mesh);

/// Signed sum of a 1-form over a generator cycle.
double cycle_period(const DiscreteForm& form, const GeneratorCycle& cycle);

/// Relative residual tolerance for the harmonic solves: 1e-10, overridable
/// through the HARMCANON_SOLVER_TOL environment variable.
double solver_tolerance();

} // namespace harmcanon
