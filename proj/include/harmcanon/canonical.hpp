#pragma once

#include "harmcanon/harmonic.hpp"
#include "harmcanon/mesh.hpp"

#include <Eigen/Core>

#include <array>
#include <vector>

namespace harmcanon {

/// Integral over one face of the wedge of two Whitney-interpolated 1-forms.
///
/// a and b hold the cochain values pulled onto the face's directed boundary
/// edges 0->1, 1->2, 2->0 (the canonical edge values times +-1 for direction
/// agreement). The pairing is a pure cochain expression: it does not depend on
/// the metric, and it is antisymmetric exactly, not just up to rounding.
double whitney_wedge_face(const std::array<double, 3>& a, const std::array<double, 3>& b);

/// Per-face wedge densities f[T](i,j) = (integral_T xi_i ^ xi_j) / area(T) and
/// their totals c(i,j) = sum_T integral_T xi_i ^ xi_j. Both antisymmetric with
/// zero diagonal.
struct WedgeData {
    std::vector<Eigen::MatrixXd> f; // one 2g x 2g matrix per face
    Eigen::MatrixXd c;              // 2g x 2g
};

/// Assemble WedgeData for an orthonormal harmonic basis on a unit-area mesh.
WedgeData wedge_data(const TriangleMesh& mesh, const HarmonicBasis& basis);

/// The pointwise norm f = sqrt(sum_ij f_ij^2) (ordered-pair sum), its integral
/// against the volume form, and its minimum over faces.
struct FField {
    std::vector<double> f;
    double integral_f = 0.0;
    double min_f = 0.0;
};

FField f_field(const WedgeData& wd, const TriangleMesh& mesh);

/// Closed-form minimizer rho(T) = (f(T) / integral_f)^(1/n). Throws
/// DegenerateClassError when integral_f <= 0.
std::vector<double> canonical_factor(const std::vector<double>& f, double integral_f, int n);

/// Critical energy (integral_f)^2 - C^2.
double minimal_energy(double integral_f, double c_sq);

/// Energy of the metric rho * g0 via the expanded formula
/// sum_T f(T)^2 rho(T)^{-n} area(T) - C^2. rho must be strictly positive
/// (NonPositiveRhoError) and normalized to sum rho^n area = 1 within 1e-8
/// (NormalizationError).
double energy_of(const TriangleMesh& mesh, const WedgeData& wd, const std::vector<double>& rho,
                 int n);

/// Same energy evaluated directly as the L2 norm of the wedge-defect residuals
/// sum_ij sum_T (f_ij(T) rho^{-n} - c_ij)^2 rho^n area(T), i.e. without opening
/// the brackets. Agrees with energy_of up to rounding; kept as an independent
/// route for consistency checks.
double energy_direct(const TriangleMesh& mesh, const HarmonicBasis& basis, const WedgeData& wd,
                     const std::vector<double>& rho, int n);

/// degenerate flag threshold: min_f below 1e-8 * (integral_f / total_area).
double degeneracy_threshold(double integral_f, double total_area);

/// Everything the pipeline produces for one conformal class.
struct CanonicalResult {
    std::vector<double> f_field;
    double integral_f = 0.0;
    Eigen::MatrixXd c;
    double c_sq = 0.0;
    std::vector<double> rho;
    double e_min = 0.0;
    double min_f = 0.0;
    int n = 1;
    bool degenerate = false;
    HarmonicBasis basis;
    MeshTopology topo;
};

/// Full pipeline: normalize_area -> harmonic_basis -> wedge_data -> f_field ->
/// canonical_factor(n=1) -> minimal_energy. Throws AssumptionError on genus 0.
CanonicalResult canonical_metric(const TriangleMesh& mesh);

/// star0-area-weighted vertex average of a per-face field (export/visualization).
std::vector<double> vertex_averaged_field(const TriangleMesh& mesh,
                                          const std::vector<double>& per_face);

} // namespace harmcanon
