#include "harmcanon/validate.hpp"

#include "harmcanon/canonical.hpp"
#include "harmcanon/dec.hpp"
#include "harmcanon/errors.hpp"
#include "harmcanon/harmonic.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace harmcanon {

namespace {

// mt19937_64 with an explicit bit-to-double map, so sampled checks are
// reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 eng_;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

} // namespace

std::vector<CheckResult> run_validation(const TriangleMesh& mesh, const ValidateOptions& options) {
    std::vector<CheckResult> out;
    const MeshTopology topo = topology(mesh);

    {
        const SparseOperator dd = d1(mesh) * d0(mesh);
        double worst = 0.0;
        for (int k = 0; k < dd.outerSize(); ++k) {
            for (SparseOperator::InnerIterator it(dd, k); it; ++it) {
                worst = std::max(worst, std::abs(it.value()));
            }
        }
        out.push_back({"d_composition", worst == 0.0, "max |d1 d0| = " + fmt(worst)});
    }

    {
        Rng rng(options.seed + 1);
        Eigen::VectorXd w = star1_diagonal(mesh);
        if (options.corrupt_star1) {
            w[0] *= 1.001; // fault injection: breaks only the delta route
        }
        const Eigen::VectorXd m0 = star0_diagonal(mesh);
        const Eigen::VectorXd w_clean = star1_diagonal(mesh);
        const SparseOperator d = d0(mesh);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            Eigen::VectorXd alpha(mesh.edge_count());
            for (int e = 0; e < mesh.edge_count(); ++e) {
                alpha[e] = rng.uniform(-1.0, 1.0);
            }
            Eigen::VectorXd u(mesh.vertex_count());
            for (int v = 0; v < mesh.vertex_count(); ++v) {
                u[v] = rng.uniform(-1.0, 1.0);
            }
            const Eigen::VectorXd delta = (d.transpose() * w.cwiseProduct(alpha)).cwiseQuotient(m0);
            const Eigen::VectorXd du = d * u;
            double lhs = 0.0, rhs = 0.0;
            for (int v = 0; v < mesh.vertex_count(); ++v) {
                lhs += delta[v] * m0[v] * u[v];
            }
            for (int e = 0; e < mesh.edge_count(); ++e) {
                rhs += alpha[e] * w_clean[e] * du[e];
            }
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        out.push_back({"adjointness", worst <= 1e-12,
                       "max |<delta a, u>_0 - <a, d0 u>_1| = " + fmt(worst) + " over 100 pairs"});
    }

    if (topo.genus == 0) {
        for (const char* name : {"gram", "antisymmetry", "minimality_sampling",
                                 "scale_invariance", "c_sq_vs_2g"}) {
            out.push_back({name, true, "skipped: genus 0"});
        }
        return out;
    }

    const CanonicalResult result = canonical_metric(mesh);
    out.push_back({"gram", result.basis.gram_residual <= 1e-10,
                   "gram residual = " + fmt(result.basis.gram_residual)});

    {
        const TriangleMesh unit = normalize_area(mesh);
        const WedgeData wd = wedge_data(unit, result.basis);
        double worst = 0.0;
        for (int i = 0; i < wd.c.rows(); ++i) {
            for (int j = 0; j <= i; ++j) {
                worst = std::max(worst, std::abs(wd.c(i, j) + wd.c(j, i)));
            }
        }
        for (const auto& m : wd.f) {
            for (int i = 0; i < m.rows(); ++i) {
                for (int j = 0; j <= i; ++j) {
                    worst = std::max(worst, std::abs(m(i, j) + m(j, i)));
                }
            }
        }
        out.push_back({"antisymmetry", worst <= 1e-14,
                       "max |w(i,j) + w(j,i)| = " + fmt(worst)});
    }

    {
        Rng rng(options.seed + 2);
        const TriangleMesh unit = normalize_area(mesh);
        const WedgeData wd = wedge_data(unit, result.basis);
        const auto& geom = unit.face_geometry();
        double worst_gap = std::numeric_limits<double>::infinity();
        double worst_far_gap = std::numeric_limits<double>::infinity();
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> rho(unit.face_count());
            double mass = 0.0;
            for (int f = 0; f < unit.face_count(); ++f) {
                rho[f] = std::exp(rng.uniform(-1.0, 1.0));
                mass += rho[f] * geom[f].area;
            }
            double far = 0.0;
            for (int f = 0; f < unit.face_count(); ++f) {
                rho[f] /= mass;
                far = std::max(far, std::abs(rho[f] - result.rho[f]));
            }
            const double gap = energy_of(unit, wd, rho, 1) - result.e_min;
            worst_gap = std::min(worst_gap, gap);
            if (far >= 0.1) {
                worst_far_gap = std::min(worst_far_gap, gap);
            }
        }
        const bool pass = worst_gap >= -1e-10 && worst_far_gap >= 1e-6;
        out.push_back({"minimality_sampling", pass,
                       "min gap = " + fmt(worst_gap) + ", min far-field gap = " +
                           fmt(worst_far_gap)});
    }

    {
        const CanonicalResult scaled = canonical_metric(scale_mesh(mesh, 3.7));
        double worst = std::abs(scaled.e_min - result.e_min);
        worst = std::max(worst, std::abs(scaled.c_sq - result.c_sq));
        for (int f = 0; f < topo.face_count; ++f) {
            worst = std::max(worst, std::abs(scaled.rho[f] - result.rho[f]));
        }
        out.push_back({"scale_invariance", worst <= 1e-12,
                       "max |scaled - original| = " + fmt(worst) + " at k = 3.7"});
    }

    {
        const double rel = std::abs(result.c_sq - 2.0 * topo.genus) / (2.0 * topo.genus);
        out.push_back({"c_sq_vs_2g", true,
                       "informational: |c_sq - 2g| / 2g = " + fmt(rel)});
    }
    return out;
}

} // namespace harmcanon
