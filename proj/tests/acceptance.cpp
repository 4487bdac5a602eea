// Acceptance suite: one pass/fail line per criterion, exit code = failures.
#include "harmcanon/canonical.hpp"
#include "harmcanon/dec.hpp"
#include "harmcanon/errors.hpp"
#include "harmcanon/harmonic.hpp"
#include "harmcanon/mesh.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace harmcanon;

namespace {

int g_failures = 0;

void report(int num, const std::string& label, bool pass, const std::string& detail) {
    std::printf("%s criterion-%d: %s  [%s]\n", pass ? "PASS" : "FAIL", num, label.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++g_failures;
    }
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << std::scientific << x;
    return os.str();
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(eng_() >> 11) * 0x1.0p-53);
    }

private:
    std::mt19937_64 eng_;
};

std::vector<double> random_normalized_rho(const TriangleMesh& m, Rng& rng) {
    std::vector<double> rho(m.face_count());
    double mass = 0.0;
    for (int f = 0; f < m.face_count(); ++f) {
        rho[f] = std::exp(rng.uniform(-1.0, 1.0));
        mass += rho[f] * m.face_geometry()[f].area;
    }
    for (double& r : rho) {
        r /= mass;
    }
    return rho;
}

double c_sq_of(const WedgeData& wd) {
    double s = 0.0;
    for (int i = 0; i < wd.c.rows(); ++i) {
        for (int j = 0; j < wd.c.cols(); ++j) {
            s += wd.c(i, j) * wd.c(i, j);
        }
    }
    return s;
}

// Independent quadrature oracle for the Whitney wedge: edge-midpoint rule on
// the reference triangle, exact for the quadratic integrand.
double wedge_by_quadrature(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const auto density = [&](double x, double y) {
        const std::array<double, 3> l{1.0 - x - y, x, y};
        const std::array<std::array<double, 2>, 3> dl{{{-1, -1}, {1, 0}, {0, 1}}};
        std::array<double, 2> al{0, 0}, be{0, 0};
        const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {1, 2}, {2, 0}}};
        for (int k = 0; k < 3; ++k) {
            const int i = pairs[k].first, j = pairs[k].second;
            const std::array<double, 2> w{l[i] * dl[j][0] - l[j] * dl[i][0],
                                          l[i] * dl[j][1] - l[j] * dl[i][1]};
            al[0] += a[k] * w[0];
            al[1] += a[k] * w[1];
            be[0] += b[k] * w[0];
            be[1] += b[k] * w[1];
        }
        return al[0] * be[1] - al[1] * be[0];
    };
    return 0.5 * (density(0.5, 0.0) + density(0.5, 0.5) + density(0.0, 0.5)) / 3.0;
}

TriangleMesh tetrahedron() {
    return TriangleMesh::from_face_lengths(
        4, {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}},
        {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(HARMCANON_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Regression fixture: e_min of the refinement-3 identified octagon, recorded
// from the first run of this implementation (criterion 3).
constexpr double kGenus2EminFixture = 3.4900066565534273;

void criterion_1_and_2() {
    const auto t0 = std::chrono::steady_clock::now();
    const CanonicalResult r = canonical_metric(generate_flat_torus(16));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double max_rho_dev = 0.0;
    for (double rho : r.rho) {
        max_rho_dev = std::max(max_rho_dev, std::abs(rho - 1.0));
    }
    report(1, "torus formality: e_min <= 1e-10, max|rho-1| <= 1e-8, < 5 s",
           r.e_min <= 1e-10 && max_rho_dev <= 1e-8 && seconds < 5.0,
           "e_min = " + fmt(r.e_min) + ", max|rho-1| = " + fmt(max_rho_dev) + ", " +
               fmt(seconds) + " s");
    report(2, "torus invariant |c_sq - 2| <= 1e-8", std::abs(r.c_sq - 2.0) <= 1e-8,
           "c_sq - 2 = " + fmt(r.c_sq - 2.0));
}

void criterion_3_and_4() {
    std::array<double, 3> e_min{}, c_err{};
    for (int r = 1; r <= 3; ++r) {
        const CanonicalResult res = canonical_metric(generate_genus2(r));
        e_min[r - 1] = res.e_min;
        c_err[r - 1] = std::abs(res.c_sq - 4.0);
    }
    const bool positive = e_min[0] > 0.0 && e_min[1] > 0.0 && e_min[2] > 0.0;
    const double rel_change = std::abs(e_min[2] - e_min[1]) / std::abs(e_min[2]);
    const bool fixture_ok = std::abs(e_min[2] - kGenus2EminFixture) <= 1e-9;
    report(3, "genus-2 non-formality: e_min > 0, stable under refinement, pinned",
           positive && rel_change <= 0.20 && fixture_ok,
           "e_min = {" + fmt(e_min[0]) + ", " + fmt(e_min[1]) + ", " + fmt(e_min[2]) +
               "}, rel change = " + fmt(rel_change) + ", |e3 - fixture| = " +
               fmt(std::abs(e_min[2] - kGenus2EminFixture)));

    const bool monotone = c_err[0] > c_err[1] && c_err[1] > c_err[2];
    const bool small = c_err[2] <= 0.2;
    report(4, "C^2 -> 2g convergence: |c_sq - 4| monotone and <= 0.2 at refinement 3",
           monotone && small,
           "|c_sq - 4| = {" + fmt(c_err[0]) + ", " + fmt(c_err[1]) + ", " + fmt(c_err[2]) +
               "}, monotone = " + (monotone ? "yes" : "no"));
}

void criterion_5() {
    bool pass = true;
    std::string detail;
    for (const auto& [name, mesh] : {std::pair<std::string, TriangleMesh>{
                                         "torus16", generate_flat_torus(16)},
                                     {"genus2r2", normalize_area(generate_genus2(2))}}) {
        const CanonicalResult res = canonical_metric(mesh);
        const TriangleMesh unit = normalize_area(mesh);
        const WedgeData wd = wedge_data(unit, res.basis);
        Rng rng(1234);
        double min_gap = std::numeric_limits<double>::infinity();
        double min_far_gap = std::numeric_limits<double>::infinity();
        int far_count = 0;
        for (int t = 0; t < 100; ++t) {
            const auto rho = random_normalized_rho(unit, rng);
            double far = 0.0;
            for (int f = 0; f < unit.face_count(); ++f) {
                far = std::max(far, std::abs(rho[f] - res.rho[f]));
            }
            const double gap = energy_of(unit, wd, rho, 1) - res.e_min;
            min_gap = std::min(min_gap, gap);
            if (far >= 0.1) {
                ++far_count;
                min_far_gap = std::min(min_far_gap, gap);
            }
        }
        pass = pass && min_gap >= -1e-10 && (far_count == 0 || min_far_gap >= 1e-6);
        detail += name + ": min gap " + fmt(min_gap) + ", far fields " +
                  std::to_string(far_count) + " with min gap " + fmt(min_far_gap) + "; ";
    }
    report(5, "minimality and uniqueness gap over 100 seeded rho fields", pass, detail);
}

void criterion_6() {
    bool pass = true;
    std::string detail;
    for (const auto& [name, mesh] : {std::pair<std::string, TriangleMesh>{
                                         "torus16", generate_flat_torus(16)},
                                     {"genus2r2", normalize_area(generate_genus2(2))}}) {
        const TriangleMesh unit = normalize_area(mesh);
        const HarmonicBasis basis = harmonic_basis(unit);
        const WedgeData wd = wedge_data(unit, basis);
        const FField ff = f_field(wd, unit);
        const double e_min = minimal_energy(ff.integral_f, c_sq_of(wd));
        const double tol = 1e-10 * (1.0 + std::abs(e_min));
        Rng rng(5678);
        double worst = 0.0;
        std::vector<std::vector<double>> fields{canonical_factor(ff.f, ff.integral_f, 1)};
        for (int t = 0; t < 5; ++t) {
            fields.push_back(random_normalized_rho(unit, rng));
        }
        for (const auto& rho : fields) {
            worst = std::max(worst, std::abs(energy_direct(unit, basis, wd, rho, 1) -
                                             energy_of(unit, wd, rho, 1)));
        }
        pass = pass && worst <= tol;
        detail += name + ": max |direct - expanded| = " + fmt(worst) + "; ";
    }
    report(6, "energy definition consistency within 1e-10 (1 + |e_min|)", pass, detail);
}

void criterion_7() {
    bool star1_bitwise = true;
    bool pipeline_ok = true;
    std::string detail;
    for (const auto& [name, mesh] : {std::pair<std::string, TriangleMesh>{
                                         "torus16", generate_flat_torus(16)},
                                     {"genus2r2", generate_genus2(2)}}) {
        const Eigen::VectorXd w = star1_diagonal(mesh);
        const CanonicalResult ref = canonical_metric(mesh);
        for (double k : {0.1, 3.7, 42.0}) {
            const TriangleMesh scaled = scale_mesh(mesh, k);
            const Eigen::VectorXd ws = star1_diagonal(scaled);
            int diffs = 0;
            for (int e = 0; e < w.size(); ++e) {
                if (ws[e] != w[e]) {
                    ++diffs;
                }
            }
            if (diffs > 0) {
                star1_bitwise = false;
                detail += name + " k=" + fmt(k) + ": " + std::to_string(diffs) + "/" +
                          std::to_string(w.size()) + " star1 entries differ (max |d| " +
                          fmt((ws - w).cwiseAbs().maxCoeff()) + "); ";
            }
            const CanonicalResult r = canonical_metric(scaled);
            double worst = std::max(std::abs(r.e_min - ref.e_min), std::abs(r.c_sq - ref.c_sq));
            for (int f = 0; f < mesh.face_count(); ++f) {
                worst = std::max(worst, std::abs(r.rho[f] - ref.rho[f]));
            }
            if (worst > 1e-12) {
                pipeline_ok = false;
                detail += name + " k=" + fmt(k) + ": pipeline drift " + fmt(worst) + "; ";
            }
        }
    }
    if (detail.empty()) {
        detail = "star1 bitwise and pipeline within 1e-12 for k in {0.1, 3.7, 42}";
    }
    report(7, "discrete conformal scale invariance: star1 bitwise, pipeline within 1e-12",
           star1_bitwise && pipeline_ok, detail);
}

void criterion_8() {
    bool pass = true;
    std::string detail;
    for (const auto& [name, mesh] : {std::pair<std::string, TriangleMesh>{
                                         "torus16", generate_flat_torus(16)},
                                     {"genus2r2", normalize_area(generate_genus2(2))}}) {
        const SparseOperator dd = d1(mesh) * d0(mesh);
        double dd_max = 0.0;
        for (int k = 0; k < dd.outerSize(); ++k) {
            for (SparseOperator::InnerIterator it(dd, k); it; ++it) {
                dd_max = std::max(dd_max, std::abs(it.value()));
            }
        }
        const HarmonicBasis basis = harmonic_basis(mesh);
        const WedgeData wd = wedge_data(mesh, basis);
        double antisym = 0.0;
        for (int i = 0; i < wd.c.rows(); ++i) {
            for (int j = 0; j < wd.c.cols(); ++j) {
                antisym = std::max(antisym, std::abs(wd.c(i, j) + wd.c(j, i)));
            }
        }
        for (const auto& fm : wd.f) {
            for (int i = 0; i < fm.rows(); ++i) {
                antisym = std::max(antisym, std::abs(fm(i, i)));
                for (int j = 0; j < fm.cols(); ++j) {
                    antisym = std::max(antisym, std::abs(fm(i, j) + fm(j, i)));
                }
            }
        }
        Rng rng(42);
        const SparseOperator d = d0(mesh);
        const Eigen::VectorXd w = star1_diagonal(mesh);
        const Eigen::VectorXd m0 = star0_diagonal(mesh);
        double adjoint = 0.0;
        for (int t = 0; t < 100; ++t) {
            Eigen::VectorXd alpha(mesh.edge_count()), u(mesh.vertex_count());
            for (int e = 0; e < mesh.edge_count(); ++e) {
                alpha[e] = rng.uniform(-1.0, 1.0);
            }
            for (int v = 0; v < mesh.vertex_count(); ++v) {
                u[v] = rng.uniform(-1.0, 1.0);
            }
            const Eigen::VectorXd delta =
                (d.transpose() * w.cwiseProduct(alpha)).cwiseQuotient(m0);
            const Eigen::VectorXd du = d * u;
            double lhs = 0.0, rhs = 0.0;
            for (int v = 0; v < mesh.vertex_count(); ++v) {
                lhs += delta[v] * m0[v] * u[v];
            }
            for (int e = 0; e < mesh.edge_count(); ++e) {
                rhs += alpha[e] * w[e] * du[e];
            }
            adjoint = std::max(adjoint, std::abs(lhs - rhs));
        }
        const bool ok = dd_max == 0.0 && antisym <= 1e-14 && basis.gram_residual <= 1e-10 &&
                        adjoint <= 1e-12;
        pass = pass && ok;
        detail += name + ": |d1 d0| = " + fmt(dd_max) + ", antisym = " + fmt(antisym) +
                  ", gram = " + fmt(basis.gram_residual) + ", adjoint = " + fmt(adjoint) + "; ";
    }
    report(8, "structural exactness: d1 d0 = 0, antisymmetry, Gram, adjointness", pass, detail);
}

void criterion_9() {
    Rng rng(31415);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        std::array<double, 3> a, b;
        for (int k = 0; k < 3; ++k) {
            a[k] = rng.uniform(-2.0, 2.0);
            b[k] = rng.uniform(-2.0, 2.0);
        }
        worst = std::max(worst, std::abs(whitney_wedge_face(a, b) - wedge_by_quadrature(a, b)));
    }
    const double basis_pair = whitney_wedge_face({1, 0, 0}, {0, 1, 0});
    const bool pass = worst <= 1e-12 && std::abs(basis_pair - 1.0 / 6.0) <= 1e-12;
    report(9, "Whitney wedge matches degree-2 quadrature on 1000 pairs", pass,
           "max error = " + fmt(worst) + ", basis pair = " + fmt(basis_pair));
}

void criterion_10() {
    bool library_ok = false;
    try {
        canonical_metric(tetrahedron());
    } catch (const AssumptionError&) {
        library_ok = true;
    }
    const auto dir = std::filesystem::temp_directory_path() / "harmcanon_acceptance";
    std::filesystem::create_directories(dir);
    const std::string off = (dir / "tet.off").string();
    std::ofstream(off) << "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n"
                       << "3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";
    const int code = run_cli("canonical " + off + " --out " + (dir / "tet.report.json").string());
    report(10, "genus-0 input: AssumptionError and CLI exit 5", library_ok && code == 5,
           std::string("library throw = ") + (library_ok ? "yes" : "no") +
               ", cli exit = " + std::to_string(code));
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1_and_2();
    criterion_3_and_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d of 10 criteria failed\n", g_failures);
    return g_failures;
}
