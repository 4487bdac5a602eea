#include "harmcanon/canonical.hpp"

#include "harmcanon/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace harmcanon {

double whitney_wedge_face(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    // 1/6 [(a01 b12 - a12 b01) + (a12 b20 - a20 b12) + (a20 b01 - a01 b20)];
    // grouped in cross-term pairs so that swapping a and b negates each bracket
    // exactly and the diagonal vanishes exactly.
    return ((a[0] * b[1] - a[1] * b[0]) + (a[1] * b[2] - a[2] * b[1]) +
            (a[2] * b[0] - a[0] * b[2])) /
           6.0;
}

namespace {

// Cochain values pulled onto the directed boundary sides of one face.
std::array<double, 3> directed_coefficients(const TriangleMesh& mesh, int f,
                                            const Eigen::VectorXd& values) {
    std::array<double, 3> out;
    for (int k = 0; k < 3; ++k) {
        out[k] = mesh.face_edge_signs()[f][k] * values[mesh.face_edges()[f][k]];
    }
    return out;
}

void check_rho(const TriangleMesh& mesh, const std::vector<double>& rho, int n) {
    if (static_cast<int>(rho.size()) != mesh.face_count()) {
        throw DimensionMismatchError("rho field size does not match face count");
    }
    if (n < 1) {
        throw PreconditionError("n must be >= 1");
    }
    for (int f = 0; f < mesh.face_count(); ++f) {
        if (!(rho[f] > 0.0) || !std::isfinite(rho[f])) {
            throw NonPositiveRhoError("rho has a nonpositive entry at face " + std::to_string(f));
        }
    }
    double mass = 0.0;
    const auto& geom = mesh.face_geometry();
    for (int f = 0; f < mesh.face_count(); ++f) {
        mass += std::pow(rho[f], n) * geom[f].area;
    }
    if (std::abs(mass - 1.0) > 1e-8) {
        throw NormalizationError("rho is not normalized: sum rho^n area = " +
                                 std::to_string(mass));
    }
}

} // namespace

WedgeData wedge_data(const TriangleMesh& mesh, const HarmonicBasis& basis) {
    const int p = static_cast<int>(basis.forms.size());
    if (p == 0) {
        throw DimensionMismatchError("wedge_data: empty basis");
    }
    for (const auto& form : basis.forms) {
        if (form.degree != 1 || form.values.size() != mesh.edge_count()) {
            throw DimensionMismatchError("wedge_data: basis does not belong to this mesh");
        }
    }
    if (std::abs(mesh.total_area() - 1.0) > 1e-8) {
        throw PreconditionError("wedge_data requires a unit-area mesh");
    }

    WedgeData wd;
    wd.c = Eigen::MatrixXd::Zero(p, p);
    wd.f.reserve(mesh.face_count());
    const auto& geom = mesh.face_geometry();
    std::vector<std::array<double, 3>> coeffs(p);
    for (int f = 0; f < mesh.face_count(); ++f) {
        for (int i = 0; i < p; ++i) {
            coeffs[i] = directed_coefficients(mesh, f, basis.forms[i].values);
        }
        Eigen::MatrixXd m(p, p);
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                const double w = whitney_wedge_face(coeffs[i], coeffs[j]);
                m(i, j) = w / geom[f].area;
                wd.c(i, j) += w;
            }
        }
        wd.f.push_back(std::move(m));
    }
    return wd;
}

FField f_field(const WedgeData& wd, const TriangleMesh& mesh) {
    if (static_cast<int>(wd.f.size()) != mesh.face_count()) {
        throw DimensionMismatchError("f_field: wedge data does not belong to this mesh");
    }
    FField out;
    out.f.resize(mesh.face_count());
    const auto& geom = mesh.face_geometry();
    out.min_f = std::numeric_limits<double>::infinity();
    const int p = static_cast<int>(wd.c.rows());
    for (int f = 0; f < mesh.face_count(); ++f) {
        double sq = 0.0;
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                sq += wd.f[f](i, j) * wd.f[f](i, j);
            }
        }
        out.f[f] = std::sqrt(sq);
        out.integral_f += out.f[f] * geom[f].area;
        out.min_f = std::min(out.min_f, out.f[f]);
    }
    return out;
}

std::vector<double> canonical_factor(const std::vector<double>& f, double integral_f, int n) {
    if (n < 1) {
        throw PreconditionError("n must be >= 1");
    }
    if (!(integral_f > 0.0)) {
        throw DegenerateClassError("integral of f is nonpositive: " + std::to_string(integral_f));
    }
    std::vector<double> rho(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        const double ratio = f[i] / integral_f;
        rho[i] = n == 1 ? ratio : std::pow(ratio, 1.0 / n);
    }
    return rho;
}

double minimal_energy(double integral_f, double c_sq) {
    return integral_f * integral_f - c_sq;
}

double degeneracy_threshold(double integral_f, double total_area) {
    return 1e-8 * (integral_f / total_area);
}

double energy_of(const TriangleMesh& mesh, const WedgeData& wd, const std::vector<double>& rho,
                 int n) {
    check_rho(mesh, rho, n);
    const FField ff = f_field(wd, mesh);
    double c_sq = 0.0;
    for (int i = 0; i < wd.c.rows(); ++i) {
        for (int j = 0; j < wd.c.cols(); ++j) {
            c_sq += wd.c(i, j) * wd.c(i, j);
        }
    }
    double sum = 0.0;
    const auto& geom = mesh.face_geometry();
    for (int f = 0; f < mesh.face_count(); ++f) {
        sum += ff.f[f] * ff.f[f] * std::pow(rho[f], -n) * geom[f].area;
    }
    return sum - c_sq;
}

double energy_direct(const TriangleMesh& mesh, const HarmonicBasis& basis, const WedgeData& wd,
                     const std::vector<double>& rho, int n) {
    check_rho(mesh, rho, n);
    const int p = static_cast<int>(basis.forms.size());
    if (wd.c.rows() != p) {
        throw DimensionMismatchError("energy_direct: basis and wedge data disagree");
    }
    double sum = 0.0;
    const auto& geom = mesh.face_geometry();
    for (int f = 0; f < mesh.face_count(); ++f) {
        const double rn = std::pow(rho[f], n);
        const double rinv = 1.0 / rn;
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                const double r = wd.f[f](i, j) * rinv - wd.c(i, j);
                sum += r * r * rn * geom[f].area;
            }
        }
    }
    return sum;
}

CanonicalResult canonical_metric(const TriangleMesh& mesh) {
    const TriangleMesh unit = normalize_area(mesh);
    CanonicalResult out;
    out.topo = topology(unit);
    out.basis = harmonic_basis(unit); // AssumptionError on genus 0
    const WedgeData wd = wedge_data(unit, out.basis);
    const FField ff = f_field(wd, unit);
    out.f_field = ff.f;
    out.integral_f = ff.integral_f;
    out.min_f = ff.min_f;
    out.c = wd.c;
    out.c_sq = 0.0;
    for (int i = 0; i < wd.c.rows(); ++i) {
        for (int j = 0; j < wd.c.cols(); ++j) {
            out.c_sq += wd.c(i, j) * wd.c(i, j);
        }
    }
    out.n = 1;
    out.rho = canonical_factor(ff.f, ff.integral_f, out.n);
    out.e_min = minimal_energy(ff.integral_f, out.c_sq);
    out.degenerate = ff.min_f < degeneracy_threshold(ff.integral_f, unit.total_area());
    return out;
}

std::vector<double> vertex_averaged_field(const TriangleMesh& mesh,
                                          const std::vector<double>& per_face) {
    if (static_cast<int>(per_face.size()) != mesh.face_count()) {
        throw DimensionMismatchError("vertex_averaged_field: size mismatch");
    }
    std::vector<double> num(mesh.vertex_count(), 0.0);
    std::vector<double> den(mesh.vertex_count(), 0.0);
    const auto& geom = mesh.face_geometry();
    for (int f = 0; f < mesh.face_count(); ++f) {
        const double third = geom[f].area / 3.0;
        for (int c = 0; c < 3; ++c) {
            num[mesh.faces()[f][c]] += third * per_face[f];
            den[mesh.faces()[f][c]] += third;
        }
    }
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        num[v] /= den[v];
    }
    return num;
}

} // namespace harmcanon
