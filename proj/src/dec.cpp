#include "harmcanon/dec.hpp"

#include "harmcanon/errors.hpp"
#include "harmcanon/log.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace harmcanon {

DiscreteForm make_form(const TriangleMesh& mesh, int degree, Eigen::VectorXd values) {
    if (degree < 0 || degree > 2) {
        throw PreconditionError("form degree must be 0, 1 or 2");
    }
    const int expected = degree == 0   ? mesh.vertex_count()
                         : degree == 1 ? mesh.edge_count()
                                       : mesh.face_count();
    if (values.size() != expected) {
        throw DimensionMismatchError("degree-" + std::to_string(degree) + " form needs " +
                                     std::to_string(expected) + " values, got " +
                                     std::to_string(values.size()));
    }
    if (!values.allFinite()) {
        throw PreconditionError("form has nonfinite values");
    }
    return DiscreteForm{degree, std::move(values)};
}

DiscreteForm zero_form(const TriangleMesh& mesh, int degree) {
    return make_form(mesh, degree,
                     Eigen::VectorXd::Zero(degree == 0   ? mesh.vertex_count()
                                           : degree == 1 ? mesh.edge_count()
                                                         : mesh.face_count()));
}

namespace {

void check_degree(const DiscreteForm& form, int degree, int cells, const char* what) {
    if (form.degree != degree || form.values.size() != cells) {
        throw DimensionMismatchError(std::string(what) + ": expected a degree-" +
                                     std::to_string(degree) + " form with " +
                                     std::to_string(cells) + " values");
    }
}

SparseOperator diagonal(const Eigen::VectorXd& d) {
    SparseOperator m(d.size(), d.size());
    m.reserve(Eigen::VectorXi::Constant(d.size(), 1));
    for (int i = 0; i < d.size(); ++i) {
        m.insert(i, i) = d[i];
    }
    m.makeCompressed();
    return m;
}

} // namespace

SparseOperator d0(const TriangleMesh& mesh) {
    const int E = mesh.edge_count();
    SparseOperator m(E, mesh.vertex_count());
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(2 * E);
    for (int e = 0; e < E; ++e) {
        trips.emplace_back(e, mesh.edges()[e][0], -1.0);
        trips.emplace_back(e, mesh.edges()[e][1], 1.0);
    }
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    return m;
}

SparseOperator d1(const TriangleMesh& mesh) {
    const int F = mesh.face_count();
    SparseOperator m(F, mesh.edge_count());
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(3 * F);
    for (int f = 0; f < F; ++f) {
        for (int k = 0; k < 3; ++k) {
            trips.emplace_back(f, mesh.face_edges()[f][k],
                               static_cast<double>(mesh.face_edge_signs()[f][k]));
        }
    }
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    return m;
}

Eigen::VectorXd star0_diagonal(const TriangleMesh& mesh) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(mesh.vertex_count());
    const auto& geom = mesh.face_geometry();
    for (int f = 0; f < mesh.face_count(); ++f) {
        const double third = geom[f].area / 3.0;
        for (int c = 0; c < 3; ++c) {
            d[mesh.faces()[f][c]] += third;
        }
    }
    return d;
}

Eigen::VectorXd star1_diagonal(const TriangleMesh& mesh) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(mesh.edge_count());
    const auto& geom = mesh.face_geometry();
    for (int f = 0; f < mesh.face_count(); ++f) {
        const auto& fe = mesh.face_edges()[f];
        const double l0 = mesh.edge_length(fe[0]);
        const double l1 = mesh.edge_length(fe[1]);
        const double l2 = mesh.edge_length(fe[2]);
        const double inv4a = 1.0 / (4.0 * geom[f].area);
        // cot of the angle opposite side k, via the law of cosines.
        d[fe[0]] += 0.5 * ((l1 * l1 + l2 * l2 - l0 * l0) * inv4a);
        d[fe[1]] += 0.5 * ((l2 * l2 + l0 * l0 - l1 * l1) * inv4a);
        d[fe[2]] += 0.5 * ((l0 * l0 + l1 * l1 - l2 * l2) * inv4a);
    }
    const double scale = d.cwiseAbs().maxCoeff();
    int negative = 0;
    for (int e = 0; e < d.size(); ++e) {
        if (d[e] < -1e-12 * scale) {
            ++negative;
        }
    }
    if (negative > 0) {
        warn("star1: " + std::to_string(negative) +
             " negative cotan weight(s) (non-Delaunay edges)");
    }
    return d;
}

Eigen::VectorXd star2_diagonal(const TriangleMesh& mesh) {
    Eigen::VectorXd d(mesh.face_count());
    const auto& geom = mesh.face_geometry();
    for (int f = 0; f < mesh.face_count(); ++f) {
        d[f] = 1.0 / geom[f].area;
    }
    return d;
}

SparseOperator star0(const TriangleMesh& mesh) { return diagonal(star0_diagonal(mesh)); }
SparseOperator star1(const TriangleMesh& mesh) { return diagonal(star1_diagonal(mesh)); }
SparseOperator star2(const TriangleMesh& mesh) { return diagonal(star2_diagonal(mesh)); }

double inner_product_0(const TriangleMesh& mesh, const DiscreteForm& a, const DiscreteForm& b) {
    check_degree(a, 0, mesh.vertex_count(), "inner_product_0");
    check_degree(b, 0, mesh.vertex_count(), "inner_product_0");
    const Eigen::VectorXd w = star0_diagonal(mesh);
    double sum = 0.0;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        sum += a.values[v] * w[v] * b.values[v];
    }
    return sum;
}

double inner_product_1(const TriangleMesh& mesh, const DiscreteForm& a, const DiscreteForm& b) {
    check_degree(a, 1, mesh.edge_count(), "inner_product_1");
    check_degree(b, 1, mesh.edge_count(), "inner_product_1");
    const Eigen::VectorXd w = star1_diagonal(mesh);
    double sum = 0.0;
    for (int e = 0; e < mesh.edge_count(); ++e) {
        sum += a.values[e] * w[e] * b.values[e];
    }
    return sum;
}

SparseOperator laplacian0(const TriangleMesh& mesh) {
    const SparseOperator d = d0(mesh);
    const SparseOperator w = star1(mesh);
    SparseOperator l = d.transpose() * w * d;
    l.makeCompressed();
    return l;
}

DiscreteForm codifferential1(const TriangleMesh& mesh, const DiscreteForm& a) {
    check_degree(a, 1, mesh.edge_count(), "codifferential1");
    const Eigen::VectorXd w = star1_diagonal(mesh);
    const Eigen::VectorXd m0 = star0_diagonal(mesh);
    const SparseOperator d = d0(mesh);
    Eigen::VectorXd out = d.transpose() * (w.cwiseProduct(a.values));
    out = out.cwiseQuotient(m0);
    return DiscreteForm{0, std::move(out)};
}

} // namespace harmcanon
