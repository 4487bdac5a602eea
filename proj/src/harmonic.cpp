#include "harmcanon/harmonic.hpp"

#include "harmcanon/errors.hpp"
#include "harmcanon/log.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <string>

namespace harmcanon {

double solver_tolerance() {
    if (const char* env = std::getenv("HARMCANON_SOLVER_TOL")) {
        char* end = nullptr;
        const double tol = std::strtod(env, &end);
        if (end != env && tol > 0.0 && std::isfinite(tol)) {
            return tol;
        }
        warn("ignoring invalid HARMCANON_SOLVER_TOL value '" + std::string(env) + "'");
    }
    return 1e-10;
}

namespace {

// Per-edge half-edge slots: slot[e][0] = face traversing e forward,
// slot[e][1] = face traversing it backward. Unique on a validated mesh.
std::vector<std::array<int, 2>> edge_face_slots(const TriangleMesh& mesh) {
    std::vector<std::array<int, 2>> slot(mesh.edge_count(), {-1, -1});
    for (int f = 0; f < mesh.face_count(); ++f) {
        for (int k = 0; k < 3; ++k) {
            const int e = mesh.face_edges()[f][k];
            slot[e][mesh.face_edge_signs()[f][k] == 1 ? 0 : 1] = f;
        }
    }
    return slot;
}

} // namespace

HomologyGenerators homology_generators(const TriangleMesh& mesh) {
    const MeshTopology topo = topology(mesh);
    if (topo.genus == 0) {
        throw AssumptionError("genus-0 surface: H^1(M) = 0, no harmonic basis exists");
    }
    const int V = mesh.vertex_count();
    const int E = mesh.edge_count();
    const int F = mesh.face_count();

    // Spanning tree of the vertex graph, BFS from vertex 0.
    std::vector<std::vector<std::pair<int, int>>> vadj(V); // (neighbor, edge)
    for (int e = 0; e < E; ++e) {
        vadj[mesh.edges()[e][0]].emplace_back(mesh.edges()[e][1], e);
        vadj[mesh.edges()[e][1]].emplace_back(mesh.edges()[e][0], e);
    }
    for (auto& a : vadj) {
        std::sort(a.begin(), a.end());
    }
    std::vector<char> in_tree(E, 0);
    std::vector<int> parent(V, -1), parent_edge(V, -1), depth(V, 0);
    {
        std::vector<char> seen(V, 0);
        seen[0] = 1;
        std::deque<int> queue{0};
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (const auto& [w, e] : vadj[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    in_tree[e] = 1;
                    parent[w] = v;
                    parent_edge[w] = e;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    // Spanning cotree of the dual graph over the remaining edges, BFS from face 0.
    const auto slot = edge_face_slots(mesh);
    std::vector<std::vector<std::pair<int, int>>> fadj(F);
    for (int e = 0; e < E; ++e) {
        if (in_tree[e]) continue;
        fadj[slot[e][0]].emplace_back(slot[e][1], e);
        fadj[slot[e][1]].emplace_back(slot[e][0], e);
    }
    for (auto& a : fadj) {
        std::sort(a.begin(), a.end());
    }
    std::vector<char> in_cotree(E, 0);
    std::vector<int> fparent(F, -1), fparent_edge(F, -1);
    {
        std::vector<char> seen(F, 0);
        seen[0] = 1;
        std::deque<int> queue{0};
        while (!queue.empty()) {
            const int f = queue.front();
            queue.pop_front();
            for (const auto& [g, e] : fadj[f]) {
                if (!seen[g]) {
                    seen[g] = 1;
                    in_cotree[e] = 1;
                    fparent[g] = f;
                    fparent_edge[g] = e;
                    queue.push_back(g);
                }
            }
        }
    }

    std::vector<int> leftover;
    for (int e = 0; e < E; ++e) {
        if (!in_tree[e] && !in_cotree[e]) {
            leftover.push_back(e);
        }
    }
    if (static_cast<int>(leftover.size()) != topo.betti1) {
        throw TopologyError("tree-cotree leftover count " + std::to_string(leftover.size()) +
                            " does not match betti1 " + std::to_string(topo.betti1));
    }

    HomologyGenerators out;
    for (const int l : leftover) {
        // Dual cycle: cross l from its +1 face to its -1 face, then return
        // through the cotree. Each dual step into face Y through edge e adds
        // the sign of Y's traversal of e, so d1 of the result telescopes to
        // zero exactly.
        Eigen::VectorXd om = Eigen::VectorXd::Zero(E);
        const int fa = slot[l][0], fb = slot[l][1];
        om[l] += -1.0; // sign of fb's traversal of l
        for (int f = fb; f != 0;) {
            const int e = fparent_edge[f];
            const int pf = fparent[f];
            om[e] += slot[e][0] == pf ? 1.0 : -1.0;
            f = pf;
        }
        std::vector<std::pair<int, double>> down;
        for (int f = fa; f != 0;) {
            const int e = fparent_edge[f];
            down.emplace_back(e, slot[e][0] == f ? 1.0 : -1.0);
            f = fparent[f];
        }
        for (auto it = down.rbegin(); it != down.rend(); ++it) {
            om[it->first] += it->second;
        }
        out.forms.push_back(DiscreteForm{1, std::move(om)});

        // Primal cycle: the leftover edge followed by the tree path back.
        GeneratorCycle cyc;
        int p = mesh.edges()[l][0], q = mesh.edges()[l][1];
        cyc.steps.emplace_back(l, 1); // p -> q
        int x = q, y = p;
        std::vector<std::pair<int, int>> from_q, from_p;
        while (depth[x] > depth[y]) {
            from_q.emplace_back(parent_edge[x], mesh.edges()[parent_edge[x]][0] == x ? 1 : -1);
            x = parent[x];
        }
        while (depth[y] > depth[x]) {
            from_p.emplace_back(parent_edge[y], mesh.edges()[parent_edge[y]][0] == y ? 1 : -1);
            y = parent[y];
        }
        while (x != y) {
            from_q.emplace_back(parent_edge[x], mesh.edges()[parent_edge[x]][0] == x ? 1 : -1);
            x = parent[x];
            from_p.emplace_back(parent_edge[y], mesh.edges()[parent_edge[y]][0] == y ? 1 : -1);
            y = parent[y];
        }
        // q up to the common ancestor, then down to p with flipped directions.
        for (const auto& s : from_q) {
            cyc.steps.push_back(s);
        }
        for (auto it = from_p.rbegin(); it != from_p.rend(); ++it) {
            cyc.steps.emplace_back(it->first, -it->second);
        }
        out.cycles.push_back(std::move(cyc));
    }
    return out;
}

double cycle_period(const DiscreteForm& form, const GeneratorCycle& cycle) {
    double sum = 0.0;
    for (const auto& [e, s] : cycle.steps) {
        sum += s * form.values[e];
    }
    return sum;
}

namespace {

// Shared state for projecting several closed 1-forms on one mesh: the weak
// Laplacian grounded at vertex 0 is factorized once.
class Projector {
public:
    explicit Projector(const TriangleMesh& mesh)
        : mesh_(mesh),
          w_(star1_diagonal(mesh)),
          m0_(star0_diagonal(mesh)),
          d0_(d0(mesh)),
          d1_(d1(mesh)),
          tol_(solver_tolerance()) {
        laplacian_ = SparseOperator(d0_.transpose()) * w_.asDiagonal() * d0_;
        laplacian_.makeCompressed();
        const int n = mesh.vertex_count();
        SparseOperator reduced = laplacian_.block(1, 1, n - 1, n - 1);
        reduced.makeCompressed();
        ldlt_.compute(reduced);
        if (ldlt_.info() != Eigen::Success) {
            throw SolverError("harmonic projection: Cholesky factorization failed");
        }
    }

    DiscreteForm project(const DiscreteForm& omega) const {
        if (omega.degree != 1 || omega.values.size() != mesh_.edge_count()) {
            throw DimensionMismatchError("harmonic_projection expects a 1-form on this mesh");
        }
        const Eigen::VectorXd closed = d1_ * omega.values;
        if (closed.cwiseAbs().maxCoeff() != 0.0) {
            throw PreconditionError("harmonic_projection input is not exactly closed");
        }
        const Eigen::VectorXd rhs = d0_.transpose() * w_.cwiseProduct(omega.values);
        const int n = mesh_.vertex_count();
        Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
        u.tail(n - 1) = ldlt_.solve(rhs.tail(n - 1));
        if (ldlt_.info() != Eigen::Success) {
            throw SolverError("harmonic projection: solve failed");
        }
        // Gauge: star0-weighted mean zero (does not affect xi).
        u.array() -= m0_.dot(u) / m0_.sum();

        Eigen::VectorXd xi = omega.values - d0_ * u;
        // The weak coclosedness residual of xi is exactly the solve residual.
        const double rhs_scale = rhs.cwiseAbs().maxCoeff();
        const double residual = (d0_.transpose() * w_.cwiseProduct(xi)).cwiseAbs().maxCoeff();
        if (residual > tol_ * rhs_scale + 1e-12) {
            throw SolverError("harmonic projection residual " + std::to_string(residual) +
                              " exceeds tolerance");
        }
        return DiscreteForm{1, std::move(xi)};
    }

    const Eigen::VectorXd& star1_diag() const { return w_; }

private:
    const TriangleMesh& mesh_;
    Eigen::VectorXd w_;
    Eigen::VectorXd m0_;
    SparseOperator d0_;
    SparseOperator d1_;
    SparseOperator laplacian_;
    double tol_;
    Eigen::SimplicialLDLT<SparseOperator> ldlt_;
};

std::vector<DiscreteForm> gram_schmidt(const std::vector<DiscreteForm>& forms,
                                       const Eigen::VectorXd& w, int edge_count) {
    const auto ip = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        double sum = 0.0;
        for (int e = 0; e < edge_count; ++e) {
            sum += a[e] * w[e] * b[e];
        }
        return sum;
    };
    double scale = 0.0;
    for (const auto& f : forms) {
        if (f.degree != 1 || f.values.size() != edge_count) {
            throw DimensionMismatchError("orthonormalize expects 1-forms on this mesh");
        }
        scale = std::max(scale, std::sqrt(std::max(ip(f.values, f.values), 0.0)));
    }
    std::vector<DiscreteForm> out;
    for (const auto& f : forms) {
        Eigen::VectorXd v = f.values;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : out) {
                v -= ip(v, u.values) * u.values;
            }
        }
        const double norm = std::sqrt(std::max(ip(v, v), 0.0));
        if (!(norm > 1e-12 * scale)) {
            throw RankDeficiencyError("orthonormalize: numerically dependent input (norm " +
                                      std::to_string(norm) + ")");
        }
        out.push_back(DiscreteForm{1, v / norm});
    }
    return out;
}

} // namespace

DiscreteForm harmonic_projection(const TriangleMesh& mesh, const DiscreteForm& omega) {
    return Projector(mesh).project(omega);
}

std::vector<DiscreteForm> orthonormalize(const TriangleMesh& mesh,
                                         const std::vector<DiscreteForm>& forms) {
    return gram_schmidt(forms, star1_diagonal(mesh), mesh.edge_count());
}

HarmonicBasis harmonic_basis(const TriangleMesh& mesh) {
    const HomologyGenerators gens = homology_generators(mesh);
    const Projector projector(mesh);

    std::vector<DiscreteForm> projected;
    projected.reserve(gens.forms.size());
    HarmonicBasis basis;
    for (const auto& g : gens.forms) {
        projected.push_back(projector.project(g));
        basis.solver_iterations.push_back(1);
    }
    basis.forms = gram_schmidt(projected, projector.star1_diag(), mesh.edge_count());

    const int p = static_cast<int>(basis.forms.size());
    const Eigen::VectorXd& w = projector.star1_diag();
    const SparseOperator d1m = d1(mesh);
    const SparseOperator d0t = SparseOperator(d0(mesh).transpose());
    for (int i = 0; i < p; ++i) {
        const Eigen::VectorXd& a = basis.forms[i].values;
        for (int j = 0; j < p; ++j) {
            double g = 0.0;
            for (int e = 0; e < mesh.edge_count(); ++e) {
                g += a[e] * w[e] * basis.forms[j].values[e];
            }
            basis.gram_residual =
                std::max(basis.gram_residual, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
        basis.closedness_residual =
            std::max(basis.closedness_residual, (d1m * a).cwiseAbs().maxCoeff());
        basis.coclosedness_residual = std::max(
            basis.coclosedness_residual, (d0t * w.cwiseProduct(a)).cwiseAbs().maxCoeff());
    }
    return basis;
}

} // namespace harmcanon
