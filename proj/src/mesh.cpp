#include "harmcanon/mesh.hpp"

#include "harmcanon/errors.hpp"
#include "harmcanon/log.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <string>

namespace harmcanon {

namespace {

std::string edge_str(int a, int b) {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

} // namespace

FaceGeometry triangle_geometry(double l0, double l1, double l2) {
    for (double l : {l0, l1, l2}) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw GeometryError("nonpositive or nonfinite edge length");
        }
    }
    // Kahan's sorted evaluation of Heron's formula: exact when the products
    // are; stable for needle triangles.
    double a = l0, b = l1, c = l2;
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    const double t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if (!(t > 0.0)) {
        throw GeometryError("triangle inequality violated for lengths (" + std::to_string(l0) +
                            ", " + std::to_string(l1) + ", " + std::to_string(l2) + ")");
    }
    FaceGeometry g;
    g.area = 0.25 * std::sqrt(t);
    // Angle at corner k lies between sides k and k+2 and is opposite side k+1.
    const std::array<double, 3> l{l0, l1, l2};
    for (int k = 0; k < 3; ++k) {
        const double adj1 = l[k];
        const double adj2 = l[(k + 2) % 3];
        const double opp = l[(k + 1) % 3];
        double q = (adj1 * adj1 + adj2 * adj2 - opp * opp) / (2.0 * adj1 * adj2);
        q = std::clamp(q, -1.0, 1.0);
        g.angles[k] = std::acos(q);
    }
    return g;
}

TriangleMesh TriangleMesh::from_face_lengths(int vertex_count,
                                             std::vector<std::array<int, 3>> faces,
                                             const std::vector<std::tuple<int, int, double>>& edge_lengths,
                                             std::vector<std::array<double, 3>> positions) {
    // Derive the canonical edge list from the faces: sorted unique pairs.
    std::vector<std::array<int, 2>> pairs;
    pairs.reserve(faces.size() * 3);
    for (const auto& f : faces) {
        for (int k = 0; k < 3; ++k) {
            int a = f[k], b = f[(k + 1) % 3];
            pairs.push_back({std::min(a, b), std::max(a, b)});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    std::map<std::array<int, 2>, int> index;
    for (int e = 0; e < static_cast<int>(pairs.size()); ++e) {
        index[pairs[e]] = e;
    }

    std::vector<double> lengths(pairs.size(), -1.0);
    for (const auto& [i, j, len] : edge_lengths) {
        const std::array<int, 2> key{std::min(i, j), std::max(i, j)};
        auto it = index.find(key);
        if (it == index.end()) {
            throw PreconditionError("edge length given for nonexistent edge " + edge_str(i, j));
        }
        if (lengths[it->second] >= 0.0) {
            throw PreconditionError("duplicate edge length entry for " + edge_str(i, j));
        }
        lengths[it->second] = len;
    }
    for (int e = 0; e < static_cast<int>(pairs.size()); ++e) {
        if (lengths[e] < 0.0) {
            throw PreconditionError("missing edge length for " + edge_str(pairs[e][0], pairs[e][1]));
        }
    }

    std::vector<std::array<int, 3>> face_edges(faces.size());
    std::vector<std::array<int, 3>> face_edge_signs(faces.size());
    for (size_t f = 0; f < faces.size(); ++f) {
        for (int k = 0; k < 3; ++k) {
            int a = faces[f][k], b = faces[f][(k + 1) % 3];
            face_edges[f][k] = index.at({std::min(a, b), std::max(a, b)});
            face_edge_signs[f][k] = a < b ? 1 : -1;
        }
    }

    TriangleMesh m;
    m.vertex_count_ = vertex_count;
    m.faces_ = std::move(faces);
    m.edges_ = std::move(pairs);
    m.edge_lengths_ = std::move(lengths);
    m.face_edges_ = std::move(face_edges);
    m.face_edge_signs_ = std::move(face_edge_signs);
    m.positions_ = std::move(positions);
    m.validate_and_finish();
    return m;
}

TriangleMesh TriangleMesh::from_connectivity(int vertex_count,
                                             std::vector<std::array<int, 3>> faces,
                                             std::vector<std::array<int, 2>> edges,
                                             std::vector<double> edge_lengths,
                                             std::vector<std::array<int, 3>> face_edges,
                                             std::vector<std::array<int, 3>> face_edge_signs,
                                             std::vector<std::array<double, 3>> positions) {
    if (edges.size() != edge_lengths.size() || faces.size() != face_edges.size() ||
        faces.size() != face_edge_signs.size()) {
        throw PreconditionError("connectivity arrays have inconsistent sizes");
    }
    // Canonicalize edge orientations to low -> high.
    std::vector<int> flip(edges.size(), 1);
    for (size_t e = 0; e < edges.size(); ++e) {
        auto& [p, q] = edges[e];
        if (p == q) {
            throw TopologyError("loop edge at vertex " + std::to_string(p));
        }
        if (p > q) {
            std::swap(p, q);
            flip[e] = -1;
        }
    }
    for (size_t f = 0; f < faces.size(); ++f) {
        for (int k = 0; k < 3; ++k) {
            face_edge_signs[f][k] *= flip[face_edges[f][k]];
        }
    }

    // Canonical edge order: ascending (low, high), parallel copies keeping
    // their relative order. All construction paths agree on this indexing.
    std::vector<int> order(edges.size());
    for (size_t e = 0; e < edges.size(); ++e) {
        order[e] = static_cast<int>(e);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&edges](int a, int b) { return edges[a] < edges[b]; });
    std::vector<int> rank(edges.size());
    std::vector<std::array<int, 2>> sorted_edges(edges.size());
    std::vector<double> sorted_lengths(edges.size());
    for (size_t i = 0; i < order.size(); ++i) {
        rank[order[i]] = static_cast<int>(i);
        sorted_edges[i] = edges[order[i]];
        sorted_lengths[i] = edge_lengths[order[i]];
    }
    edges = std::move(sorted_edges);
    edge_lengths = std::move(sorted_lengths);
    for (size_t f = 0; f < faces.size(); ++f) {
        for (int k = 0; k < 3; ++k) {
            face_edges[f][k] = rank[face_edges[f][k]];
        }
    }

    TriangleMesh m;
    m.vertex_count_ = vertex_count;
    m.faces_ = std::move(faces);
    m.edges_ = std::move(edges);
    m.edge_lengths_ = std::move(edge_lengths);
    m.face_edges_ = std::move(face_edges);
    m.face_edge_signs_ = std::move(face_edge_signs);
    m.positions_ = std::move(positions);
    m.validate_and_finish();
    return m;
}

TriangleMesh TriangleMesh::from_positions(std::vector<std::array<int, 3>> faces,
                                          std::vector<std::array<double, 3>> positions) {
    const int vertex_count = static_cast<int>(positions.size());
    for (const auto& f : faces) {
        for (int v : f) {
            if (v < 0 || v >= vertex_count) {
                throw ParseError("face vertex index " + std::to_string(v) + " out of range");
            }
        }
    }
    std::vector<std::array<int, 2>> pairs;
    for (const auto& f : faces) {
        for (int k = 0; k < 3; ++k) {
            int a = f[k], b = f[(k + 1) % 3];
            pairs.push_back({std::min(a, b), std::max(a, b)});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    std::vector<std::tuple<int, int, double>> lengths;
    lengths.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        const auto& pa = positions[a];
        const auto& pb = positions[b];
        const double dx = pa[0] - pb[0], dy = pa[1] - pb[1], dz = pa[2] - pb[2];
        const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (!(d > 0.0)) {
            throw GeometryError("zero-length edge " + edge_str(a, b));
        }
        lengths.emplace_back(a, b, d);
    }
    return from_face_lengths(vertex_count, std::move(faces), lengths, std::move(positions));
}

int TriangleMesh::edge_between(int i, int j) const {
    const std::array<int, 2> key{std::min(i, j), std::max(i, j)};
    int found = -1;
    for (int e = 0; e < edge_count(); ++e) {
        if (edges_[e] == key) {
            if (found >= 0) {
                throw PreconditionError("parallel edges between " + edge_str(i, j) +
                                        "; use edge ids directly");
            }
            found = e;
        }
    }
    if (found < 0) {
        throw PreconditionError("no edge between " + edge_str(i, j));
    }
    return found;
}

void TriangleMesh::validate_and_finish() {
    const int V = vertex_count_;
    const int E = edge_count();
    const int F = face_count();
    if (V <= 0 || E <= 0 || F <= 0) {
        throw TopologyError("empty mesh");
    }
    if (!positions_.empty() && static_cast<int>(positions_.size()) != V) {
        throw PreconditionError("positions size does not match vertex count");
    }

    for (int f = 0; f < F; ++f) {
        const auto& fv = faces_[f];
        for (int v : fv) {
            if (v < 0 || v >= V) {
                throw TopologyError("face " + std::to_string(f) + " has vertex index out of range");
            }
        }
        if (fv[0] == fv[1] || fv[1] == fv[2] || fv[2] == fv[0]) {
            throw TopologyError("face " + std::to_string(f) + " has repeated vertices");
        }
    }
    for (int e = 0; e < E; ++e) {
        const auto& [p, q] = edges_[e];
        if (p < 0 || q >= V || p >= q) {
            throw TopologyError("edge " + std::to_string(e) + " has invalid endpoints");
        }
    }

    // Face-edge incidence must spell out the directed boundary.
    for (int f = 0; f < F; ++f) {
        for (int k = 0; k < 3; ++k) {
            const int e = face_edges_[f][k];
            const int s = face_edge_signs_[f][k];
            if (e < 0 || e >= E || (s != 1 && s != -1)) {
                throw TopologyError("face " + std::to_string(f) + " has invalid edge incidence");
            }
            const int a = faces_[f][k], b = faces_[f][(k + 1) % 3];
            const auto& [p, q] = edges_[e];
            const bool ok = (s == 1) ? (p == a && q == b) : (p == b && q == a);
            if (!ok) {
                throw TopologyError("face " + std::to_string(f) +
                                    " edge incidence disagrees with its corners");
            }
        }
    }

    // Closed oriented manifold: every edge has exactly one half-edge in each
    // direction. slot[e] = {(face, side) traversing forward, (face, side) backward}.
    std::vector<std::array<int, 2>> slot(E, {-1, -1}); // encoded 3*f + k
    for (int f = 0; f < F; ++f) {
        for (int k = 0; k < 3; ++k) {
            const int e = face_edges_[f][k];
            const int dir = face_edge_signs_[f][k] == 1 ? 0 : 1;
            if (slot[e][dir] != -1) {
                throw TopologyError(
                    slot[e][1 - dir] == -1
                        ? "non-orientable: edge " + std::to_string(e) +
                              " traversed twice in the same direction"
                        : "non-manifold edge " + std::to_string(e));
            }
            slot[e][dir] = 3 * f + k;
        }
    }
    for (int e = 0; e < E; ++e) {
        if (slot[e][0] == -1 || slot[e][1] == -1) {
            throw TopologyError("boundary edge " + std::to_string(e) + " " +
                                edge_str(edges_[e][0], edges_[e][1]));
        }
    }

    // Vertex links must be single cycles (no pinch points).
    std::vector<int> corner_count(V, 0);
    std::vector<int> some_corner(V, -1);
    for (int f = 0; f < F; ++f) {
        for (int c = 0; c < 3; ++c) {
            corner_count[faces_[f][c]]++;
            some_corner[faces_[f][c]] = 3 * f + c;
        }
    }
    for (int v = 0; v < V; ++v) {
        if (corner_count[v] == 0) {
            throw TopologyError("isolated vertex " + std::to_string(v));
        }
        int visited = 0;
        const int start = some_corner[v];
        int cur = start;
        do {
            ++visited;
            const int f = cur / 3, c = cur % 3;
            // Cross side c (directed v -> v_{c+1}); twin ends at v in the next face.
            const int e = face_edges_[f][c];
            const int dir = face_edge_signs_[f][c] == 1 ? 0 : 1;
            const int twin = slot[e][1 - dir];
            const int tf = twin / 3, tk = twin % 3;
            cur = 3 * tf + (tk + 1) % 3;
            if (faces_[tf][(tk + 1) % 3] != v) {
                throw TopologyError("inconsistent vertex fan at vertex " + std::to_string(v));
            }
        } while (cur != start && visited <= corner_count[v]);
        if (visited != corner_count[v] || cur != start) {
            throw TopologyError("non-manifold vertex " + std::to_string(v));
        }
    }

    // Connectivity over the vertex graph.
    {
        std::vector<std::vector<int>> adjacency(V);
        for (const auto& [p, q] : edges_) {
            adjacency[p].push_back(q);
            adjacency[q].push_back(p);
        }
        std::vector<char> seen(V, 0);
        std::deque<int> queue{0};
        seen[0] = 1;
        int reached = 1;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int w : adjacency[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    queue.push_back(w);
                }
            }
        }
        if (reached != V) {
            throw TopologyError("mesh is disconnected");
        }
    }

    face_geometry_.reserve(F);
    double area = 0.0;
    for (int f = 0; f < F; ++f) {
        const auto& fe = face_edges_[f];
        try {
            face_geometry_.push_back(triangle_geometry(
                edge_lengths_[fe[0]], edge_lengths_[fe[1]], edge_lengths_[fe[2]]));
        } catch (const GeometryError& err) {
            throw GeometryError("face " + std::to_string(f) + ": " + err.what());
        }
        area += face_geometry_[f].area;
    }
    total_area_ = area;

    std::vector<std::array<int, 2>> sorted_pairs = edges_;
    std::sort(sorted_pairs.begin(), sorted_pairs.end());
    has_parallel_edges_ =
        std::adjacent_find(sorted_pairs.begin(), sorted_pairs.end()) != sorted_pairs.end();
}

const std::vector<FaceGeometry>& face_geometry(const TriangleMesh& mesh) {
    return mesh.face_geometry();
}

MeshTopology topology(const TriangleMesh& mesh) {
    MeshTopology t;
    t.vertex_count = mesh.vertex_count();
    t.edge_count = mesh.edge_count();
    t.face_count = mesh.face_count();
    t.euler_characteristic = t.vertex_count - t.edge_count + t.face_count;
    if (t.euler_characteristic % 2 != 0) {
        throw TopologyError("odd Euler characteristic " + std::to_string(t.euler_characteristic));
    }
    t.genus = (2 - t.euler_characteristic) / 2;
    if (t.genus < 0) {
        throw TopologyError("negative genus");
    }
    t.betti1 = 2 * t.genus;
    return t;
}

TriangleMesh generate_flat_torus(int resolution) {
    if (resolution < 2) {
        throw PreconditionError("flat torus resolution must be >= 2");
    }
    const int N = resolution;
    const double h = 1.0 / N;
    const auto vid = [N](int i, int j) { return ((i % N + N) % N) * N + ((j % N + N) % N); };
    // Structural edge ids: x-edges (i,j)->(i+1,j), then y-edges, then diagonals.
    const auto xe = [N](int i, int j) { return (i % N) * N + (j % N); };
    const auto ye = [N](int i, int j) { return N * N + (i % N) * N + (j % N); };
    const auto de = [N](int i, int j) { return 2 * N * N + (i % N) * N + (j % N); };

    const int E = 3 * N * N;
    std::vector<std::array<int, 2>> edges(E);
    std::vector<double> lengths(E);
    const double diag = std::sqrt(2.0) * h;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            edges[xe(i, j)] = {vid(i, j), vid(i + 1, j)};
            lengths[xe(i, j)] = h;
            edges[ye(i, j)] = {vid(i, j), vid(i, j + 1)};
            lengths[ye(i, j)] = h;
            edges[de(i, j)] = {vid(i, j), vid(i + 1, j + 1)};
            lengths[de(i, j)] = diag;
        }
    }

    std::vector<std::array<int, 3>> faces;
    std::vector<std::array<int, 3>> fedges;
    std::vector<std::array<int, 3>> fsigns;
    faces.reserve(2 * N * N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            // Cell split along the diagonal a-c; both faces counterclockwise.
            faces.push_back({a, b, c});
            fedges.push_back({xe(i, j), ye(i + 1, j), de(i, j)});
            fsigns.push_back({1, 1, -1});
            faces.push_back({a, c, d});
            fedges.push_back({de(i, j), xe(i, j + 1), ye(i, j)});
            fsigns.push_back({1, -1, -1});
        }
    }

    std::vector<std::array<double, 3>> positions(N * N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            positions[vid(i, j)] = {i * h, j * h, 0.0};
        }
    }
    return TriangleMesh::from_connectivity(N * N, std::move(faces), std::move(edges),
                                           std::move(lengths), std::move(fedges),
                                           std::move(fsigns), std::move(positions));
}

namespace {

// Delta-complex scratch type for the identified-octagon construction. Unlike
// TriangleMesh it tolerates loop edges and repeated face corners, both present
// in the unrefined quotient; one midpoint subdivision removes the loops.
struct DeltaComplex {
    int vertex_count;
    std::vector<std::array<int, 3>> faces;
    std::vector<std::array<int, 3>> fedges;
    std::vector<std::array<int, 3>> fsigns;
    std::vector<std::array<int, 2>> edges; // oriented; loops allowed
    std::vector<double> lengths;
};

DeltaComplex subdivide(const DeltaComplex& m) {
    const int E0 = static_cast<int>(m.edges.size());
    const int F0 = static_cast<int>(m.faces.size());
    const int V0 = m.vertex_count;

    DeltaComplex out;
    out.vertex_count = V0 + E0;
    out.edges.resize(2 * E0 + 3 * F0);
    out.lengths.resize(2 * E0 + 3 * F0);
    for (int e = 0; e < E0; ++e) {
        const int mid = V0 + e;
        out.edges[2 * e] = {m.edges[e][0], mid};
        out.edges[2 * e + 1] = {mid, m.edges[e][1]};
        out.lengths[2 * e] = out.lengths[2 * e + 1] = m.lengths[e] * 0.5;
    }

    out.faces.resize(4 * F0);
    out.fedges.resize(4 * F0);
    out.fsigns.resize(4 * F0);
    for (int f = 0; f < F0; ++f) {
        const auto [A, B, C] = std::tuple{m.faces[f][0], m.faces[f][1], m.faces[f][2]};
        const auto [eAB, eBC, eCA] = std::tuple{m.fedges[f][0], m.fedges[f][1], m.fedges[f][2]};
        const auto [sAB, sBC, sCA] = std::tuple{m.fsigns[f][0], m.fsigns[f][1], m.fsigns[f][2]};
        const int mAB = V0 + eAB, mBC = V0 + eBC, mCA = V0 + eCA;
        // Midlines, each half as long as the opposite parent side.
        const int l0 = 2 * E0 + 3 * f + 0; // (mAB, mBC), parallel to CA
        const int l1 = 2 * E0 + 3 * f + 1; // (mBC, mCA), parallel to AB
        const int l2 = 2 * E0 + 3 * f + 2; // (mCA, mAB), parallel to BC
        out.edges[l0] = {mAB, mBC};
        out.lengths[l0] = m.lengths[eCA] * 0.5;
        out.edges[l1] = {mBC, mCA};
        out.lengths[l1] = m.lengths[eAB] * 0.5;
        out.edges[l2] = {mCA, mAB};
        out.lengths[l2] = m.lengths[eBC] * 0.5;

        // Half of parent edge e under the face direction X -> Y; `first` picks
        // the half at X. Returns (edge id, sign relative to face direction).
        const auto half = [&](int e, int s, bool first) -> std::pair<int, int> {
            if (s == 1) return {first ? 2 * e : 2 * e + 1, 1};
            return {first ? 2 * e + 1 : 2 * e, -1};
        };

        const auto [a1, a1s] = half(eAB, sAB, true);
        const auto [a2, a2s] = half(eCA, sCA, false);
        out.faces[4 * f + 0] = {A, mAB, mCA};
        out.fedges[4 * f + 0] = {a1, l2, a2};
        out.fsigns[4 * f + 0] = {a1s, -1, a2s};

        const auto [b1, b1s] = half(eBC, sBC, true);
        const auto [b2, b2s] = half(eAB, sAB, false);
        out.faces[4 * f + 1] = {B, mBC, mAB};
        out.fedges[4 * f + 1] = {b1, l0, b2};
        out.fsigns[4 * f + 1] = {b1s, -1, b2s};

        const auto [c1, c1s] = half(eCA, sCA, true);
        const auto [c2, c2s] = half(eBC, sBC, false);
        out.faces[4 * f + 2] = {C, mCA, mBC};
        out.fedges[4 * f + 2] = {c1, l1, c2};
        out.fsigns[4 * f + 2] = {c1s, -1, c2s};

        out.faces[4 * f + 3] = {mAB, mBC, mCA};
        out.fedges[4 * f + 3] = {l0, l1, l2};
        out.fsigns[4 * f + 3] = {1, 1, 1};
    }
    return out;
}

} // namespace

TriangleMesh generate_genus2(int refinement) {
    if (refinement < 1) {
        throw PreconditionError("genus-2 refinement must be >= 1");
    }
    // Regular octagon, unit circumradius, opposite sides glued by translation.
    // All eight corners become one vertex (cone angle 6 pi); the eight sides
    // become four edges. Triangulate from the center: 8 spokes, 8 sector faces.
    // Octagon side i runs corner_i -> corner_{i+1}; it is edge i mod 4, reversed
    // for i >= 4.
    DeltaComplex base;
    base.vertex_count = 2; // 0 = center, 1 = identified corner
    const double side = 2.0 * std::sin(std::numbers::pi / 8.0);
    base.edges.resize(12);
    base.lengths.resize(12);
    for (int i = 0; i < 8; ++i) {
        base.edges[i] = {0, 1};
        base.lengths[i] = 1.0;
    }
    for (int j = 0; j < 4; ++j) {
        base.edges[8 + j] = {1, 1};
        base.lengths[8 + j] = side;
    }
    base.faces.resize(8);
    base.fedges.resize(8);
    base.fsigns.resize(8);
    for (int i = 0; i < 8; ++i) {
        base.faces[i] = {0, 1, 1};
        base.fedges[i] = {i, 8 + (i % 4), (i + 1) % 8};
        base.fsigns[i] = {1, i < 4 ? 1 : -1, -1};
    }

    DeltaComplex m = base;
    for (int r = 0; r < refinement; ++r) {
        m = subdivide(m);
    }
    return TriangleMesh::from_connectivity(m.vertex_count, std::move(m.faces),
                                           std::move(m.edges), std::move(m.lengths),
                                           std::move(m.fedges), std::move(m.fsigns));
}

TriangleMesh scale_mesh(const TriangleMesh& mesh, double k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw PreconditionError("scale factor must be positive and finite");
    }
    std::vector<double> lengths = mesh.edge_lengths();
    for (double& l : lengths) {
        l *= k;
    }
    std::vector<std::array<double, 3>> positions = mesh.positions();
    for (auto& p : positions) {
        p = {p[0] * k, p[1] * k, p[2] * k};
    }
    return TriangleMesh::from_connectivity(mesh.vertex_count(), mesh.faces(), mesh.edges(),
                                           std::move(lengths), mesh.face_edges(),
                                           mesh.face_edge_signs(), std::move(positions));
}

TriangleMesh normalize_area(const TriangleMesh& mesh) {
    return scale_mesh(mesh, 1.0 / std::sqrt(mesh.total_area()));
}

std::vector<double> vertex_angle_sums(const TriangleMesh& mesh) {
    std::vector<double> sums(mesh.vertex_count(), 0.0);
    const auto& geom = mesh.face_geometry();
    for (int f = 0; f < mesh.face_count(); ++f) {
        for (int c = 0; c < 3; ++c) {
            sums[mesh.faces()[f][c]] += geom[f].angles[c];
        }
    }
    return sums;
}

} // namespace harmcanon
