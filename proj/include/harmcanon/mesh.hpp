#pragma once

#include <array>
#include <optional>
#include <tuple>
#include <vector>

namespace harmcanon {

/// Area and interior angles of one triangle, from intrinsic lengths.
struct FaceGeometry {
    double area;
    std::array<double, 3> angles; // angle at corner k, radians
};

struct MeshTopology {
    int vertex_count = 0;
    int edge_count = 0;
    int face_count = 0;
    int euler_characteristic = 0;
    int genus = 0;
    int betti1 = 0;
};

/// Closed oriented triangulated surface with intrinsic edge-length geometry.
///
/// Faces are counterclockwise vertex triples. Edges carry the canonical
/// orientation low vertex index -> high vertex index and are stored as an
/// indexed list: parallel edges (two edges with the same endpoints, as produced
/// by coarse quotient constructions such as the 2x2 torus or the once-refined
/// identified octagon) are distinct edge ids. Embedded positions, when present,
/// only seed the lengths; all geometry derives from the lengths.
///
/// Construction validates: closedness (every edge has exactly two incident
/// faces with opposite induced orientations), orientability, vertex-manifoldness,
/// connectivity, and the strict triangle inequality per face. Invalid input
/// throws TopologyError / GeometryError; meshes are rejected, never repaired.
class TriangleMesh {
public:
    /// Build from faces plus lengths keyed by (i, j) vertex pairs; i < j, each
    /// pair unique. The common case for file ingestion.
    static TriangleMesh from_face_lengths(int vertex_count,
                                          std::vector<std::array<int, 3>> faces,
                                          const std::vector<std::tuple<int, int, double>>& edge_lengths,
                                          std::vector<std::array<double, 3>> positions = {});

    /// Build from explicit connectivity: an indexed edge list with per-face
    /// edge incidence. Required when parallel edges are present. face_edges[f][k]
    /// is the edge under the directed side v_k -> v_{k+1} of face f and
    /// face_edge_signs[f][k] is +1 when that direction agrees with the edge's
    /// stored orientation. Edges are re-canonicalized to low -> high internally.
    static TriangleMesh from_connectivity(int vertex_count,
                                          std::vector<std::array<int, 3>> faces,
                                          std::vector<std::array<int, 2>> edges,
                                          std::vector<double> edge_lengths,
                                          std::vector<std::array<int, 3>> face_edges,
                                          std::vector<std::array<int, 3>> face_edge_signs,
                                          std::vector<std::array<double, 3>> positions = {});

    /// Build from an embedding; lengths are Euclidean distances.
    static TriangleMesh from_positions(std::vector<std::array<int, 3>> faces,
                                       std::vector<std::array<double, 3>> positions);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }

    const std::vector<std::array<int, 3>>& faces() const { return faces_; }
    /// Canonically oriented endpoints (low, high) per edge id.
    const std::vector<std::array<int, 2>>& edges() const { return edges_; }
    const std::vector<double>& edge_lengths() const { return edge_lengths_; }
    double edge_length(int e) const { return edge_lengths_[e]; }

    /// Edge id between two vertices. Throws if absent or ambiguous (parallel).
    int edge_between(int i, int j) const;

    const std::vector<std::array<int, 3>>& face_edges() const { return face_edges_; }
    const std::vector<std::array<int, 3>>& face_edge_signs() const { return face_edge_signs_; }

    bool has_positions() const { return !positions_.empty(); }
    const std::vector<std::array<double, 3>>& positions() const { return positions_; }
    bool has_parallel_edges() const { return has_parallel_edges_; }

    double total_area() const { return total_area_; }
    const std::vector<FaceGeometry>& face_geometry() const { return face_geometry_; }

private:
    TriangleMesh() = default;
    void validate_and_finish();

    int vertex_count_ = 0;
    std::vector<std::array<int, 3>> faces_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<double> edge_lengths_;
    std::vector<std::array<int, 3>> face_edges_;
    std::vector<std::array<int, 3>> face_edge_signs_;
    std::vector<std::array<double, 3>> positions_;
    std::vector<FaceGeometry> face_geometry_;
    double total_area_ = 0.0;
    bool has_parallel_edges_ = false;
};

/// Area and angles of a single triangle with lengths (l0, l1, l2), where side k
/// joins corners k and k+1 and the angle at corner k is opposite side k+1.
/// Uses the sorted (Kahan) evaluation of Heron's formula. Throws GeometryError
/// on nonpositive lengths or a violated strict triangle inequality.
FaceGeometry triangle_geometry(double l0, double l1, double l2);

/// Per-face areas and interior angles of the whole mesh (cached at build time).
const std::vector<FaceGeometry>& face_geometry(const TriangleMesh& mesh);

/// Counts, Euler characteristic, genus and first Betti number.
MeshTopology topology(const TriangleMesh& mesh);

/// Unit-square flat torus: resolution x resolution periodic grid, each cell
/// split along the same diagonal. Total area 1, all faces congruent right
/// triangles. resolution >= 2.
TriangleMesh generate_flat_torus(int resolution);

/// Genus-2 surface: regular Euclidean octagon with opposite sides identified
/// (one vertex, cone angle 6 pi), triangulated from the octagon center and
/// refined `refinement` >= 1 times by intrinsic midpoint subdivision. Lengths
/// come from the planar octagon with unit circumradius; there is no embedding.
TriangleMesh generate_genus2(int refinement);

/// Rescale all edge lengths so the total area becomes 1.
TriangleMesh normalize_area(const TriangleMesh& mesh);

/// Multiply all edge lengths (and positions, if any) by k > 0.
TriangleMesh scale_mesh(const TriangleMesh& mesh, double k);

/// Sum of incident interior angles per vertex (2 pi at intrinsically flat points).
std::vector<double> vertex_angle_sums(const TriangleMesh& mesh);

} // namespace harmcanon
