#pragma once

#include "harmcanon/mesh.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace harmcanon {

enum class MeshFormat { Off, Obj, IntrinsicJson };

/// Parse a mesh from a stream. OFF/OBJ derive edge lengths from vertex
/// positions; the intrinsic JSON format carries lengths directly. OBJ quads
/// and larger polygons are fan-triangulated with a warning; OFF faces must be
/// triangles.
TriangleMesh load_mesh(std::istream& in, MeshFormat format);

/// Load by file extension: .off, .obj, .json / .mesh.json.
TriangleMesh load_mesh_file(const std::string& path);

/// Standard ASCII OFF. Requires vertex positions.
void write_off(std::ostream& out, const TriangleMesh& mesh);

/// Intrinsic mesh JSON: {"faces": [[i,j,k],...], "edge_lengths": [[i,j,len],...]}.
/// Meshes with parallel edges additionally carry "face_edges" (edge ids per
/// face side) since vertex pairs alone cannot name their edges.
void write_intrinsic_json(std::ostream& out, const TriangleMesh& mesh);

/// Per-face conformal factor as a JSON object {"0": rho_0, "1": rho_1, ...}.
void write_rho_json(std::ostream& out, const std::vector<double>& rho);
std::vector<double> read_rho_json(std::istream& in, int face_count);

/// Binary little-endian PLY with float64 positions (zeros when the mesh has no
/// embedding), per-vertex property rho_v and per-face property rho.
void write_field_ply(std::ostream& out, const TriangleMesh& mesh, const std::vector<double>& rho,
                     const std::vector<double>& rho_v);

} // namespace harmcanon
