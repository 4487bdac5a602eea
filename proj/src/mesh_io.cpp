#include "harmcanon/mesh_io.hpp"

#include "harmcanon/errors.hpp"
#include "harmcanon/log.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace harmcanon {

namespace {

using json = nlohmann::json;

// Next content line: comments ('#' to end of line) and blank lines skipped.
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r\n") != std::string::npos) {
            return true;
        }
    }
    return false;
}

TriangleMesh load_off(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) {
        throw ParseError("OFF: empty input");
    }
    std::istringstream header(line);
    std::string magic;
    header >> magic;
    if (magic != "OFF") {
        throw ParseError("OFF: missing OFF header");
    }
    long v = -1, f = -1, e = -1;
    // Counts may follow the magic on the same line.
    if (!(header >> v >> f >> e)) {
        if (!next_line(in, line)) {
            throw ParseError("OFF: missing counts line");
        }
        std::istringstream counts(line);
        if (!(counts >> v >> f >> e)) {
            throw ParseError("OFF: malformed counts line");
        }
    }
    if (v <= 0 || f <= 0) {
        throw ParseError("OFF: nonpositive vertex or face count");
    }
    std::vector<std::array<double, 3>> positions;
    positions.reserve(v);
    for (long i = 0; i < v; ++i) {
        if (!next_line(in, line)) {
            throw ParseError("OFF: unexpected end of file in vertex list");
        }
        std::istringstream ls(line);
        std::array<double, 3> p;
        if (!(ls >> p[0] >> p[1] >> p[2])) {
            throw ParseError("OFF: malformed vertex line " + std::to_string(i));
        }
        positions.push_back(p);
    }
    std::vector<std::array<int, 3>> faces;
    faces.reserve(f);
    for (long i = 0; i < f; ++i) {
        if (!next_line(in, line)) {
            throw ParseError("OFF: unexpected end of file in face list");
        }
        std::istringstream ls(line);
        int count = 0;
        if (!(ls >> count)) {
            throw ParseError("OFF: malformed face line " + std::to_string(i));
        }
        if (count != 3) {
            throw ParseError("OFF: face " + std::to_string(i) + " has " + std::to_string(count) +
                             " vertices; only triangles are supported");
        }
        std::array<int, 3> fv;
        if (!(ls >> fv[0] >> fv[1] >> fv[2])) {
            throw ParseError("OFF: malformed face line " + std::to_string(i));
        }
        for (int idx : fv) {
            if (idx < 0 || idx >= v) {
                throw ParseError("OFF: face index out of range on line " + std::to_string(i));
            }
        }
        faces.push_back(fv);
    }
    return TriangleMesh::from_positions(std::move(faces), std::move(positions));
}

TriangleMesh load_obj(std::istream& in) {
    std::vector<std::array<double, 3>> positions;
    std::vector<std::array<int, 3>> faces;
    std::string line;
    int quads = 0;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) {
            continue;
        }
        if (tag == "v") {
            std::array<double, 3> p;
            if (!(ls >> p[0] >> p[1] >> p[2])) {
                throw ParseError("OBJ: malformed vertex line");
            }
            positions.push_back(p);
        } else if (tag == "f") {
            std::vector<int> poly;
            std::string tok;
            while (ls >> tok) {
                // "i", "i/t", "i//n", "i/t/n": the vertex index leads.
                const size_t slash = tok.find('/');
                int idx = 0;
                try {
                    idx = std::stoi(slash == std::string::npos ? tok : tok.substr(0, slash));
                } catch (const std::exception&) {
                    throw ParseError("OBJ: malformed face token '" + tok + "'");
                }
                if (idx <= 0 || idx > static_cast<int>(positions.size())) {
                    throw ParseError("OBJ: face index " + std::to_string(idx) + " out of range");
                }
                poly.push_back(idx - 1);
            }
            if (poly.size() < 3) {
                throw ParseError("OBJ: face with fewer than 3 vertices");
            }
            if (poly.size() > 3) {
                ++quads;
            }
            for (size_t k = 1; k + 1 < poly.size(); ++k) {
                faces.push_back({poly[0], poly[k], poly[k + 1]});
            }
        }
        // vn / vt / usemtl / o / g / s / mtllib are ignored.
    }
    if (positions.empty() || faces.empty()) {
        throw ParseError("OBJ: no vertices or faces found");
    }
    if (quads > 0) {
        warn("OBJ: fan-triangulated " + std::to_string(quads) + " non-triangular face(s)");
    }
    return TriangleMesh::from_positions(std::move(faces), std::move(positions));
}

TriangleMesh load_intrinsic_json(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& err) {
        throw ParseError(std::string("intrinsic JSON: ") + err.what());
    }
    if (!j.is_object() || !j.contains("faces") || !j.contains("edge_lengths")) {
        throw ParseError("intrinsic JSON: expected object with 'faces' and 'edge_lengths'");
    }
    std::vector<std::array<int, 3>> faces;
    int max_vertex = -1;
    for (const auto& row : j["faces"]) {
        if (!row.is_array() || row.size() != 3) {
            throw ParseError("intrinsic JSON: each face must be a triple");
        }
        std::array<int, 3> f{row[0].get<int>(), row[1].get<int>(), row[2].get<int>()};
        max_vertex = std::max({max_vertex, f[0], f[1], f[2]});
        faces.push_back(f);
    }
    const int vertex_count = max_vertex + 1;

    std::vector<std::array<int, 2>> edges;
    std::vector<double> lengths;
    for (const auto& row : j["edge_lengths"]) {
        if (!row.is_array() || row.size() != 3) {
            throw ParseError("intrinsic JSON: each edge_lengths entry must be [i, j, length]");
        }
        edges.push_back({row[0].get<int>(), row[1].get<int>()});
        lengths.push_back(row[2].get<double>());
    }

    if (j.contains("face_edges")) {
        std::vector<std::array<int, 3>> face_edges;
        for (const auto& row : j["face_edges"]) {
            if (!row.is_array() || row.size() != 3) {
                throw ParseError("intrinsic JSON: each face_edges entry must be a triple");
            }
            face_edges.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>()});
        }
        if (face_edges.size() != faces.size()) {
            throw ParseError("intrinsic JSON: face_edges size does not match faces");
        }
        // Signs are implied by comparing the stored edge endpoints to the face
        // corners; ambiguous only for loops, which the mesh rejects anyway.
        std::vector<std::array<int, 3>> signs(faces.size());
        for (size_t f = 0; f < faces.size(); ++f) {
            for (int k = 0; k < 3; ++k) {
                const int e = face_edges[f][k];
                if (e < 0 || e >= static_cast<int>(edges.size())) {
                    throw ParseError("intrinsic JSON: face_edges index out of range");
                }
                const int a = faces[f][k], b = faces[f][(k + 1) % 3];
                if (edges[e][0] == a && edges[e][1] == b) {
                    signs[f][k] = 1;
                } else if (edges[e][0] == b && edges[e][1] == a) {
                    signs[f][k] = -1;
                } else {
                    throw ParseError("intrinsic JSON: face_edges entry does not match corners");
                }
            }
        }
        return TriangleMesh::from_connectivity(vertex_count, std::move(faces), std::move(edges),
                                               std::move(lengths), std::move(face_edges),
                                               std::move(signs));
    }

    // Pair-keyed path: every pair must be unique.
    std::vector<std::tuple<int, int, double>> table;
    table.reserve(edges.size());
    for (size_t e = 0; e < edges.size(); ++e) {
        table.emplace_back(edges[e][0], edges[e][1], lengths[e]);
    }
    try {
        return TriangleMesh::from_face_lengths(vertex_count, std::move(faces), table);
    } catch (const PreconditionError& err) {
        throw ParseError(std::string("intrinsic JSON: ") + err.what() +
                         " (meshes with parallel edges need a face_edges field)");
    }
}

} // namespace

TriangleMesh load_mesh(std::istream& in, MeshFormat format) {
    switch (format) {
    case MeshFormat::Off:
        return load_off(in);
    case MeshFormat::Obj:
        return load_obj(in);
    case MeshFormat::IntrinsicJson:
        return load_intrinsic_json(in);
    }
    throw ParseError("unknown mesh format");
}

TriangleMesh load_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    const auto dot = path.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".off") {
        return load_mesh(in, MeshFormat::Off);
    }
    if (ext == ".obj") {
        return load_mesh(in, MeshFormat::Obj);
    }
    if (ext == ".json") {
        return load_mesh(in, MeshFormat::IntrinsicJson);
    }
    throw IoError("unknown mesh extension '" + ext + "' (expected .off, .obj or .json)");
}

void write_off(std::ostream& out, const TriangleMesh& mesh) {
    if (!mesh.has_positions()) {
        throw IoError("mesh has no embedding; OFF export needs vertex positions");
    }
    out << "OFF\n" << mesh.vertex_count() << " " << mesh.face_count() << " "
        << mesh.edge_count() << "\n";
    out.precision(17);
    for (const auto& p : mesh.positions()) {
        out << p[0] << " " << p[1] << " " << p[2] << "\n";
    }
    for (const auto& f : mesh.faces()) {
        out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
    }
    if (!out) {
        throw IoError("OFF write failed");
    }
}

void write_intrinsic_json(std::ostream& out, const TriangleMesh& mesh) {
    json j;
    j["faces"] = json::array();
    for (const auto& f : mesh.faces()) {
        j["faces"].push_back({f[0], f[1], f[2]});
    }
    j["edge_lengths"] = json::array();
    for (int e = 0; e < mesh.edge_count(); ++e) {
        j["edge_lengths"].push_back(
            {mesh.edges()[e][0], mesh.edges()[e][1], mesh.edge_lengths()[e]});
    }
    if (mesh.has_parallel_edges()) {
        j["face_edges"] = json::array();
        for (const auto& fe : mesh.face_edges()) {
            j["face_edges"].push_back({fe[0], fe[1], fe[2]});
        }
    }
    out << j.dump(2) << "\n";
    if (!out) {
        throw IoError("JSON write failed");
    }
}

void write_rho_json(std::ostream& out, const std::vector<double>& rho) {
    json j = json::object();
    for (size_t f = 0; f < rho.size(); ++f) {
        j[std::to_string(f)] = rho[f];
    }
    out << j.dump(2) << "\n";
    if (!out) {
        throw IoError("rho JSON write failed");
    }
}

std::vector<double> read_rho_json(std::istream& in, int face_count) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& err) {
        throw ParseError(std::string("rho JSON: ") + err.what());
    }
    if (!j.is_object()) {
        throw ParseError("rho JSON: expected an object mapping face index to value");
    }
    std::vector<double> rho(face_count, std::nan(""));
    for (const auto& [key, value] : j.items()) {
        int f = -1;
        try {
            f = std::stoi(key);
        } catch (const std::exception&) {
            throw ParseError("rho JSON: non-integer face key '" + key + "'");
        }
        if (f < 0 || f >= face_count) {
            throw ParseError("rho JSON: face key " + key + " out of range");
        }
        if (!std::isnan(rho[f])) {
            throw ParseError("rho JSON: duplicate face key " + key);
        }
        rho[f] = value.get<double>();
    }
    for (int f = 0; f < face_count; ++f) {
        if (std::isnan(rho[f])) {
            throw ParseError("rho JSON: missing value for face " + std::to_string(f));
        }
    }
    return rho;
}

void write_field_ply(std::ostream& out, const TriangleMesh& mesh, const std::vector<double>& rho,
                     const std::vector<double>& rho_v) {
    static_assert(std::endian::native == std::endian::little,
                  "binary PLY writer assumes a little-endian host");
    if (static_cast<int>(rho.size()) != mesh.face_count() ||
        static_cast<int>(rho_v.size()) != mesh.vertex_count()) {
        throw DimensionMismatchError("field size mismatch in PLY export");
    }
    out << "ply\nformat binary_little_endian 1.0\n";
    out << "element vertex " << mesh.vertex_count() << "\n";
    out << "property float64 x\nproperty float64 y\nproperty float64 z\n";
    out << "property float64 rho_v\n";
    out << "element face " << mesh.face_count() << "\n";
    out << "property list uint8 int32 vertex_indices\n";
    out << "property float64 rho\n";
    out << "end_header\n";
    const auto put = [&out](const void* p, size_t n) {
        out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    };
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        const std::array<double, 3> p =
            mesh.has_positions() ? mesh.positions()[v] : std::array<double, 3>{0.0, 0.0, 0.0};
        put(p.data(), 3 * sizeof(double));
        put(&rho_v[v], sizeof(double));
    }
    for (int f = 0; f < mesh.face_count(); ++f) {
        const uint8_t count = 3;
        put(&count, 1);
        const std::array<int32_t, 3> idx{mesh.faces()[f][0], mesh.faces()[f][1],
                                         mesh.faces()[f][2]};
        put(idx.data(), 3 * sizeof(int32_t));
        put(&rho[f], sizeof(double));
    }
    if (!out) {
        throw IoError("PLY write failed");
    }
}

} // namespace harmcanon
