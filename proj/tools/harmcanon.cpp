#include "harmcanon/canonical.hpp"
#include "harmcanon/errors.hpp"
#include "harmcanon/harmonic.hpp"
#include "harmcanon/log.hpp"
#include "harmcanon/mesh.hpp"
#include "harmcanon/mesh_io.hpp"
#include "harmcanon/report.hpp"
#include "harmcanon/validate.hpp"
#include "harmcanon/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using harmcanon::IoError;

// Exit codes are a stable contract:
//   0 ok, 2 bad flags, 3 I/O or unreadable input, 4 degenerate result,
//   5 genus-0 input, 6 bad conformal factor field, 7 failed invariant.
constexpr int kExitOk = 0;
constexpr int kExitBadFlags = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitAssumption = 5;
constexpr int kExitBadRho = 6;
constexpr int kExitInvariant = 7;

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
        .count();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_generate(const std::string& shape, int resolution, int refinement,
                 const std::string& out_path) {
    harmcanon::TriangleMesh mesh = [&] {
        if (shape == "flat-torus") {
            return harmcanon::generate_flat_torus(resolution);
        }
        if (shape == "genus2") {
            return harmcanon::generate_genus2(refinement);
        }
        throw harmcanon::PreconditionError("unknown shape '" + shape + "'");
    }();
    auto out = open_out(out_path);
    if (ends_with(out_path, ".off")) {
        if (!mesh.has_positions()) {
            throw harmcanon::PreconditionError(
                "shape '" + shape + "' has no embedding; write intrinsic JSON (.json) instead");
        }
        harmcanon::write_off(out, mesh);
    } else if (ends_with(out_path, ".json")) {
        harmcanon::write_intrinsic_json(out, mesh);
    } else {
        throw harmcanon::PreconditionError("output must end in .off or .json");
    }
    return kExitOk;
}

int cmd_canonical(const std::string& mesh_path, const std::string& out_path,
                  const std::string& field_path, bool no_timings) {
    auto t0 = std::chrono::steady_clock::now();
    const harmcanon::TriangleMesh mesh = harmcanon::load_mesh_file(mesh_path);
    const double load_ms = elapsed_ms(t0);

    t0 = std::chrono::steady_clock::now();
    const harmcanon::CanonicalResult result = harmcanon::canonical_metric(mesh);
    const double pipeline_ms = elapsed_ms(t0);

    harmcanon::RunReport report;
    report.source = mesh_path;
    report.topo = result.topo;
    report.result = result;
    if (!no_timings) {
        report.timings_ms = {{"load", load_ms}, {"pipeline", pipeline_ms}};
    }
    {
        auto out = open_out(out_path);
        out << harmcanon::report_to_json(report).dump(2) << "\n";
        if (!out) {
            throw IoError("report write failed");
        }
    }
    if (!field_path.empty()) {
        auto out = open_out(field_path);
        if (ends_with(field_path, ".ply")) {
            harmcanon::write_field_ply(out, mesh, result.rho,
                                       harmcanon::vertex_averaged_field(mesh, result.rho));
        } else if (ends_with(field_path, ".json")) {
            harmcanon::write_rho_json(out, result.rho);
        } else {
            throw harmcanon::PreconditionError("field output must end in .ply or .json");
        }
    }
    return result.degenerate ? kExitDegenerate : kExitOk;
}

int cmd_energy(const std::string& mesh_path, const std::string& rho_path) {
    const harmcanon::TriangleMesh mesh = harmcanon::load_mesh_file(mesh_path);
    std::vector<double> rho;
    {
        std::ifstream in(rho_path);
        if (!in) {
            throw IoError("cannot open '" + rho_path + "'");
        }
        rho = harmcanon::read_rho_json(in, mesh.face_count());
    }
    const harmcanon::CanonicalResult result = harmcanon::canonical_metric(mesh);
    const harmcanon::TriangleMesh unit = harmcanon::normalize_area(mesh);
    const harmcanon::WedgeData wd = harmcanon::wedge_data(unit, result.basis);
    const double energy = harmcanon::energy_of(unit, wd, rho, result.n);

    nlohmann::ordered_json j;
    j["energy"] = energy;
    j["e_min"] = result.e_min;
    j["gap"] = energy - result.e_min;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& mesh_path, std::uint64_t seed, bool corrupt_star1) {
    const harmcanon::TriangleMesh mesh = harmcanon::load_mesh_file(mesh_path);
    harmcanon::ValidateOptions options;
    options.seed = seed;
    options.corrupt_star1 = corrupt_star1;
    const auto checks = harmcanon::run_validation(mesh, options);

    nlohmann::ordered_json j;
    j["checks"] = nlohmann::ordered_json::array();
    std::string first_failure;
    for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        if (!c.pass && first_failure.empty()) {
            first_failure = c.name;
        }
    }
    j["all_pass"] = first_failure.empty();
    std::cout << j.dump(2) << "\n";
    if (!first_failure.empty()) {
        std::cerr << "validation failed: " << first_failure << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}

int cmd_basis(const std::string& mesh_path, const std::string& out_path) {
    const harmcanon::TriangleMesh mesh =
        harmcanon::normalize_area(harmcanon::load_mesh_file(mesh_path));
    const harmcanon::HarmonicBasis basis = harmcanon::harmonic_basis(mesh);

    nlohmann::ordered_json j;
    j["count"] = static_cast<int>(basis.forms.size());
    j["gram_residual"] = basis.gram_residual;
    j["closedness_residual"] = basis.closedness_residual;
    j["coclosedness_residual"] = basis.coclosedness_residual;
    j["forms"] = nlohmann::ordered_json::array();
    for (const auto& form : basis.forms) {
        nlohmann::ordered_json vals = nlohmann::ordered_json::array();
        for (int e = 0; e < form.values.size(); ++e) {
            vals.push_back(form.values[e]);
        }
        j["forms"].push_back(vals);
    }
    auto out = open_out(out_path);
    out << j.dump(2) << "\n";
    if (!out) {
        throw IoError("basis write failed");
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical conformal metric and harmonic energy of closed triangulated surfaces"};
    app.set_version_flag("--version", harmcanon::kVersion);
    app.require_subcommand(1);

    bool quiet = false;
    bool no_timings = false;
    std::uint64_t seed = 0;
    app.add_flag("--quiet", quiet, "suppress warnings");
    app.add_flag("--no-timings", no_timings, "omit timings from reports");
    app.add_option("--seed", seed, "seed for sampled validation checks");

    auto* generate = app.add_subcommand("generate", "generate a test surface");
    std::string shape;
    int resolution = 8;
    int refinement = 1;
    std::string gen_out;
    generate->add_option("--shape", shape, "flat-torus or genus2")->required();
    generate->add_option("--resolution", resolution, "flat torus grid resolution (>= 2)");
    generate->add_option("--refinement", refinement, "genus-2 subdivision count (>= 1)");
    generate->add_option("--out", gen_out, "output path (.off or .json)")->required();

    auto* canonical = app.add_subcommand("canonical", "compute the canonical metric");
    std::string mesh_path, report_out, field_out;
    canonical->add_option("mesh", mesh_path, "input mesh (.off, .obj, .json)")->required();
    canonical->add_option("--out", report_out, "report JSON path")->required();
    canonical->add_option("--field-out", field_out, "rho field dump (.ply or .json)");

    auto* energy = app.add_subcommand("energy", "evaluate the harmonic energy of a rho field");
    std::string energy_mesh, rho_path;
    energy->add_option("mesh", energy_mesh, "input mesh")->required();
    energy->add_option("--rho", rho_path, "JSON face -> rho map")->required();

    auto* validate = app.add_subcommand("validate", "run the invariant suite");
    std::string validate_mesh;
    bool corrupt_star1 = false;
    validate->add_option("mesh", validate_mesh, "input mesh")->required();
    validate->add_flag("--corrupt-star1", corrupt_star1, "fault-injection test hook");

    auto* basis = app.add_subcommand("basis", "dump the orthonormal harmonic basis");
    std::string basis_mesh, basis_out;
    basis->add_option("mesh", basis_mesh, "input mesh")->required();
    basis->add_option("--out", basis_out, "output JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadFlags;
    }
    harmcanon::set_quiet(quiet);

    try {
        if (*generate) {
            try {
                return cmd_generate(shape, resolution, refinement, gen_out);
            } catch (const harmcanon::PreconditionError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitBadFlags;
            }
        }
        if (*canonical) {
            return cmd_canonical(mesh_path, report_out, field_out, no_timings);
        }
        if (*energy) {
            return cmd_energy(energy_mesh, rho_path);
        }
        if (*validate) {
            return cmd_validate(validate_mesh, seed, corrupt_star1);
        }
        if (*basis) {
            return cmd_basis(basis_mesh, basis_out);
        }
    } catch (const harmcanon::AssumptionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const harmcanon::NormalizationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadRho;
    } catch (const harmcanon::NonPositiveRhoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadRho;
    } catch (const harmcanon::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const harmcanon::TopologyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const harmcanon::GeometryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const harmcanon::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadFlags;
    } catch (const harmcanon::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
