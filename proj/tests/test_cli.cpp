#include <doctest.h>

#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct RunResult {
    int code;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(HARMCANON_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buf;
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        output.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "harmcanon_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path(const std::string& name) { return (work_dir() / name).string(); }

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json(const std::string& p) { return json::parse(slurp(p)); }

void write_tetra_off(const std::string& p) {
    std::ofstream out(p);
    out << "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n"
        << "3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";
}

} // namespace

TEST_CASE("cli: generate flat torus as OFF") {
    const auto r = run_cli("generate --shape flat-torus --resolution 8 --out " + path("t8.off"));
    CHECK(r.code == 0);
    std::ifstream in(path("t8.off"));
    std::string magic;
    int v = 0, f = 0;
    in >> magic >> v >> f;
    CHECK(magic == "OFF");
    CHECK(v == 64);
    CHECK(f == 128);
}

TEST_CASE("cli: generate genus2 as intrinsic JSON") {
    const auto r =
        run_cli("generate --shape genus2 --refinement 1 --out " + path("g2.mesh.json"));
    CHECK(r.code == 0);
    const json m = load_json(path("g2.mesh.json"));
    CHECK(m["faces"].size() == 32);
    CHECK(m.contains("face_edges")); // refinement 1 has parallel edges
}

TEST_CASE("cli: generate rejects bad flags") {
    CHECK(run_cli("generate --shape klein-bottle --out " + path("k.off")).code == 2);
    const auto r = run_cli("generate --shape klein-bottle --out " + path("k.off"));
    CHECK(r.output.find("unknown shape") != std::string::npos);
    CHECK(run_cli("generate --shape flat-torus --resolution 1 --out " + path("t1.off")).code == 2);
    CHECK(run_cli("generate --shape genus2 --refinement 1 --out " + path("g.off")).code == 2);
    CHECK(run_cli("generate --out " + path("x.off")).code == 2);
}

TEST_CASE("cli: canonical on the torus") {
    REQUIRE(run_cli("generate --shape flat-torus --resolution 16 --out " + path("t16.json")).code ==
            0);
    const auto r = run_cli("--no-timings canonical " + path("t16.json") + " --out " +
                           path("t16.report.json") + " --field-out " + path("t16.rho.json"));
    CHECK(r.code == 0);
    const json rep = load_json(path("t16.report.json"));
    CHECK(rep["mesh"]["genus"] == 1);
    CHECK(rep["result"]["e_min"].get<double>() <= 1e-10);
    CHECK(std::abs(rep["result"]["c_sq"].get<double>() - 2.0) <= 1e-8);
    CHECK(rep["result"]["degenerate"] == false);
    CHECK(rep["discretization"]["star_scheme"] == "cotan-lumped-barycentric");
    CHECK(!rep.contains("timings_ms"));

    SUBCASE("byte-identical reruns") {
        REQUIRE(run_cli("--no-timings canonical " + path("t16.json") + " --out " +
                        path("t16.report2.json"))
                    .code == 0);
        REQUIRE(run_cli("--no-timings canonical " + path("t16.json") + " --out " +
                        path("t16.report3.json"))
                    .code == 0);
        CHECK(slurp(path("t16.report2.json")) == slurp(path("t16.report3.json")));
    }
    SUBCASE("timings included by default") {
        REQUIRE(run_cli("canonical " + path("t16.json") + " --out " + path("t16.timed.json"))
                    .code == 0);
        CHECK(load_json(path("t16.timed.json")).contains("timings_ms"));
    }
    SUBCASE("PLY field export") {
        REQUIRE(run_cli("--no-timings canonical " + path("t16.json") + " --out " +
                        path("t16.r.json") + " --field-out " + path("t16.ply"))
                    .code == 0);
        const std::string ply = slurp(path("t16.ply"));
        CHECK(ply.rfind("ply\nformat binary_little_endian 1.0\n", 0) == 0);
        CHECK(ply.find("property float64 rho") != std::string::npos);
    }
}

TEST_CASE("cli: canonical exit codes") {
    write_tetra_off(path("tet.off"));
    CHECK(run_cli("canonical " + path("tet.off") + " --out " + path("tet.report.json")).code == 5);
    CHECK(run_cli("canonical " + path("missing.off") + " --out " + path("x.json")).code == 3);
    std::ofstream(path("garbage.off")) << "not an off file\n";
    CHECK(run_cli("canonical " + path("garbage.off") + " --out " + path("x.json")).code == 3);
}

TEST_CASE("cli: canonical on genus 2 reports positive energy") {
    REQUIRE(run_cli("generate --shape genus2 --refinement 2 --out " + path("g2r2.json")).code == 0);
    const auto r = run_cli("--no-timings canonical " + path("g2r2.json") + " --out " +
                           path("g2r2.report.json"));
    CHECK(r.code == 0);
    const json rep = load_json(path("g2r2.report.json"));
    CHECK(rep["mesh"]["genus"] == 2);
    CHECK(rep["result"]["e_min"].get<double>() > 0.0);
    CHECK(rep["basis"]["count"] == 4);
}

TEST_CASE("cli: energy round trip") {
    REQUIRE(run_cli("generate --shape flat-torus --resolution 16 --out " + path("e16.json")).code ==
            0);
    REQUIRE(run_cli("--no-timings canonical " + path("e16.json") + " --out " + path("er.json") +
                    " --field-out " + path("erho.json"))
                .code == 0);
    SUBCASE("the dumped minimizer has zero gap") {
        const auto r = run_cli("energy " + path("e16.json") + " --rho " + path("erho.json"));
        CHECK(r.code == 0);
        const json j = json::parse(r.output);
        CHECK(j["gap"].get<double>() <= 1e-10);
        CHECK(j["gap"].get<double>() >= -1e-10);
    }
    SUBCASE("constant rho on the torus") {
        json ones = json::object();
        for (int f = 0; f < 512; ++f) {
            ones[std::to_string(f)] = 1.0;
        }
        std::ofstream(path("ones.json")) << ones.dump();
        const auto r = run_cli("energy " + path("e16.json") + " --rho " + path("ones.json"));
        CHECK(r.code == 0);
        CHECK(std::abs(json::parse(r.output)["energy"].get<double>()) <= 1e-8);
    }
    SUBCASE("zero entry exits 6") {
        json bad = json::object();
        for (int f = 0; f < 512; ++f) {
            bad[std::to_string(f)] = 1.0;
        }
        bad["17"] = 0.0;
        std::ofstream(path("bad.json")) << bad.dump();
        CHECK(run_cli("energy " + path("e16.json") + " --rho " + path("bad.json")).code == 6);
    }
    SUBCASE("unnormalized rho exits 6") {
        json big = json::object();
        for (int f = 0; f < 512; ++f) {
            big[std::to_string(f)] = 2.0;
        }
        std::ofstream(path("big.json")) << big.dump();
        CHECK(run_cli("energy " + path("e16.json") + " --rho " + path("big.json")).code == 6);
    }
}

TEST_CASE("cli: validate") {
    REQUIRE(run_cli("generate --shape flat-torus --resolution 8 --out " + path("v8.json")).code ==
            0);
    SUBCASE("healthy mesh passes") {
        const auto r = run_cli("validate " + path("v8.json"));
        CHECK(r.code == 0);
        const json j = json::parse(r.output);
        CHECK(j["all_pass"] == true);
    }
    SUBCASE("corrupted star1 is caught by the adjointness check") {
        const auto r = run_cli("validate " + path("v8.json") + " --corrupt-star1");
        CHECK(r.code == 7);
        CHECK(r.output.find("adjointness") != std::string::npos);
        const json j = json::parse(r.output.substr(0, r.output.rfind('}') + 1));
        bool adjointness_failed = false;
        for (const auto& c : j["checks"]) {
            if (c["name"] == "adjointness") {
                adjointness_failed = !c["pass"].get<bool>();
            }
        }
        CHECK(adjointness_failed);
    }
    SUBCASE("genus 0 input runs the applicable checks only") {
        write_tetra_off(path("vtet.off"));
        const auto r = run_cli("validate " + path("vtet.off"));
        CHECK(r.code == 0);
        CHECK(r.output.find("skipped: genus 0") != std::string::npos);
    }
    SUBCASE("seed changes sampling but not the verdict") {
        CHECK(run_cli("--seed 7 validate " + path("v8.json")).code == 0);
    }
    SUBCASE("genus-2 report carries the c_sq versus 2g error") {
        REQUIRE(run_cli("generate --shape genus2 --refinement 1 --out " + path("vg2.json")).code ==
                0);
        const auto r = run_cli("validate " + path("vg2.json"));
        CHECK(r.code == 0);
        CHECK(r.output.find("c_sq_vs_2g") != std::string::npos);
        CHECK(r.output.find("|c_sq - 2g| / 2g") != std::string::npos);
    }
}

TEST_CASE("cli: basis dump") {
    REQUIRE(run_cli("generate --shape flat-torus --resolution 8 --out " + path("b8.json")).code ==
            0);
    const auto r = run_cli("basis " + path("b8.json") + " --out " + path("b8.basis.json"));
    CHECK(r.code == 0);
    const json j = load_json(path("b8.basis.json"));
    CHECK(j["count"] == 2);
    CHECK(j["gram_residual"].get<double>() <= 1e-10);
    CHECK(j["forms"].size() == 2);
    CHECK(j["forms"][0].size() == 192);

    write_tetra_off(path("btet.off"));
    CHECK(run_cli("basis " + path("btet.off") + " --out " + path("x.json")).code == 5);
}

TEST_CASE("cli: genus2 basis has four forms") {
    REQUIRE(run_cli("generate --shape genus2 --refinement 1 --out " + path("bg2.json")).code == 0);
    const auto r = run_cli("basis " + path("bg2.json") + " --out " + path("bg2.basis.json"));
    CHECK(r.code == 0);
    CHECK(load_json(path("bg2.basis.json"))["count"] == 4);
}
