#include "harmcanon/report.hpp"

#include "harmcanon/version.hpp"

#include <algorithm>

namespace harmcanon {

nlohmann::ordered_json report_to_json(const RunReport& report) {
    nlohmann::ordered_json j;
    j["tool_version"] = kVersion;
    j["mesh"] = {{"source", report.source},
                 {"vertex_count", report.topo.vertex_count},
                 {"edge_count", report.topo.edge_count},
                 {"face_count", report.topo.face_count},
                 {"genus", report.topo.genus}};
    j["discretization"] = {{"star_scheme", "cotan-lumped-barycentric"},
                           {"wedge_scheme", "whitney"}};
    const auto& basis = report.result.basis;
    j["basis"] = {{"count", static_cast<int>(basis.forms.size())},
                  {"gram_residual", basis.gram_residual},
                  {"closedness_residual", basis.closedness_residual},
                  {"coclosedness_residual", basis.coclosedness_residual}};

    nlohmann::ordered_json c_matrix = nlohmann::ordered_json::array();
    for (int i = 0; i < report.result.c.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < report.result.c.cols(); ++k) {
            row.push_back(report.result.c(i, k));
        }
        c_matrix.push_back(row);
    }
    const auto& rho = report.result.rho;
    const double rho_min = *std::min_element(rho.begin(), rho.end());
    const double rho_max = *std::max_element(rho.begin(), rho.end());
    double rho_mean = 0.0;
    for (double r : rho) {
        rho_mean += r;
    }
    rho_mean /= static_cast<double>(rho.size());

    j["result"] = {{"c_matrix", c_matrix},
                   {"c_sq", report.result.c_sq},
                   {"integral_f", report.result.integral_f},
                   {"min_f", report.result.min_f},
                   {"e_min", report.result.e_min},
                   {"degenerate", report.result.degenerate},
                   {"rho_stats",
                    {{"min", rho_min}, {"max", rho_max}, {"mean", rho_mean}}}};
    if (!report.timings_ms.empty()) {
        j["timings_ms"] = report.timings_ms;
    }
    return j;
}

} // namespace harmcanon
