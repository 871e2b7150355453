#pragma once
#include "wedge/verify.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wedge {

// Parsed run configuration; see configs/ for the document layout.
struct RunConfig {
    nlohmann::json smatrix_spec;
    double mass = 1.0;
    std::optional<nlohmann::json> f_spec, g_spec;
    nlohmann::json phi_spec, psi_spec; // vector sector lists
    QuadratureSpec quad;
    std::vector<std::string> suites;
    std::string output_path; // empty = stdout
    std::string format = "json";
    double tolerance_scale = 1.0;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);
};

SMatrix build_smatrix(const nlohmann::json& spec);
TestFunction build_test_function(const nlohmann::json& spec, double mass);
FockVector build_vector(const nlohmann::json& spec, std::shared_ptr<const SMatrix> S);

struct RunOutcome {
    std::vector<CheckReport> entries;
    bool any_fail = false;
    bool any_abort = false;
    nlohmann::json report() const;
    std::string csv() const;
    int exit_code() const; // 0 pass, 1 fail, 3 numerical abort
};

// executes the selected suites and writes the report (path from config)
RunOutcome run(const RunConfig& cfg);
void write_report(const RunOutcome& out, const std::string& path, const std::string& format);

} // namespace wedge
