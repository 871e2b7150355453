// wedgelab: build certified S-matrices and run the verification suites.
//   wedgelab run <config.json> [--threads N] [--tolerance-scale X]
//                [--output PATH] [--format json|csv]
//   wedgelab generate --B <val>... [--a X] [--zero re,im]... [--output PATH]
//   wedgelab axioms <smatrix.json>
// Exit codes: 0 all pass, 1 check failed, 2 config error, 3 numerical abort.
#include "wedge/config.hpp"
#include "wedge/errors.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

using namespace wedge;

static int cmd_run(const std::string& path, int threads, double tol_scale,
                   const std::string& output, const std::string& format) {
    if (threads > 0) set_thread_count(threads);
    RunConfig cfg = RunConfig::from_file(path);
    cfg.tolerance_scale *= tol_scale;
    if (!output.empty()) cfg.output_path = output;
    if (!format.empty()) cfg.format = format;
    RunOutcome out = run(cfg);
    write_report(out, cfg.output_path, cfg.format);
    int passed = 0;
    for (const auto& e : out.entries)
        if (e.pass) ++passed;
    std::cerr << passed << "/" << out.entries.size() << " checks passed\n";
    return out.exit_code();
}

static int cmd_generate(const std::vector<double>& Bs, double a,
                        const std::vector<std::string>& zeros,
                        const std::string& output) {
    std::vector<cplx> zs;
    for (const std::string& z : zeros) {
        double re, im;
        if (sscanf(z.c_str(), "%lf,%lf", &re, &im) != 2)
            throw ConfigError("--zero expects re,im");
        zs.emplace_back(re, im);
    }
    SMatrix S = SMatrix::build_general(Bs, a, zs);
    AxiomReport ar = check_axioms(S);
    cplx R = S.residue_R(), eta = S.eta();
    std::cout << "residue_R = " << R.real() << " + " << R.imag() << "i\n";
    std::cout << "residue at pi i/3 = " << S.residue_cached(cplx(0, M_PI / 3)).real()
              << " + " << S.residue_cached(cplx(0, M_PI / 3)).imag() << "i\n";
    std::cout << "eta = " << eta.real() << " + " << eta.imag() << "i\n";
    std::cout << "axioms: " << (ar.all_pass() ? "pass" : "FAIL") << "\n";
    nlohmann::json doc = S.to_json();
    if (output.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream os(output);
        if (!os) throw ConfigError("cannot write " + output);
        os << doc.dump(2) << "\n";
    }
    return ar.all_pass() ? 0 : 1;
}

static int cmd_axioms(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    nlohmann::json j;
    in >> j;
    SMatrix S = SMatrix::from_json(j);
    AxiomReport ar = check_axioms(S);
    std::cout << ar.to_json().dump(2) << "\n";
    return ar.all_pass() ? 0 : 1;
}

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for bound-state wedge fields"};
    app.require_subcommand(1);

    std::string config_path, output, format;
    int threads = 0;
    double tol_scale = 1.0;
    auto* run_cmd = app.add_subcommand("run", "run verification suites from a config");
    run_cmd->add_option("config", config_path, "config file (JSON)")->required();
    run_cmd->add_option("--threads", threads, "worker threads");
    run_cmd->add_option("--tolerance-scale", tol_scale, "scale all tolerances");
    run_cmd->add_option("--output", output, "report path (default from config/stdout)");
    run_cmd->add_option("--format", format, "json|csv");

    std::vector<double> Bs;
    double a = 0.0;
    std::vector<std::string> zeros;
    std::string gen_output;
    auto* gen_cmd = app.add_subcommand("generate", "build and serialize a certified S-matrix");
    gen_cmd->add_option("--B", Bs, "Bullough-Dodd parameters (odd count)")->required();
    gen_cmd->add_option("--a", a, "singular factor parameter (>= 0)");
    gen_cmd->add_option("--zero", zeros, "extra Blaschke zero 're,im' (orbit-completed)");
    gen_cmd->add_option("--output", gen_output, "output path (default stdout)");

    std::string smatrix_path;
    auto* ax_cmd = app.add_subcommand("axioms", "check axioms of a serialized S-matrix");
    ax_cmd->add_option("smatrix", smatrix_path, "S-matrix JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(config_path, threads, tol_scale, output, format);
        if (gen_cmd->parsed()) return cmd_generate(Bs, a, zeros, gen_output);
        if (ax_cmd->parsed()) return cmd_axioms(smatrix_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const EvenFactorCount& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
