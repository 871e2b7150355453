#include "wedge/config.hpp"
#include "wedge/errors.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace wedge {

namespace {
cplx jc(const nlohmann::json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0);
    return cplx(j.at(0).get<double>(), j.at(1).get<double>());
}

[[noreturn]] void bad(const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
}
} // namespace

SMatrix build_smatrix(const nlohmann::json& spec) {
    std::string kind = spec.value("kind", "bullough_dodd");
    try {
        if (kind == "bullough_dodd")
            return SMatrix::build_bullough_dodd(spec.at("B").get<double>());
        if (kind == "general_family" || kind == "general") {
            std::vector<double> bl = spec.at("B_list").get<std::vector<double>>();
            double a = spec.value("a", 0.0);
            std::vector<cplx> zeros;
            if (spec.contains("extra_zeros"))
                for (const auto& z : spec["extra_zeros"]) zeros.push_back(jc(z));
            return SMatrix::build_general(bl, a, zeros);
        }
        if (kind == "elementary_fA")
            return SMatrix::elementary_fA(spec.at("A").get<double>());
    } catch (const InvalidParameter& e) {
        bad("smatrix", e.what());
    } catch (const EvenFactorCount& e) {
        bad("smatrix", e.what());
    }
    bad("smatrix.kind", "unknown kind '" + kind + "'");
}

TestFunction build_test_function(const nlohmann::json& spec, double mass) {
    vec2 c{spec.at("center").at(0).get<double>(), spec.at("center").at(1).get<double>()};
    double r = spec.at("radius").get<double>();
    double amp = spec.value("amplitude", 1.0);
    std::string ws = spec.value("wedge", "none");
    Wedge w = ws == "left" ? Wedge::left : ws == "right" ? Wedge::right : Wedge::none;
    try {
        return TestFunction(c, r, amp, w, mass);
    } catch (const InvalidParameter& e) {
        bad("test_function", e.what());
    }
}

FockVector build_vector(const nlohmann::json& spec, std::shared_ptr<const SMatrix> S) {
    FockVector v;
    for (const auto& sector : spec) {
        int n = sector.at("n").get<int>();
        if (n == 0) {
            v[0] = wf_vacuum(jc(sector.value("amplitude", nlohmann::json(1.0))));
            continue;
        }
        std::vector<Atom> atoms;
        for (const auto& a : sector.at("atoms"))
            atoms.push_back(Atom{a.value("mu", 0.0), a.value("sigma", 1.0),
                                 a.contains("beta") ? jc(a["beta"]) : cplx(0)});
        if ((int)atoms.size() != n) bad("vectors", "atom count does not match n");
        int cnp = sector.value("cn_power", cn_power_needed(n));
        double cna = sector.value("cn_alpha", -2.0);
        v[n] = symmetrize(S, atoms, cnp, cna);
    }
    return v;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    if (!j.contains("smatrix")) throw ConfigError("config: missing 'smatrix' section");
    c.smatrix_spec = j["smatrix"];
    c.mass = j.value("mass", 1.0);
    if (c.mass <= 0) throw ConfigError("config: mass must be positive");
    if (j.contains("test_functions")) {
        const auto& tf = j["test_functions"];
        if (tf.contains("f")) c.f_spec = tf["f"];
        if (tf.contains("g")) c.g_spec = tf["g"];
    }
    if (j.contains("vectors")) {
        const auto& v = j["vectors"];
        if (v.contains("Phi")) c.phi_spec = v["Phi"];
        if (v.contains("Psi")) c.psi_spec = v["Psi"];
    }
    if (j.contains("quadrature")) {
        const auto& q = j["quadrature"];
        c.quad.theta_max = q.value("theta_max", 8.0);
        if (q.contains("orders")) {
            auto o = q["orders"];
            for (size_t d = 0; d < o.size() && d < 4; ++d)
                c.quad.orders[d] = o[d].get<std::vector<int>>();
        }
    }
    c.suites = j.value("suites", std::vector<std::string>{"all"});
    if (j.contains("output")) {
        c.output_path = j["output"].value("path", "");
        c.format = j["output"].value("format", "json");
    }
    if (c.format != "json" && c.format != "csv")
        throw ConfigError("config: output.format must be json or csv");
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return from_json(j);
}

namespace {
bool wants(const RunConfig& c, const std::string& suite) {
    return std::any_of(c.suites.begin(), c.suites.end(), [&](const std::string& s) {
        return s == "all" || s == suite;
    });
}

// negative controls are sensitivity certificates: they PASS when the broken
// setup makes the commutator residual large (ratio >= threshold)
CheckReport negative_control(std::string name, const CheckReport& broken,
                             double threshold = 1e-2) {
    double ratio = broken.scale > 0 ? broken.residual / broken.scale : 0.0;
    nlohmann::json meta{{"residual_over_scale", ratio}, {"threshold", threshold}};
    return CheckReport::make(std::move(name), std::max(0.0, threshold - ratio),
                             threshold, 1e-9, std::move(meta));
}
} // namespace

RunOutcome run(const RunConfig& cfg) {
    RunOutcome out;
    auto S = std::make_shared<SMatrix>(build_smatrix(cfg.smatrix_spec));
    double ts = cfg.tolerance_scale;

    std::optional<TestFunction> f, g;
    if (cfg.f_spec) f = build_test_function(*cfg.f_spec, cfg.mass);
    if (cfg.g_spec) g = build_test_function(*cfg.g_spec, cfg.mass);

    auto guarded = [&](const std::string& name, auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            CheckReport r;
            r.name = name;
            r.residual = std::numeric_limits<double>::infinity();
            r.scale = 1;
            r.tolerance = 0;
            r.pass = false;
            r.metadata = {{"error", e.what()}};
            out.entries.push_back(r);
            out.any_abort = true;
        }
    };

    if (wants(cfg, "axioms")) {
        guarded("axioms", [&] {
            AxiomReport ar = check_axioms(*S, 200, 8.0, 1e-10 * ts);
            const char* names[] = {"axiom-S1-unitarity", "axiom-S2-hermitian-analyticity",
                                   "axiom-S3-crossing", "axiom-S4-bootstrap",
                                   "axiom-S5-positive-residue", "axiom-S6-value-at-zero"};
            for (int i = 0; i < 6; ++i)
                out.entries.push_back(
                    CheckReport::make(names[i], ar.residual[i], 1.0, ar.tolerance));
        });
    }

    bool need_fg = wants(cfg, "propositions") || wants(cfg, "weak-commutativity") ||
                   wants(cfg, "cancellations");
    if (need_fg) {
        if (!f || !g)
            throw ConfigError("config: suites require test functions f and g");
        if (f->wedge() != Wedge::left || g->wedge() != Wedge::right)
            throw ConfigError("config: f must be left-wedge and g right-wedge supported");
    }

    if (wants(cfg, "propositions")) {
        guarded("propositions", [&] {
            for (auto& r : proposition_suite(S, *f, *g, cfg.quad, ts))
                out.entries.push_back(std::move(r));
        });
    }

    FockVector Phi, Psi;
    if (need_fg) {
        if (cfg.phi_spec.is_null() || cfg.psi_spec.is_null())
            throw ConfigError("config: weak-commutativity suites need vectors Phi and Psi");
        Phi = build_vector(cfg.phi_spec, S);
        Psi = build_vector(cfg.psi_spec, S);
    }

    if (wants(cfg, "weak-commutativity")) {
        guarded("weak-commutator", [&] {
            out.entries.push_back(weak_commutator(S, *f, *g, Phi, Psi, cfg.quad, {}, ts));
        });
        guarded("weak-commutator-negative-control-eta", [&] {
            CheckReport broken =
                weak_commutator(S, *f, *g, Phi, Psi, cfg.quad, {.eta_scale = 2.0}, ts);
            out.entries.push_back(
                negative_control("weak-commutator-negative-control-eta", broken));
        });
        guarded("weak-commutator-negative-control-nochi", [&] {
            CheckReport broken = weak_commutator(S, *f, *g, Phi, Psi, cfg.quad,
                                                 {.include_chi = false}, ts);
            out.entries.push_back(
                negative_control("weak-commutator-negative-control-nochi", broken));
        });
    }

    if (wants(cfg, "cancellations")) {
        guarded("cancellations", [&] {
            CheckReport full = weak_commutator(S, *f, *g, Phi, Psi, cfg.quad, {}, ts);
            cplx total = 0;
            for (auto pair : {CancellationPair::A, CancellationPair::B, CancellationPair::C}) {
                CheckReport r = cancellation_pair(S, *f, *g, Phi, Psi, cfg.quad, pair, ts);
                total += cplx(r.metadata["value"][0].get<double>(),
                              r.metadata["value"][1].get<double>());
                out.entries.push_back(std::move(r));
            }
            cplx w = cplx(full.metadata["value"][0].get<double>(),
                          full.metadata["value"][1].get<double>());
            out.entries.push_back(CheckReport::make("pair-sum-completeness",
                                                    std::abs(total - w), full.scale,
                                                    1e-8 * ts));
        });
    }

    if (wants(cfg, "contour-lemmas")) {
        guarded("contour-lemmas", [&] {
            Atom plain1{0.2, 1.0, 0.0}, plain2{-0.5, 1.3, 0.0};
            Atom tilt1{0.1, 0.9, cplx(0.3, 0.2)}, tilt2{-0.3, 1.1, cplx(-0.1, 0.4)};
            for (double eps : {0.1, std::numbers::pi / 3}) {
                CheckReport a = contour_shift_check(plain1, plain2, eps, cfg.quad, ts);
                a.name = "contour-shift-gaussian-eps-" + std::to_string(eps);
                out.entries.push_back(std::move(a));
                CheckReport b = contour_shift_check(tilt1, tilt2, eps, cfg.quad, ts);
                b.name = "contour-shift-tilted-eps-" + std::to_string(eps);
                out.entries.push_back(std::move(b));
            }
        });
    }

    for (const auto& e : out.entries)
        if (!e.pass) out.any_fail = true;
    return out;
}

nlohmann::json RunOutcome::report() const {
    nlohmann::json j;
    j["entries"] = nlohmann::json::array();
    int passed = 0;
    for (const auto& e : entries) {
        j["entries"].push_back(e.to_json());
        if (e.pass) ++passed;
    }
    j["summary"] = {{"total", entries.size()},
                    {"passed", passed},
                    {"failed", entries.size() - passed}};
    return j;
}

std::string RunOutcome::csv() const {
    std::ostringstream os;
    os << "name,residual,scale,tolerance,pass\n";
    os.precision(17);
    for (const auto& e : entries)
        os << e.name << ',' << e.residual << ',' << e.scale << ',' << e.tolerance
           << ',' << (e.pass ? "true" : "false") << '\n';
    return os.str();
}

int RunOutcome::exit_code() const {
    if (any_abort) return 3;
    return any_fail ? 1 : 0;
}

void write_report(const RunOutcome& out, const std::string& path, const std::string& format) {
    std::string text =
        format == "csv" ? out.csv() : out.report().dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(path);
        if (!os) throw ConfigError("cannot write report to " + path);
        os << text;
    }
}

} // namespace wedge
