#include "wedge/verify.hpp"
#include "wedge/errors.hpp"

#include <cmath>
#include <numbers>

namespace wedge {

namespace {
constexpr double PI = std::numbers::pi;
const cplx I(0.0, 1.0);
const cplx SHIFT(0, PI / 3);

nlohmann::json cj(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

// creator / annihilator / chi components of the field for one pure sector
struct Parts {
    WaveFunction cre, ann, chi;
};

Parts make_parts(const std::shared_ptr<const SMatrix>& S, const TestFunction& fn,
                 const WaveFunction& w, bool primed, const QuadratureSpec& q) {
    Parts p;
    FieldResult fr = apply_phi(S, fn, w, primed, q);
    p.cre = fr.components.at(w.n + 1);
    auto it = fr.components.find(w.n - 1);
    p.ann = (it != fr.components.end()) ? it->second : wf_zero(std::max(0, w.n - 1));
    p.chi = (w.n > 0 && !w.is_zero) ? apply_chi(S, fn, w, primed) : wf_zero(w.n);
    return p;
}

// accumulating inner product: skipped (0) when the sectors cannot couple
cplx ip_acc(const WaveFunction& a, const WaveFunction& b, const QuadratureSpec& q,
            double& scale) {
    if (a.n != b.n || a.is_zero || b.is_zero) return 0;
    cplx v = inner_product(a, b, q);
    scale += std::abs(v);
    return v;
}

int max_sector(const FockVector& a, const FockVector& b) {
    int m = 1;
    for (const auto& [n, w] : a) m = std::max(m, n);
    for (const auto& [n, w] : b) m = std::max(m, n);
    return m;
}

WaveFunction mult_wf(const WaveFunction& w,
                     std::function<cplx(std::span<const cplx>)> mult) {
    if (w.is_zero) return w;
    WaveFunction out = w;
    out.cn_power = -1;
    out.eval = [w, mult](std::span<const cplx> th) { return mult(th) * w(th); };
    return out;
}

// residue-formula multiplier of [phi(f), phi'(g)] on the n-particle sector
WaveFunction phiphi_residue_mult(const std::shared_ptr<const SMatrix>& S,
                                 const TestFunction& f, const TestFunction& g,
                                 const WaveFunction& w) {
    cplx R = S->residue_R();
    const SMatrix* sm = S.get();
    return mult_wf(w, [=](std::span<const cplx> th) -> cplx {
        int n = (int)th.size();
        cplx sum = 0;
        for (int k = 0; k < n; ++k) {
            cplx a = 1, b = 1;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                a *= sm->eval_raw(th[k] - th[j] + 2.0 * SHIFT);
                b *= sm->eval_raw(th[k] - th[j] + SHIFT);
            }
            sum += fourier_pm(g, +1, th[k] - SHIFT) *
                   fourier_pm(f, +1, th[k] + 2.0 * SHIFT) * a;
            sum -= fourier_pm(g, +1, th[k] - 2.0 * SHIFT) *
                   fourier_pm(f, +1, th[k] + SHIFT) * b;
        }
        return -2.0 * PI * I * R * sum;
    });
}

// direct contour version: -(integral over R - integral over R + i pi) of
// g^-(z) f^+(z) prod_j S(z - th_j); vertical segments must be negligible
WaveFunction phiphi_contour_mult(const std::shared_ptr<const SMatrix>& S,
                                 const TestFunction& f, const TestFunction& g,
                                 const WaveFunction& w, const QuadratureSpec& q) {
    const SMatrix* sm = S.get();
    double Th = q.theta_max;
    int order = q.orders_for(1)[0];
    return mult_wf(w, [=](std::span<const cplx> th) -> cplx {
        auto F = [&](cplx z) {
            cplx v = fourier_pm(g, -1, z) * fourier_pm(f, +1, z);
            for (cplx t : th) v *= sm->eval_raw(z - t);
            return v;
        };
        for (double side : {-Th, Th}) {
            double vmax = 0;
            for (double y : {PI / 6, PI / 2, 5 * PI / 6})
                vmax = std::max(vmax, std::abs(F(cplx(side, y))));
            if (vmax * PI > 1e-10)
                throw ContourInconsistent(
                    "phi-phi' contour shift: vertical segment not negligible");
        }
        cplx bottom = integrate_1d([&](double x) { return F(cplx(x, 0)); }, -Th, Th, order);
        cplx top = integrate_1d([&](double x) { return F(cplx(x, PI)); }, -Th, Th, order);
        return -(bottom - top);
    });
}
} // namespace

CheckReport CheckReport::make(std::string name, double residual, double scale,
                              double tolerance, nlohmann::json metadata) {
    CheckReport r;
    r.name = std::move(name);
    r.residual = residual;
    r.scale = scale;
    r.tolerance = tolerance;
    r.pass = residual <= tolerance * scale;
    r.metadata = std::move(metadata);
    return r;
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json j{{"name", name},
                     {"residual", residual},
                     {"scale", scale},
                     {"tolerance", tolerance},
                     {"pass", pass}};
    if (!metadata.is_null() && !metadata.empty()) j["metadata"] = metadata;
    return j;
}

double rel_tolerance_for(int nmax) {
    if (nmax <= 1) return 1e-6;
    if (nmax == 2) return 1e-5;
    return 1e-4;
}

CheckReport weak_commutator(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                            const TestFunction& g, const FockVector& Phi,
                            const FockVector& Psi, const QuadratureSpec& q,
                            const ChiOptions& opts, double tol_scale) {
    FockVector fPhi = apply_fct_vec(S, f, Phi, false, q, opts);
    FockVector gPsi = apply_fct_vec(S, g, Psi, true, q, opts);
    FockVector gPhi = apply_fct_vec(S, g, Phi, true, q, opts);
    FockVector fPsi = apply_fct_vec(S, f, Psi, false, q, opts);
    IPResult a = fv_inner(fPhi, gPsi, q);
    IPResult b = fv_inner(gPhi, fPsi, q);
    cplx diff = a.value - b.value;
    double tol = rel_tolerance_for(max_sector(Phi, Psi)) * tol_scale;
    nlohmann::json meta{{"value", cj(diff)},
                        {"forward", cj(a.value)},
                        {"reversed", cj(b.value)},
                        {"tail_bound", std::max(a.tail_bound, b.tail_bound)}};
    // scale = sum of magnitudes of the two inner products entering the identity
    return CheckReport::make("weak-commutator", std::abs(diff),
                             std::abs(a.value) + std::abs(b.value), tol, std::move(meta));
}

CheckReport cancellation_pair(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                              const TestFunction& g, const FockVector& Phi,
                              const FockVector& Psi, const QuadratureSpec& q,
                              CancellationPair pair, double tol_scale) {
    cplx val = 0;
    double scale = 0;
    nlohmann::json meta;

    if (pair == CancellationPair::A || pair == CancellationPair::C) {
        for (const auto& [nP, wP] : Phi)
            for (const auto& [nQ, wQ] : Psi) {
                Parts fP = make_parts(S, f, wP, false, q);
                Parts gP = make_parts(S, g, wP, true, q);
                Parts fQ = make_parts(S, f, wQ, false, q);
                Parts gQ = make_parts(S, g, wQ, true, q);
                if (pair == CancellationPair::A) {
                    // chi against the primed creators/annihilators, both orders
                    val += ip_acc(fP.chi, gQ.cre, q, scale);
                    val += ip_acc(fP.chi, gQ.ann, q, scale);
                    val += ip_acc(fP.cre, gQ.chi, q, scale);
                    val += ip_acc(fP.ann, gQ.chi, q, scale);
                    val -= ip_acc(gP.chi, fQ.cre, q, scale);
                    val -= ip_acc(gP.chi, fQ.ann, q, scale);
                    val -= ip_acc(gP.cre, fQ.chi, q, scale);
                    val -= ip_acc(gP.ann, fQ.chi, q, scale);
                } else {
                    // [phi, phi'] part of pair C
                    val += ip_acc(fP.cre, gQ.cre, q, scale);
                    val += ip_acc(fP.cre, gQ.ann, q, scale);
                    val += ip_acc(fP.ann, gQ.cre, q, scale);
                    val += ip_acc(fP.ann, gQ.ann, q, scale);
                    val -= ip_acc(gP.cre, fQ.cre, q, scale);
                    val -= ip_acc(gP.cre, fQ.ann, q, scale);
                    val -= ip_acc(gP.ann, fQ.cre, q, scale);
                    val -= ip_acc(gP.ann, fQ.ann, q, scale);
                }
            }
    }

    if (pair == CancellationPair::B || pair == CancellationPair::C) {
        bool diagonal = (pair == CancellationPair::C);
        for (const auto& [nP, wP] : Phi) {
            auto it = Psi.find(nP);
            if (it == Psi.end() || nP == 0) continue;
            const WaveFunction& wQ = it->second;
            for (int s = 1; s <= nP; ++s)
                for (int t = 1; t <= nP; ++t) {
                    if ((s == t) != diagonal) continue;
                    WaveFunction fsP = chi_expansion_term(S, f, wP, s, false);
                    WaveFunction gtQ = chi_expansion_term(S, g, wQ, t, true);
                    WaveFunction gtP = chi_expansion_term(S, g, wP, t, true);
                    WaveFunction fsQ = chi_expansion_term(S, f, wQ, s, false);
                    val += ip_acc(fsP, gtQ, q, scale);
                    val -= ip_acc(gtP, fsQ, q, scale);
                }
        }
    }

    if (pair == CancellationPair::C) {
        // two-method consistency for the [phi, phi'] multiplier on the
        // diagonal sectors: residue formula vs direct contour shift
        cplx v_res = 0, v_ctr = 0;
        for (const auto& [nP, wP] : Phi) {
            auto it = Psi.find(nP);
            if (it == Psi.end() || nP == 0) continue;
            v_res += inner_product(wP, phiphi_residue_mult(S, f, g, it->second), q);
            v_ctr += inner_product(wP, phiphi_contour_mult(S, f, g, it->second, q), q);
        }
        meta["residue_formula"] = cj(v_res);
        meta["contour_shift"] = cj(v_ctr);
        meta["method_disagreement"] = std::abs(v_res - v_ctr);
    }

    double tol = rel_tolerance_for(max_sector(Phi, Psi)) * tol_scale;
    meta["value"] = cj(val);
    const char* name = pair == CancellationPair::A   ? "cancellation-pair-A"
                       : pair == CancellationPair::B ? "cancellation-pair-B"
                                                     : "cancellation-pair-C";
    CheckReport rep = CheckReport::make(name, std::abs(val), scale, tol, std::move(meta));
    if (pair == CancellationPair::C) {
        double dis = rep.metadata["method_disagreement"].get<double>();
        if (dis > 1e-6 * std::max(scale, 1e-300)) rep.pass = false;
    }
    return rep;
}

CheckReport contour_shift_check(const Atom& phi, const Atom& psi, double eps,
                                const QuadratureSpec& q, double tol_scale) {
    double Th = q.theta_max;
    int order = q.orders_for(1)[0];
    cplx lhs = integrate_1d(
        [&](double th) { return std::conj(phi(cplx(th, -eps))) * psi(cplx(th, 0)); },
        -Th, Th, order);
    cplx rhs = integrate_1d(
        [&](double th) { return std::conj(phi(cplx(th, 0))) * psi(cplx(th, -eps)); },
        -Th, Th, order);
    nlohmann::json meta{{"eps", eps}, {"lhs", cj(lhs)}, {"rhs", cj(rhs)}};
    return CheckReport::make("contour-shift", std::abs(lhs - rhs),
                             std::abs(lhs) + std::abs(rhs), 1e-9 * tol_scale,
                             std::move(meta));
}

namespace {
// || a - b || / || b || for same-sector wavefunctions
CheckReport wf_match_report(std::string name, const WaveFunction& a,
                            const WaveFunction& b, const QuadratureSpec& q,
                            double tol) {
    WaveFunction d = wf_add(a, wf_scale(-1.0, b));
    double num = wf_norm(d, q);
    double den = wf_norm(b, q);
    return CheckReport::make(std::move(name), num, den, tol);
}

CheckReport covariance_report(std::string name, const std::shared_ptr<const SMatrix>& S,
                              const TestFunction& f, const WaveFunction& psi, vec2 a,
                              double lam, const QuadratureSpec& q, double tol) {
    double m = f.mass();
    // U(a,lam)^{-1} = U(Lambda_{-lam}(-a), -lam)
    double ch = std::cosh(lam), sh = std::sinh(lam);
    vec2 ainv{-(ch * a[0] - sh * a[1]), -(ch * a[1] - sh * a[0])};
    WaveFunction pulled = apply_poincare(ainv, -lam, psi, m);
    WaveFunction lhs = apply_poincare(a, lam, apply_chi(S, f, pulled, false), m);
    WaveFunction rhs = apply_chi(S, transform(f, a, lam), psi, false);
    return wf_match_report(std::move(name), lhs, rhs, q, tol);
}
} // namespace

std::vector<CheckReport> proposition_suite(std::shared_ptr<const SMatrix> S,
                                           const TestFunction& f, const TestFunction& g,
                                           const QuadratureSpec& q, double tol_scale) {
    std::vector<CheckReport> out;
    double tol = 1e-8 * tol_scale;

    Atom a1{0.3, 1.0, 0.0};
    Atom a2{-0.4, 1.1, cplx(0.2, 0.1)};
    Atom a3{0.1, 0.9, cplx(0.0, -0.15)};
    Atom a4{-0.2, 1.2, 0.1};
    WaveFunction x1 = wf_single(S, a1), y1 = wf_single(S, a2);
    WaveFunction P2 = symmetrize(S, {a1, a2}, 1);
    WaveFunction H2 = symmetrize(S, {a3, a4}, 1);

    // chi symmetry: <y, chi(f) x> = <chi(f) y, x>
    auto chi_sym = [&](std::string name, const WaveFunction& y, const WaveFunction& x) {
        cplx lhs = inner_product(y, apply_chi(S, f, x, false), q);
        cplx rhs = inner_product(apply_chi(S, f, y, false), x, q);
        out.push_back(CheckReport::make(std::move(name), std::abs(lhs - rhs),
                                        std::abs(lhs) + std::abs(rhs), tol));
    };
    chi_sym("chi-symmetry-n1", y1, x1);
    chi_sym("chi-symmetry-n2", H2, P2);

    out.push_back(covariance_report("chi-boost-covariance-n1", S, f, x1, {0, 0}, 0.4, q, tol));
    out.push_back(covariance_report("chi-boost-covariance-n2", S, f, P2, {0, 0}, 0.4, q, tol));
    vec2 aL{0.05, -0.2}; // inside the closed left wedge
    out.push_back(covariance_report("chi-translation-covariance-n1", S, f, x1, aL, 0, q, tol));
    out.push_back(covariance_report("chi-translation-covariance-n2", S, f, P2, aL, 0, q, tol));

    // fct symmetry on multi-sector vectors: <H, fct(f) X> = <fct(f) H, X>
    {
        FockVector H{{0, wf_vacuum(0.7)}, {1, y1}, {2, H2}};
        FockVector X{{0, wf_vacuum(0.4)}, {1, x1}, {2, P2}};
        IPResult lhs = fv_inner(H, apply_fct_vec(S, f, X, false, q), q);
        IPResult rhs = fv_inner(apply_fct_vec(S, f, H, false, q), X, q);
        out.push_back(CheckReport::make("fct-symmetry", std::abs(lhs.value - rhs.value),
                                        std::abs(lhs.value) + std::abs(rhs.value), tol));
    }

    // Klein-Gordon: || fct((box+m^2) f) psi || small relative to || fct(f) psi ||
    {
        TestFunction kg = klein_gordon_apply(f);
        auto norm_of = [&](const TestFunction& fn) {
            FieldResult fr = apply_fct(S, fn, x1, false, q);
            double s2 = 0;
            for (const auto& [m, w] : fr.components) {
                double nw = wf_norm(w, q);
                s2 += nw * nw;
            }
            return std::sqrt(s2);
        };
        out.push_back(CheckReport::make("klein-gordon", norm_of(kg), norm_of(f), tol));
    }

    // J-reflection identity: fct'(g) = J fct(g_j) J componentwise
    auto jref = [&](std::string name, const WaveFunction& psi) {
        FieldResult lhs = apply_fct(S, g, psi, true, q);
        TestFunction gj = reflect(g);
        WaveFunction jpsi = apply_J(psi);
        FieldResult mid = apply_fct(S, gj, jpsi, false, q);
        double num = 0, den = 0;
        for (const auto& [m, w] : lhs.components) {
            WaveFunction other = apply_J(mid.components.at(m));
            num += wf_norm(wf_add(w, wf_scale(-1.0, other)), q);
            den += wf_norm(w, q);
        }
        out.push_back(CheckReport::make(std::move(name), num, den, tol));
    };
    jref("j-reflection-n1", x1);
    jref("j-reflection-n2", P2);

    return out;
}

} // namespace wedge
