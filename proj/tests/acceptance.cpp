// Acceptance gate: runs the ten acceptance criteria and prints one
// pass/fail line per criterion. Exit code 0 iff all criteria pass.
#include "wedge/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <random>
#include <span>
#include <vector>

using namespace wedge;
using std::numbers::pi;
static const cplx I_(0.0, 1.0);

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::shared_ptr<const SMatrix> S05() {
    static auto S = std::make_shared<const SMatrix>(SMatrix::build_bullough_dodd(0.5));
    return S;
}

// independent pair-factor oracle, mirrored from the module tests
cplx cn_oracle(std::span<const cplx> th, double alpha) {
    cplx out = 1;
    for (size_t k = 0; k < th.size(); ++k)
        for (size_t j = k + 1; j < th.size(); ++j) {
            cplx d = th[j] - th[k];
            out *= (d - I_ * pi / 3.0) * (-d - I_ * pi / 3.0) /
                   ((d - I_ * alpha) * (-d - I_ * alpha));
        }
    return out;
}

std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

struct Criterion {
    const char* name;
    bool (*run)(std::string& detail);
};

// 1. residue golden values of the elementary block f_{2/3}
bool c1(std::string& d) {
    SMatrix F = SMatrix::elementary_fA(2.0 / 3.0);
    cplx r1 = F.residue(cplx(0, pi / 3));
    cplx r2 = F.residue(cplx(0, 2 * pi / 3));
    double e1 = std::abs(r1 - cplx(0, 2 * std::sqrt(3.0)));
    double e2 = std::abs(r2 - cplx(0, -2 * std::sqrt(3.0)));
    d = "residue errors " + sci(e1) + ", " + sci(e2);
    return e1 <= 1e-8 && e2 <= 1e-8;
}

// 2. axiom certification for three S-matrices plus the B <-> 2-B identity
bool c2(std::string& d) {
    SMatrix Sa = SMatrix::build_bullough_dodd(0.5);
    SMatrix Sb = SMatrix::build_bullough_dodd(1.5);
    SMatrix Sc = SMatrix::build_general({0.5, 0.3, 1.7}, 0.0, {});
    double worst = 0;
    for (const SMatrix* S : {&Sa, &Sb, &Sc}) {
        AxiomReport ar = check_axioms(*S);
        for (double r : ar.residual) worst = std::max(worst, r);
    }
    double sym = 0;
    for (int i = 0; i <= 200; ++i) {
        double th = -8.0 + 16.0 * i / 200.0;
        sym = std::max(sym, std::abs(Sa.eval(th) - Sb.eval(th)));
    }
    d = "worst axiom residual " + sci(worst) + ", |S_0.5 - S_1.5| " +
        sci(sym);
    return worst <= 1e-10 && sym <= 1e-12;
}

// 3. S(0) = -1 emerges from the construction over random parameter draws
bool c3(std::string& d) {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ub(0.4, 1.6), u01(0, 1);
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
        std::vector<double> Bs;
        int nb = (t % 2 == 0) ? 1 : 3;
        for (int i = 0; i < nb; ++i) {
            double B;
            do {
                B = ub(rng);
            } while (std::abs(B - 1.0) < 0.05);
            Bs.push_back(B);
        }
        double a = (t % 3 == 0) ? 0.3 * u01(rng) : 0.0;
        std::vector<cplx> zeros;
        if (t % 5 == 0) zeros.emplace_back(0.4 * u01(rng), 0.2 + 0.2 * u01(rng));
        SMatrix S = SMatrix::build_general(Bs, a, zeros);
        worst = std::max(worst, std::abs(S.eval_raw(0.0) + 1.0));
    }
    d = "worst |S(0)+1| over 20 draws: " + sci(worst);
    return worst <= 1e-10;
}

struct Draw {
    TestFunction f, g;
    FockVector Phi1, Psi1;   // single-sector (n=1)
    FockVector Phi12, Psi12; // multi-sector {1,2}
};

Draw make_draw(std::mt19937& rng) {
    std::uniform_real_distribution<double> u01(0, 1);
    auto tf = [&](Wedge w) {
        double r = 0.5 + 0.3 * u01(rng);
        double depth = std::sqrt(2.0) * (r + 0.05) + 0.05 + 0.4 * u01(rng);
        double t = -0.25 + 0.5 * u01(rng);
        double amp = 0.5 + 0.5 * u01(rng);
        double x = (w == Wedge::left) ? -depth - std::abs(t) : depth + std::abs(t);
        return TestFunction({t, x}, r, amp, w, 1.0);
    };
    auto atom = [&]() {
        return Atom{-0.8 + 1.6 * u01(rng), 0.9 + 0.3 * u01(rng),
                    cplx(-0.2 + 0.4 * u01(rng), -0.2 + 0.4 * u01(rng))};
    };
    Draw dr{tf(Wedge::left), tf(Wedge::right), {}, {}, {}, {}};
    Atom p1 = atom(), q1 = atom();
    dr.Phi1[1] = wf_single(S05(), p1);
    dr.Psi1[1] = wf_single(S05(), q1);
    dr.Phi12[1] = wf_single(S05(), p1);
    dr.Phi12[2] = symmetrize(S05(), {atom(), atom()}, 1);
    dr.Psi12[1] = wf_single(S05(), q1);
    dr.Psi12[2] = symmetrize(S05(), {atom(), atom()}, 1);
    return dr;
}

// 4. weak commutativity over random draws at n=1 and n=2
bool c4(std::string& d) {
    std::mt19937 rng(7);
    QuadratureSpec q1; // defaults for the n=1 runs
    QuadratureSpec q2; // lighter 3D axes for the n=2 runs (tolerance is 1e-5)
    q2.orders[2] = {160, 164, 168};
    double worst1 = 0, worst2 = 0;
    for (int t = 0; t < 5; ++t) {
        Draw dr = make_draw(rng);
        CheckReport r1 = weak_commutator(S05(), dr.f, dr.g, dr.Phi1, dr.Psi1, q1);
        CheckReport r2 = weak_commutator(S05(), dr.f, dr.g, dr.Phi12, dr.Psi12, q2);
        worst1 = std::max(worst1, r1.residual / r1.scale);
        worst2 = std::max(worst2, r2.residual / r2.scale);
    }
    d = "worst residual/scale: n=1 " + sci(worst1) + " (tol 1e-6), n=2 " +
        sci(worst2) + " (tol 1e-5)";
    return worst1 <= 1e-6 && worst2 <= 1e-5;
}

// 5. the three cancellation pairs, individually and summed
bool c5(std::string& d) {
    QuadratureSpec q;
    TestFunction f({0.0, -1.2}, 0.7, 1.0, Wedge::left, 1.0);
    TestFunction g({0.2, 1.4}, 0.7, 0.8, Wedge::right, 1.0);
    // vacuum components make pair A non-vacuous (chi against the
    // creator/annihilator sectors needs adjacent particle numbers populated)
    FockVector Phi, Psi;
    Phi[0] = wf_vacuum(0.6);
    fv_accumulate(Phi, wf_single(S05(), Atom{0.3, 1.0, 0.0}));
    Psi[0] = wf_vacuum(0.4);
    fv_accumulate(Psi, wf_single(S05(), Atom{-0.4, 1.1, cplx(0.2, 0.1)}));
    CheckReport w = weak_commutator(S05(), f, g, Phi, Psi, q);
    cplx wval(w.metadata["value"][0].get<double>(), w.metadata["value"][1].get<double>());
    bool all = true;
    cplx sum = 0;
    d.clear();
    for (auto pair : {CancellationPair::A, CancellationPair::B, CancellationPair::C}) {
        CheckReport r = cancellation_pair(S05(), f, g, Phi, Psi, q, pair);
        all = all && r.pass;
        sum += cplx(r.metadata["value"][0].get<double>(),
                    r.metadata["value"][1].get<double>());
        d += r.name + " " + sci(r.scale > 0 ? r.residual / r.scale : 0.0) + "; ";
    }
    double comp = std::abs(sum - wval);
    d += "pair-sum error " + sci(comp) + " vs " + sci(1e-8 * w.scale);

    // pair A across adjacent sectors (2 vs 1) and pair B at n=2, where its
    // off-diagonal slot terms exist; both must cancel at pair-level tolerance
    FockVector P2, Q1, Q2;
    P2[2] = symmetrize(S05(), {Atom{0.3, 1.0, 0.0}, Atom{-0.4, 1.1, cplx(0.2, 0.1)}}, 1);
    Q1[1] = wf_single(S05(), Atom{0.1, 0.9, cplx(0.0, -0.15)});
    Q2[2] = symmetrize(S05(), {Atom{-0.2, 1.2, 0.1}, Atom{0.3, 1.0, 0.0}}, 1);
    CheckReport rA = cancellation_pair(S05(), f, g, P2, Q1, q, CancellationPair::A);
    CheckReport rB = cancellation_pair(S05(), f, g, P2, Q2, q, CancellationPair::B);
    d += "; pair-A(2v1) " + sci(rA.residual / rA.scale) + "; pair-B(n=2) " +
         sci(rB.residual / rB.scale);
    bool sectors_ok = rA.scale > 0 && rA.pass && rB.scale > 0 && rB.pass;
    return all && sectors_ok && comp <= 1e-8 * w.scale;
}

// 6. negative controls: eta doubled and chi removed must fail loudly
bool c6(std::string& d) {
    QuadratureSpec q;
    TestFunction fo({-0.75, -1.40}, 0.4, 1.0, Wedge::left, 1.0);
    TestFunction go({0.75, 1.59}, 0.4, 0.8, Wedge::right, 1.0);
    FockVector Phi, Psi;
    fv_accumulate(Phi, wf_single(S05(), Atom{0.3, 1.0, 0.0}));
    fv_accumulate(Psi, wf_single(S05(), Atom{-0.4, 1.1, cplx(0.2, 0.1)}));
    CheckReport ok = weak_commutator(S05(), fo, go, Phi, Psi, q);
    CheckReport e2 = weak_commutator(S05(), fo, go, Phi, Psi, q, {.eta_scale = 2.0});
    CheckReport nc = weak_commutator(S05(), fo, go, Phi, Psi, q, {.include_chi = false});
    double re = e2.residual / e2.scale, rn = nc.residual / nc.scale;
    d = "intact " + sci(ok.residual / ok.scale) + "; eta x2 ratio " +
        sci(re) + "; no-chi ratio " + sci(rn) + " (need >= 1e-2)";
    return ok.pass && re >= 1e-2 && rn >= 1e-2;
}

// 7. proposition suite at 1e-8 relative for n in {1,2}
bool c7(std::string& d) {
    QuadratureSpec q;
    TestFunction f({0.0, -1.2}, 0.7, 1.0, Wedge::left, 1.0);
    TestFunction g({0.2, 1.4}, 0.7, 0.8, Wedge::right, 1.0);
    auto reports = proposition_suite(S05(), f, g, q);
    bool all = true;
    double worst = 0;
    std::string worst_name;
    for (const auto& r : reports) {
        double rel = r.scale > 0 ? r.residual / r.scale : 0;
        if (rel > worst) {
            worst = rel;
            worst_name = r.name;
        }
        all = all && r.pass && rel <= 1e-8;
    }
    d = std::to_string(reports.size()) + " checks, worst " + worst_name + " at " +
        sci(worst);
    return all;
}

// 8. contour-shift lemma with Gaussian atom families
bool c8(std::string& d) {
    QuadratureSpec q;
    Atom a1{0.2, 1.0, 0.0}, a2{-0.5, 1.3, 0.0};
    Atom t1{0.1, 0.9, cplx(0.3, 0.2)}, t2{-0.3, 1.1, cplx(-0.1, 0.4)};
    bool all = true;
    double worst = 0;
    for (double eps : {0.1, pi / 3}) {
        for (auto [x, y] : {std::pair{a1, a2}, std::pair{t1, t2}}) {
            CheckReport r = contour_shift_check(x, y, eps, q);
            all = all && r.pass && r.residual <= 1e-9 * r.scale;
            worst = std::max(worst, r.residual / r.scale);
        }
    }
    d = "worst residual/scale " + sci(worst) + " (tol 1e-9)";
    return all;
}

// 9. symmetrize vs hand-enumerated sums; momentum fusion identity
bool c9(std::string& d) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    Atom a1{0.3, 1.0, 0.0}, a2{-0.4, 1.1, cplx(0.2, 0.1)}, a3{0.1, 0.9, cplx(0, -0.15)};
    double worst = 0;
    for (int n : {2, 3}) {
        std::vector<Atom> atoms(n == 2 ? std::vector<Atom>{a1, a2}
                                       : std::vector<Atom>{a1, a2, a3});
        WaveFunction P = symmetrize(S05(), atoms, 1);
        double fact = (n == 2) ? 2.0 : 6.0;
        for (int t = 0; t < 10; ++t) {
            std::vector<cplx> th(n);
            for (auto& x : th) x = u(rng);
            cplx sum = 0;
            for (const auto& sg : permutations(n)) {
                cplx fac = 1;
                for (int j = 0; j < n; ++j)
                    for (int k = j + 1; k < n; ++k)
                        if (sg[j] > sg[k]) fac *= S05()->eval(th[sg[j]] - th[sg[k]]);
                cplx prod = 1;
                for (int k = 0; k < n; ++k) prod *= atoms[sg[k]](th[k]);
                sum += fac * prod;
            }
            cplx want = cn_oracle(th, -2.0) * sum / fact;
            worst = std::max(worst,
                             std::abs(P(th) - want) / std::max(1.0, std::abs(want)));
        }
    }
    double fusion = 0;
    vec2 x{0.7, -1.3};
    for (int t = 0; t < 10; ++t) {
        cplx th = u(rng);
        cplx lhs = p_dot(1.0, th + I_ * pi / 3.0, x) + p_dot(1.0, th - I_ * pi / 3.0, x);
        fusion = std::max(fusion, std::abs(lhs - p_dot(1.0, th, x)));
    }
    d = "worst symmetrization error " + sci(worst) + ", fusion error " +
        sci(fusion);
    return worst <= 1e-12 && fusion <= 1e-13;
}

// 10. non-temperateness probe: log-norm of chi_1(f) U(a,0) Psi_1 grows
//     superlinearly along a = s(-1, -1.1)
bool c10(std::string& d) {
    // the integrand grows like e^{c s cosh(theta)}: a tight rapidity window
    // keeps the probe finite in double precision (growth in s is the point)
    QuadratureSpec q;
    q.theta_max = 3.0;
    q.orders = {{{200}, {200, 204}, {64, 68, 72}, {24, 26, 28, 30}}};
    TestFunction f({0.0, -1.2}, 0.7, 1.0, Wedge::left, 1.0);
    WaveFunction psi = wf_single(S05(), Atom{0.0, 0.8, 0.0});
    std::array<double, 3> L{};
    for (int s = 1; s <= 3; ++s) {
        WaveFunction u = apply_poincare({-(double)s, -1.1 * s}, 0.0, psi, 1.0);
        WaveFunction c = apply_chi(S05(), f, u, false);
        L[s - 1] = std::log(wf_norm(c, q));
    }
    double d1 = L[1] - L[0], d2 = L[2] - L[1];
    d = "log-norms " + sci(L[0]) + ", " + sci(L[1]) + ", " +
        sci(L[2]) + "; increments " + sci(d1) + " -> " +
        sci(d2);
    return std::isfinite(L[2]) && d1 > 0 && d2 > d1;
}

} // namespace

int main() {
    const Criterion criteria[] = {
        {"1 residue golden values", c1},
        {"2 axiom certification", c2},
        {"3 S(0)=-1 emergence", c3},
        {"4 weak commutativity", c4},
        {"5 cancellation pairs", c5},
        {"6 negative controls", c6},
        {"7 proposition suite", c7},
        {"8 contour-shift lemma", c8},
        {"9 oracle equivalence", c9},
        {"10 non-temperateness probe", c10},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %s (%.1fs) — %s\n", ok ? "PASS" : "FAIL", c.name,
                    secs, detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
