#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wedge/errors.hpp"
#include "wedge/fields.hpp"

#include <cmath>
#include <memory>
#include <numbers>

using namespace wedge;
using std::numbers::pi;
static const cplx I(0, 1);

static std::shared_ptr<const SMatrix> S05() {
    static auto S = std::make_shared<const SMatrix>(SMatrix::build_bullough_dodd(0.5));
    return S;
}
static const Atom A1{0.3, 1.0, 0.0};
static const Atom A2{-0.4, 1.1, cplx(0.2, 0.1)};
static TestFunction left_f() {
    return TestFunction({0.0, -2.0}, 0.8, 1.0, Wedge::left, 1.0);
}
static TestFunction right_g() {
    return TestFunction({0.3, 2.2}, 0.7, 0.8, Wedge::right, 1.0);
}

TEST_CASE("creation operator") {
    OneParticleFn xi = [](cplx th) { return std::exp(-th * th + 0.3 * th); };
    SUBCASE("on the vacuum gives the one-particle function") {
        WaveFunction out = apply_zdagger(xi, wf_vacuum(1.0));
        CHECK(out.n == 1);
        cplx l{0.4};
        CHECK(std::abs(out({l}) - xi(l)) < 1e-14);
    }
    SUBCASE("on one particle gives the explicit two-term formula") {
        WaveFunction psi = wf_single(S05(), A1);
        WaveFunction out = apply_zdagger(xi, psi);
        CHECK(out.n == 2);
        cplx l0 = 0.7, l1 = -0.2;
        cplx want = (xi(l0) * psi({l1}) +
                     S05()->eval(l1 - l0) * xi(l1) * psi({l0})) /
                    std::sqrt(2.0);
        CHECK(std::abs(out({l0, l1}) - want) < 1e-13 * std::abs(want));
    }
    SUBCASE("particle cap") {
        WaveFunction four = symmetrize(S05(), {A1, A2, A1, A2}, 2);
        CHECK_THROWS_AS(apply_zdagger(xi, four), TooManyParticles);
    }
}

TEST_CASE("annihilation operator") {
    OneParticleFn xi = [](cplx th) { return std::exp(-th * th + 0.3 * th); };
    QuadratureSpec q;
    SUBCASE("kills the vacuum") {
        WaveFunction out = apply_z(xi, wf_vacuum(2.0), q);
        CHECK(out.is_zero);
    }
    SUBCASE("matches direct quadrature on two particles") {
        WaveFunction P = symmetrize(S05(), {A1, A2}, 1);
        WaveFunction out = apply_z(xi, P, q);
        CHECK(out.n == 1);
        cplx l = -0.3;
        cplx want = std::sqrt(2.0) *
                    integrate_1d(
                        [&](double th) {
                            return std::conj(xi(th)) * P({cplx(th), l});
                        },
                        -q.theta_max, q.theta_max, 300);
        CHECK(std::abs(out({l}) - want) < 1e-10 * std::abs(want));
    }
}

TEST_CASE("bound-state operator term structure") {
    TestFunction f = left_f();
    TestFunction g = right_g();
    SUBCASE("one particle, unprimed: single factorized term") {
        WaveFunction psi = wf_single(S05(), A1);
        WaveFunction out = apply_chi(S05(), f, psi, false);
        cplx th = 0.5;
        cplx want = -I * S05()->eta() * fourier_pm(f, +1, th + I * pi / 3.0) *
                    psi({th - I * pi / 3.0});
        CHECK(std::abs(out({th}) - want) < 1e-11 * std::abs(want));
    }
    SUBCASE("one particle, primed: single factorized term") {
        WaveFunction psi = wf_single(S05(), A1);
        WaveFunction out = apply_chi(S05(), g, psi, true);
        cplx th = -0.4;
        cplx want = -I * S05()->eta() * fourier_pm(g, +1, th - I * pi / 3.0) *
                    psi({th + I * pi / 3.0});
        CHECK(std::abs(out({th}) - want) < 1e-11 * std::abs(want));
    }
    SUBCASE("two particles: sum of slot terms with S prefactors") {
        WaveFunction P = symmetrize(S05(), {A1, A2}, 1);
        WaveFunction out = apply_chi(S05(), f, P, false);
        cplx t0 = 0.6, t1 = -0.9;
        cplx sh = I * pi / 3.0;
        cplx want = -I * S05()->eta() *
                    (fourier_pm(f, +1, t0 + sh) * P({t0 - sh, t1}) +
                     S05()->eval(t1 - t0 + sh) * fourier_pm(f, +1, t1 + sh) *
                         P({t0, t1 - sh}));
        CHECK(std::abs(out({t0, t1}) - want) < 1e-11 * std::abs(want));
        SUBCASE("expansion terms add up to the whole") {
            WaveFunction k1 = chi_expansion_term(S05(), f, P, 1, false);
            WaveFunction k2 = chi_expansion_term(S05(), f, P, 2, false);
            cplx sum = k1({t0, t1}) + k2({t0, t1});
            CHECK(std::abs(out({t0, t1}) - sum) < 1e-13 * std::abs(sum));
        }
    }
    SUBCASE("prefactor scaling") {
        WaveFunction psi = wf_single(S05(), A1);
        WaveFunction a = apply_chi(S05(), f, psi, false, 1.0);
        WaveFunction b = apply_chi(S05(), f, psi, false, 2.0);
        cplx th = 0.1;
        CHECK(std::abs(b({th}) - 2.0 * a({th})) < 1e-13 * std::abs(b({th})));
    }
    SUBCASE("domain checks") {
        WaveFunction psi = wf_single(S05(), A1);
        CHECK_THROWS_AS(apply_chi(S05(), g, psi, false), WedgeMismatch);
        CHECK_THROWS_AS(apply_chi(S05(), f, psi, true), WedgeMismatch);
        WaveFunction bad = symmetrize(S05(), {A1, A2}, 0);
        CHECK_THROWS_AS(apply_chi(S05(), f, bad, false), DomainViolation);
    }
}

TEST_CASE("free field on the vacuum") {
    TestFunction f = left_f();
    QuadratureSpec q;
    FieldResult r = apply_phi(S05(), f, wf_vacuum(1.0), false, q);
    REQUIRE(r.components.count(1) == 1);
    cplx l = 0.25;
    cplx want = fourier_pm(f, +1, l);
    CHECK(std::abs(r.components.at(1)({l}) - want) < 1e-12 * std::abs(want));
}

TEST_CASE("candidate field is the free part plus the bound-state part") {
    TestFunction f = left_f();
    QuadratureSpec q;
    WaveFunction P = symmetrize(S05(), {A1, A2}, 1);
    FieldResult ph = apply_phi(S05(), f, P, false, q);
    WaveFunction ch = apply_chi(S05(), f, P, false);
    FieldResult full = apply_fct(S05(), f, P, false, q);
    std::vector<cplx> t3{0.4, -0.6, 1.1};
    std::vector<cplx> t2{0.4, -0.6};
    std::vector<cplx> t1{0.4};
    CHECK(std::abs(full.components.at(3)(t3) - ph.components.at(3)(t3)) <
          1e-13 * std::abs(ph.components.at(3)(t3)));
    CHECK(std::abs(full.components.at(1)(t1) - ph.components.at(1)(t1)) <
          1e-13 * std::abs(ph.components.at(1)(t1)));
    CHECK(std::abs(full.components.at(2)(t2) - ch(t2)) < 1e-13 * std::abs(ch(t2)));
    SUBCASE("chi can be switched off") {
        FieldResult nochi = apply_fct(S05(), f, P, false, q, {.include_chi = false});
        cplx v = nochi.components.count(2) ? nochi.components.at(2)(t2) : cplx(0);
        CHECK(std::abs(v) == 0.0);
    }
}

TEST_CASE("poincare action and reflection") {
    WaveFunction P = symmetrize(S05(), {A1, A2}, 1);
    double m = 1.0;
    SUBCASE("identity element") {
        WaveFunction out = apply_poincare({0, 0}, 0.0, P, m);
        std::vector<cplx> th{0.3, -0.8};
        CHECK(std::abs(out(th) - P(th)) < 1e-14 * std::abs(P(th)));
    }
    SUBCASE("explicit phase and shift") {
        vec2 a{0.05, -0.2};
        double lam = 0.4;
        WaveFunction out = apply_poincare(a, lam, P, m);
        std::vector<cplx> th{0.3, -0.8};
        cplx phase = std::exp(I * (p_dot(m, th[0], a) + p_dot(m, th[1], a)));
        cplx want = phase * P({th[0] - lam, th[1] - lam});
        CHECK(std::abs(out(th) - want) < 1e-13 * std::abs(want));
    }
    SUBCASE("group law") {
        vec2 a{0.1, -0.3}, b{-0.2, 0.05};
        double lam = 0.3, mu = -0.5;
        WaveFunction lhs = apply_poincare(a, lam, apply_poincare(b, mu, P, m), m);
        // U(a,lam) U(b,mu) = U(a + Lambda_lam b, lam + mu)
        vec2 ab{a[0] + std::cosh(lam) * b[0] + std::sinh(lam) * b[1],
                a[1] + std::sinh(lam) * b[0] + std::cosh(lam) * b[1]};
        WaveFunction rhs = apply_poincare(ab, lam + mu, P, m);
        std::vector<cplx> th{0.7, -0.1};
        CHECK(std::abs(lhs(th) - rhs(th)) < 1e-12 * std::abs(rhs(th)));
    }
    SUBCASE("momentum fusion identity") {
        for (double th : {-3.0, 0.2, 5.0}) {
            vec2 x{0.3, -0.7};
            cplx lhs = p_dot(m, th + I * pi / 3.0, x) + p_dot(m, th - I * pi / 3.0, x);
            cplx rhs = p_dot(m, th, x);
            CHECK(std::abs(lhs - rhs) < 1e-13 * std::max(1.0, std::abs(rhs)));
        }
    }
    SUBCASE("reflection is an involution") {
        WaveFunction out = apply_J(apply_J(P));
        std::vector<cplx> th{cplx(0.3, 0.1), cplx(-0.8, -0.2)};
        CHECK(std::abs(out(th) - P(th)) < 1e-13 * std::abs(P(th)));
    }
    SUBCASE("reflection formula") {
        WaveFunction out = apply_J(P);
        std::vector<cplx> th{cplx(0.3, 0.1), cplx(-0.8, -0.2)};
        cplx want = std::conj(P({std::conj(th[1]), std::conj(th[0])}));
        CHECK(std::abs(out(th) - want) < 1e-13 * std::abs(want));
    }
}

TEST_CASE("fock-vector plumbing") {
    QuadratureSpec q;
    TestFunction f = left_f();
    FockVector v;
    fv_accumulate(v, wf_vacuum(0.6));
    fv_accumulate(v, wf_single(S05(), A1));
    FockVector w = apply_fct_vec(S05(), f, v, false, q);
    CHECK(w.count(0) == 1); // annihilator on the 1-particle part
    CHECK(w.count(1) == 1); // chi on 1 + creation on 0
    CHECK(w.count(2) == 1);
    IPResult ip = fv_inner(v, v, q);
    CHECK(ip.value.real() > 0);
    CHECK(std::abs(ip.value.imag()) < 1e-12 * ip.value.real());
    CHECK(ip.l1 >= std::abs(ip.value));
}
