#include "wedge/fock.hpp"
#include "wedge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wedge {

namespace {
constexpr double PI = std::numbers::pi;
const cplx POLE_T(0, PI / 3);      // t-channel pole of S
const cplx POLE_S(0, 2 * PI / 3);  // s-channel pole of S
constexpr double PAIR_RADIUS = 1e-4;  // pair C_n zeros with S poles inside this
constexpr double RATIO_RADIUS = 1e-9; // below this switch to the residue ratio
} // namespace

std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

WaveFunction wf_vacuum(cplx amplitude) {
    WaveFunction w;
    w.n = 0;
    w.eval = [amplitude](std::span<const cplx>) { return amplitude; };
    return w;
}

WaveFunction wf_zero(int n) {
    WaveFunction w;
    w.n = n;
    w.is_zero = true;
    w.eval = [](std::span<const cplx>) { return cplx(0); };
    return w;
}

WaveFunction wf_single(std::shared_ptr<const SMatrix> S, Atom a) {
    WaveFunction w;
    w.n = 1;
    w.smatrix = std::move(S);
    w.eval = [a](std::span<const cplx> th) { return a(th[0]); };
    return w;
}

WaveFunction wf_add(const WaveFunction& a, const WaveFunction& b) {
    if (a.n != b.n)
        throw MismatchedParticleNumber("wf_add: particle numbers differ");
    if (a.is_zero) return b;
    if (b.is_zero) return a;
    WaveFunction w;
    w.n = a.n;
    w.smatrix = a.smatrix ? a.smatrix : b.smatrix;
    w.cn_power = (a.cn_power == b.cn_power) ? a.cn_power : -1;
    w.cn_alpha = a.cn_alpha;
    auto ea = a.eval, eb = b.eval;
    w.eval = [ea, eb](std::span<const cplx> th) { return ea(th) + eb(th); };
    return w;
}

WaveFunction wf_scale(cplx c, const WaveFunction& a) {
    if (a.is_zero || c == cplx(0)) return wf_zero(a.n);
    WaveFunction w = a;
    auto e = a.eval;
    w.eval = [c, e](std::span<const cplx> th) { return c * e(th); };
    return w;
}

cplx s_sigma_factor(const SMatrix& S, std::span<const int> sigma,
                    std::span<const cplx> theta) {
    cplx prod = 1.0;
    int n = (int)sigma.size();
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            if (sigma[j] > sigma[k]) prod *= S.eval(theta[sigma[j]] - theta[sigma[k]]);
    return prod;
}

WaveFunction symmetrize(std::shared_ptr<const SMatrix> S, const std::vector<Atom>& atoms,
                        int cn_power, double cn_alpha) {
    int n = (int)atoms.size();
    if (n > 4) throw TooManyParticles("symmetrize: more than 4 particles");
    if (n == 0) return wf_vacuum(1.0);
    if (cn_power > 0 && !(cn_alpha < 0 || cn_alpha > PI))
        throw InvalidParameter("symmetrize: cn_alpha must satisfy alpha < 0 or alpha > pi");

    WaveFunction w;
    w.n = n;
    w.smatrix = S;
    w.cn_power = cn_power;
    w.cn_alpha = cn_alpha;

    if (n == 1) {
        Atom a = atoms[0];
        w.eval = [a](std::span<const cplx> th) { return a(th[0]); };
        return w;
    }

    auto perms = permutations(n);
    cplx res_t = S->residue_cached(POLE_T);
    double excl = S->exclusion_radius();
    const SMatrix* sm = S.get();
    double fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;

    w.eval = [=, S = std::move(S)](std::span<const cplx> th) -> cplx {
        // C_n zero factors (each repeated cn_power times) and denominators
        struct Zero {
            cplx z;
            int avail;
        };
        std::vector<Zero> zeros;
        cplx denom = 1.0;
        const cplx ia(0, cn_alpha);
        for (int k = 0; k < n; ++k)
            for (int j = k + 1; j < n; ++j) {
                cplx d = th[j] - th[k];
                if (cn_power > 0) {
                    zeros.push_back({d - POLE_T, cn_power});
                    zeros.push_back({-d - POLE_T, cn_power});
                    cplx dd = (d - ia) * (-d - ia);
                    for (int p = 0; p < cn_power; ++p) denom *= dd;
                }
            }

        cplx sum = 0;
        for (const auto& sigma : perms) {
            for (auto& z : zeros) z.avail = cn_power;
            cplx term = 1.0;
            bool dead = false;
            for (int j = 0; j < n && !dead; ++j)
                for (int k = j + 1; k < n && !dead; ++k) {
                    if (sigma[j] <= sigma[k]) continue;
                    cplx delta = th[sigma[j]] - th[sigma[k]];
                    if (std::abs(delta - POLE_S) < excl)
                        throw UncancelledPole("eval: S factor at the 2pi i/3 pole");
                    cplx d3 = delta - POLE_T;
                    if (std::abs(d3) < PAIR_RADIUS) {
                        // find an unused C_n zero matching this near-pole factor
                        Zero* best = nullptr;
                        double bd = PAIR_RADIUS;
                        for (auto& z : zeros)
                            if (z.avail > 0 && std::abs(z.z - d3) < bd) {
                                bd = std::abs(z.z - d3);
                                best = &z;
                            }
                        if (!best) {
                            if (std::abs(d3) < excl)
                                throw UncancelledPole(
                                    "eval: S pole not matched by a C_n zero");
                            term *= sm->eval_raw(delta);
                            continue;
                        }
                        best->avail--;
                        if (std::abs(d3) >= RATIO_RADIUS) {
                            term *= best->z * sm->eval_raw(delta);
                        } else if (d3 == best->z) {
                            term *= res_t; // exact ratio 1 times the residue
                        } else if (d3 == cplx(0)) {
                            throw UncancelledPole("eval: exact pole with unmatched zero");
                        } else {
                            term *= res_t * (best->z / d3);
                        }
                    } else {
                        term *= sm->eval_raw(delta);
                    }
                }
            if (dead) continue;
            for (const auto& z : zeros)
                for (int p = 0; p < z.avail; ++p) term *= z.z;
            for (int k = 0; k < n; ++k) term *= atoms[sigma[k]](th[k]);
            sum += term;
        }
        return sum / (fact * denom);
    };
    return w;
}

IPResult inner_product_full(const WaveFunction& phi, const WaveFunction& psi,
                            const QuadratureSpec& q) {
    if (phi.n != psi.n)
        throw MismatchedParticleNumber("inner_product: particle numbers differ");
    IPResult out;
    if (phi.is_zero || psi.is_zero) return out;
    if (phi.n == 0) {
        out.value = std::conj(phi({})) * psi({});
        out.l1 = std::abs(out.value);
        return out;
    }
    if (phi.n > q.max_n) throw TooManyParticles("inner_product: dimension beyond max n");
    int n = phi.n;
    std::vector<cplx> buf;
    auto f = [&](std::span<const double> x) {
        std::vector<cplx> th(x.begin(), x.end());
        return std::conj(phi(th)) * psi(th);
    };
    TensorResult r = integrate_tensor(f, n, q.theta_max, q.orders_for(n));
    out.value = r.value;
    out.l1 = r.l1;
    out.tail_bound = r.tail_bound;
    return out;
}

cplx inner_product(const WaveFunction& phi, const WaveFunction& psi,
                   const QuadratureSpec& q) {
    return inner_product_full(phi, psi, q).value;
}

double wf_norm(const WaveFunction& psi, const QuadratureSpec& q) {
    cplx v = inner_product(psi, psi, q);
    return std::sqrt(std::max(0.0, v.real()));
}

} // namespace wedge
