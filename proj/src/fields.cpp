#include "wedge/fields.hpp"
#include "wedge/errors.hpp"

#include <cmath>
#include <numbers>

namespace wedge {

namespace {
constexpr double PI = std::numbers::pi;
const cplx I(0.0, 1.0);
const cplx SHIFT(0, PI / 3);
} // namespace

WaveFunction apply_zdagger(const OneParticleFn& xi, const WaveFunction& psi) {
    if (psi.n + 1 > 4) throw TooManyParticles("apply_zdagger: beyond max particle number");
    if (psi.is_zero) return wf_zero(psi.n + 1);
    WaveFunction out;
    out.n = psi.n + 1;
    out.smatrix = psi.smatrix;
    out.cn_power = -1;
    const SMatrix* sm = psi.smatrix.get();
    int m = out.n;
    double norm = 1.0 / std::sqrt((double)m);
    out.eval = [xi, psi, sm, m, norm](std::span<const cplx> la) -> cplx {
        std::vector<cplx> rest(m - 1);
        cplx sum = 0;
        for (int k = 0; k < m; ++k) {
            cplx pref = 1.0;
            for (int j = 0; j < k; ++j) pref *= sm->eval_raw(la[k] - la[j]);
            for (int j = 0, r = 0; j < m; ++j)
                if (j != k) rest[r++] = la[j];
            sum += pref * xi(la[k]) * psi(rest);
        }
        return norm * sum;
    };
    return out;
}

WaveFunction apply_z(const OneParticleFn& xi, const WaveFunction& psi,
                     const QuadratureSpec& q) {
    if (psi.n == 0 || psi.is_zero) return wf_zero(std::max(0, psi.n - 1));
    WaveFunction out;
    out.n = psi.n - 1;
    out.smatrix = psi.smatrix;
    out.cn_power = -1;
    double rootn = std::sqrt((double)psi.n);
    double Th = q.theta_max;
    int order = q.orders_for(1)[0];
    out.eval = [xi, psi, rootn, Th, order](std::span<const cplx> la) -> cplx {
        std::vector<cplx> full(psi.n);
        for (int i = 0; i < psi.n - 1; ++i) full[i + 1] = la[i];
        auto f = [&](double th) {
            full[0] = th;
            return std::conj(xi(th)) * psi(full);
        };
        return rootn * integrate_1d(f, -Th, Th, order);
    };
    return out;
}

namespace {
void check_chi_domain(const TestFunction& f, const WaveFunction& psi, bool primed) {
    Wedge need = primed ? Wedge::right : Wedge::left;
    if (f.wedge() != need)
        throw WedgeMismatch(primed ? "chi': test function must be right-wedge supported"
                                   : "chi: test function must be left-wedge supported");
    if (psi.cn_power >= 0 && psi.cn_power < cn_power_needed(psi.n))
        throw DomainViolation("chi: wavefunction lacks the C_n powers for the i pi/3 shift");
}
} // namespace

WaveFunction chi_expansion_term(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                                const WaveFunction& psi, int k, bool primed,
                                double eta_scale) {
    check_chi_domain(f, psi, primed);
    if (psi.n == 0 || psi.is_zero) return wf_zero(psi.n);
    if (k < 1 || k > psi.n) throw InvalidParameter("chi_expansion_term: slot out of range");
    WaveFunction out;
    out.n = psi.n;
    out.smatrix = S;
    out.cn_power = -1;
    cplx pref0 = -I * (eta_scale * S->eta());
    const SMatrix* sm = S.get();
    int n = psi.n, kk = k - 1;
    out.eval = [=, S = std::move(S)](std::span<const cplx> th) -> cplx {
        cplx pref = pref0;
        std::vector<cplx> shifted(th.begin(), th.end());
        if (!primed) {
            for (int j = 0; j < kk; ++j) pref *= sm->eval_raw(th[kk] - th[j] + SHIFT);
            pref *= fourier_pm(f, +1, th[kk] + SHIFT);
            shifted[kk] -= SHIFT;
        } else {
            for (int l = kk + 1; l < n; ++l) pref *= sm->eval_raw(th[l] - th[kk] + SHIFT);
            pref *= fourier_pm(f, +1, th[kk] - SHIFT);
            shifted[kk] += SHIFT;
        }
        return pref * psi(shifted);
    };
    return out;
}

WaveFunction apply_chi(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                       const WaveFunction& psi, bool primed, double eta_scale) {
    check_chi_domain(f, psi, primed);
    if (psi.n == 0 || psi.is_zero) return wf_zero(psi.n);
    WaveFunction out = chi_expansion_term(S, f, psi, 1, primed, eta_scale);
    for (int k = 2; k <= psi.n; ++k)
        out = wf_add(out, chi_expansion_term(S, f, psi, k, primed, eta_scale));
    return out;
}

WaveFunction chi1_slot(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                       const WaveFunction& psi, bool primed) {
    check_chi_domain(f, psi, primed);
    if (psi.n == 0 || psi.is_zero) return wf_zero(psi.n);
    WaveFunction out;
    out.n = psi.n;
    out.smatrix = S;
    out.cn_power = -1;
    cplx pref0 = -I * S->eta();
    int slot = primed ? psi.n - 1 : 0;
    out.eval = [=](std::span<const cplx> th) -> cplx {
        std::vector<cplx> shifted(th.begin(), th.end());
        cplx pref;
        if (!primed) {
            pref = pref0 * fourier_pm(f, +1, th[slot] + SHIFT);
            shifted[slot] -= SHIFT;
        } else {
            pref = pref0 * fourier_pm(f, +1, th[slot] - SHIFT);
            shifted[slot] += SHIFT;
        }
        return pref * psi(shifted);
    };
    return out;
}

FieldResult apply_phi(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                      const WaveFunction& psi, bool primed, const QuadratureSpec& q) {
    FieldResult fr;
    fr.provenance = primed ? "phi'" : "phi";
    if (!primed) {
        OneParticleFn fplus = [f](cplx z) { return fourier_pm(f, +1, z); };
        // J1 f^-  (J1 = complex conjugation); apply_z conjugates again, so the
        // integrand weight is f^-(theta)
        OneParticleFn w = [f](cplx z) { return std::conj(fourier_pm(f, -1, std::conj(z))); };
        fr.components[psi.n + 1] = apply_zdagger(fplus, psi);
        if (psi.n > 0) fr.components[psi.n - 1] = apply_z(w, psi, q);
        return fr;
    }
    TestFunction h = reflect(f);
    WaveFunction jpsi = apply_J(psi);
    FieldResult inner = apply_phi(S, h, jpsi, false, q);
    for (auto& [m, w] : inner.components) fr.components[m] = apply_J(w);
    return fr;
}

FieldResult apply_fct(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                      const WaveFunction& psi, bool primed, const QuadratureSpec& q,
                      const ChiOptions& opts) {
    FieldResult fr = apply_phi(S, f, psi, primed, q);
    fr.provenance = primed ? "phi' + chi'" : "phi + chi";
    if (opts.include_chi && psi.n > 0 && !psi.is_zero) {
        WaveFunction c = apply_chi(S, f, psi, primed, opts.eta_scale);
        auto it = fr.components.find(psi.n);
        if (it == fr.components.end()) fr.components[psi.n] = c;
        else it->second = wf_add(it->second, c);
    }
    return fr;
}

WaveFunction apply_poincare(vec2 a, double lambda, const WaveFunction& psi, double mass) {
    if (psi.is_zero) return psi;
    WaveFunction out = psi;
    out.eval = [a, lambda, psi, mass](std::span<const cplx> th) -> cplx {
        cplx phase = 0;
        std::vector<cplx> sh(th.size());
        for (size_t k = 0; k < th.size(); ++k) {
            phase += p_dot(mass, th[k], a);
            sh[k] = th[k] - lambda;
        }
        return std::exp(cplx(0, 1) * phase) * psi(sh);
    };
    return out;
}

WaveFunction apply_J(const WaveFunction& psi) {
    if (psi.is_zero) return psi;
    WaveFunction out = psi;
    out.eval = [psi](std::span<const cplx> th) -> cplx {
        std::vector<cplx> rev(th.size());
        for (size_t k = 0; k < th.size(); ++k)
            rev[k] = std::conj(th[th.size() - 1 - k]);
        return std::conj(psi(rev));
    };
    return out;
}

void fv_accumulate(FockVector& acc, const WaveFunction& w) {
    if (w.is_zero) return;
    auto it = acc.find(w.n);
    if (it == acc.end()) acc[w.n] = w;
    else it->second = wf_add(it->second, w);
}

FockVector apply_fct_vec(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                         const FockVector& v, bool primed, const QuadratureSpec& q,
                         const ChiOptions& opts) {
    FockVector out;
    for (const auto& [n, w] : v) {
        FieldResult fr = apply_fct(S, f, w, primed, q, opts);
        for (const auto& [m, c] : fr.components) fv_accumulate(out, c);
    }
    return out;
}

IPResult fv_inner(const FockVector& a, const FockVector& b, const QuadratureSpec& q) {
    IPResult out;
    for (const auto& [n, wa] : a) {
        auto it = b.find(n);
        if (it == b.end()) continue;
        IPResult r = inner_product_full(wa, it->second, q);
        out.value += r.value;
        out.l1 += std::abs(r.value);
        out.tail_bound = std::max(out.tail_bound, r.tail_bound);
    }
    return out;
}

} // namespace wedge
