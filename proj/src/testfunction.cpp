#include "wedge/testfunction.hpp"
#include "wedge/errors.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace wedge {

namespace {
constexpr double PI = std::numbers::pi;
const cplx I(0.0, 1.0);

struct KeyHash {
    size_t operator()(const std::pair<double, double>& k) const {
        auto h = std::hash<double>{};
        return h(k.first) ^ (h(k.second) * 0x9e3779b97f4a7c15ull);
    }
};
} // namespace

struct TestFunction::Cache {
    std::mutex mu;
    std::unordered_map<std::pair<double, double>, cplx, KeyHash> memo;
};

bool point_in_closed_wedge(vec2 x, Wedge w) {
    if (w == Wedge::left) return x[1] <= -std::abs(x[0]);
    if (w == Wedge::right) return x[1] >= std::abs(x[0]);
    return true;
}

TestFunction::TestFunction(vec2 center, double radius, double amplitude,
                           Wedge wedge, double mass)
    : center_(center), radius_(radius), amplitude_(amplitude), wedge_(wedge),
      mass_(mass), cache_(std::make_shared<Cache>()) {
    if (radius <= 0 || mass <= 0)
        throw InvalidParameter("TestFunction: radius and mass must be positive");
    if (wedge != Wedge::none) {
        // distance from center to the lines x1 = +-x0, strict margin
        double d1 = std::abs(center[0] + center[1]) / std::numbers::sqrt2;
        double d2 = std::abs(center[0] - center[1]) / std::numbers::sqrt2;
        bool inside = point_in_closed_wedge(center, wedge);
        if (!inside || std::min(d1, d2) < radius + 0.05)
            throw InvalidParameter("TestFunction: support disk too close to wedge boundary");
    }
}

double TestFunction::profile(vec2 y) const {
    double d0 = y[0] - center_[0], d1 = y[1] - center_[1];
    double rho = (d0 * d0 + d1 * d1) / (radius_ * radius_);
    if (rho >= 1.0) return 0.0;
    double W = -1.0 / (1.0 - rho);
    double bump = amplitude_ * std::exp(W);
    if (!kg_) return bump;
    // (box + m^2) e^W : the d'Alembertian of rho itself cancels, leaving
    // (W'^2 + W'') * 4 (d0^2 - d1^2) / r^4 + m^2, with W' = -1/(1-rho)^2.
    double q = 1.0 - rho;
    double Wp = -1.0 / (q * q);
    double Wpp = -2.0 / (q * q * q);
    double r4 = radius_ * radius_ * radius_ * radius_;
    return bump * ((Wp * Wp + Wpp) * 4.0 * (d0 * d0 - d1 * d1) / r4 + mass_ * mass_);
}

double TestFunction::operator()(vec2 x) const {
    // y = s * Lambda_{-lambda}(x - a)
    double u0 = x[0] - a_[0], u1 = x[1] - a_[1];
    double ch = std::cosh(lambda_), sh = std::sinh(lambda_);
    vec2 y{s_ * (ch * u0 - sh * u1), s_ * (ch * u1 - sh * u0)};
    return profile(y);
}

cplx TestFunction::base_transform(cplx w) const {
    // canonical strip: p has period 2 pi i
    double im = std::remainder(w.imag(), 2 * PI);
    w = cplx(w.real(), im);

    {
        std::lock_guard lk(cache_->mu);
        auto it = cache_->memo.find({w.real(), w.imag()});
        if (it != cache_->memo.end()) return it->second;
    }

    // oscillation frequency of exp(i p(w).y) across the disk, and rotated
    // axes so one axis carries all of the oscillation
    cplx p0 = mass_ * std::cosh(w), p1 = mass_ * std::sinh(w);

    // |exp(i p.y)| = exp(-Im(p0) y0 + Im(p1) y1) is log-linear in y; its peak
    // over the disk bounds the whole transform. Below e^-500 the value cannot
    // matter at working precision, so skip the quadrature; past double range
    // the caller asked for the exponentially growing side and quadrature is
    // hopeless anyway.
    double Epeak = -p0.imag() * center_[0] + p1.imag() * center_[1] +
                   radius_ * std::hypot(p0.imag(), p1.imag());
    double Eln = Epeak + std::log(std::abs(amplitude_)) + 2 * std::log(radius_);
    if (Eln < -500.0) {
        std::lock_guard lk(cache_->mu);
        cache_->memo.emplace(std::pair{w.real(), w.imag()}, cplx(0));
        return 0;
    }
    if (Eln > 690.0)
        throw QuadratureBudgetExceeded(
            "fourier_pm: transform magnitude exceeds double range at w = (" +
            std::to_string(w.real()) + ", " + std::to_string(w.imag()) + ")");
    double q0 = p0.real(), q1 = -p1.real();
    double freq = std::hypot(q0, q1);
    double e0 = 1, e1 = 0;
    if (freq > 0) {
        e0 = q0 / freq;
        e1 = q1 / freq;
    }
    int osc = (int)std::ceil(freq * radius_ / 8.0) * 8;

    auto level = [&](int nv) {
        int nu = nv + osc;
        GLRule ru = gauss_legendre(nu, -radius_, radius_);
        GLRule rv = gauss_legendre(nv, -radius_, radius_);
        std::vector<cplx> rows(nu);
        double l1 = 0;
        for (int iu = 0; iu < nu; ++iu) {
            std::vector<cplx> terms(nv);
            for (int iv = 0; iv < nv; ++iv) {
                double u = ru.x[iu], v = rv.x[iv];
                vec2 y{center_[0] + u * e0 - v * e1, center_[1] + u * e1 + v * e0};
                double fv = profile(y);
                cplx val = 0;
                if (fv != 0.0)
                    val = ru.w[iu] * rv.w[iv] * fv *
                          std::exp(I * (p0 * y[0] - p1 * y[1]));
                terms[iv] = val;
                l1 += std::abs(val);
            }
            rows[iu] = pairwise_sum(terms);
        }
        return std::pair{pairwise_sum(rows) / (2 * PI), l1 / (2 * PI)};
    };

    static const int ladder[] = {24, 32, 48, 64, 96, 128, 192, 256, 384, 512, 768, 1024};
    if (osc > 4096)
        throw QuadratureBudgetExceeded("fourier_pm: oscillation beyond quadrature budget");
    cplx prev = 0;
    bool prev_set = false;
    cplx value = 0;
    bool ok = false;
    for (int nv : ladder) {
        auto [val, l1] = level(nv);
        if (prev_set && std::abs(val - prev) <=
                            std::max(1e-11 * std::abs(val), 1e-13 * l1)) {
            value = val;
            ok = true;
            break;
        }
        prev = val;
        prev_set = true;
    }
    if (!ok)
        throw QuadratureBudgetExceeded(
            "fourier_pm: adaptive quadrature did not converge at w = (" +
            std::to_string(w.real()) + ", " + std::to_string(w.imag()) + ")");

    std::lock_guard lk(cache_->mu);
    cache_->memo.emplace(std::pair{w.real(), w.imag()}, value);
    return value;
}

cplx fourier_pm(const TestFunction& f, int sign, cplx zeta) {
    if (sign != 1 && sign != -1) throw InvalidParameter("fourier_pm: sign must be +-1");
    if (f.amplitude_ == 0.0) return 0.0;
    cplx w = zeta - f.lambda_;
    if (sign * f.s_ == -1) w += cplx(0, PI); // p(w + i pi) = -p(w)
    cplx phase = std::exp((double)sign * I * p_dot(f.mass_, zeta, f.a_));
    return phase * f.base_transform(w);
}

TestFunction transform(const TestFunction& f, vec2 a, double lambda) {
    TestFunction g = f;
    double ch = std::cosh(lambda), sh = std::sinh(lambda);
    g.a_ = {a[0] + ch * f.a_[0] + sh * f.a_[1], a[1] + sh * f.a_[0] + ch * f.a_[1]};
    g.lambda_ = f.lambda_ + lambda;
    if ((a[0] != 0 || a[1] != 0) && !point_in_closed_wedge(a, f.wedge_))
        g.wedge_ = Wedge::none;
    return g;
}

TestFunction reflect(const TestFunction& f) {
    TestFunction g = f;
    g.s_ = -f.s_;
    g.a_ = {-f.a_[0], -f.a_[1]};
    if (f.wedge_ == Wedge::left) g.wedge_ = Wedge::right;
    else if (f.wedge_ == Wedge::right) g.wedge_ = Wedge::left;
    return g;
}

TestFunction klein_gordon_apply(const TestFunction& f) {
    TestFunction g = f;
    g.kg_ = true;
    g.cache_ = std::make_shared<TestFunction::Cache>();
    return g;
}

} // namespace wedge
