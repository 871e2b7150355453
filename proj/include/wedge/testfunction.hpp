#pragma once
#include "wedge/quadrature.hpp"

#include <array>
#include <memory>

namespace wedge {

enum class Wedge { left, right, none };

using vec2 = std::array<double, 2>; // (x0, x1), metric x.y = x0 y0 - x1 y1

// on-shell two-momentum p(z) = m (cosh z, sinh z)
inline cplx p_dot(double m, cplx z, vec2 x) {
    return m * (std::cosh(z) * x[0] - std::sinh(z) * x[1]);
}

// Real smooth bump supported in a disk, optionally hit with (box + m^2) and
// composed with a Poincare map x -> s*Lambda_{-lambda}(x - a). The rapidity
// transforms f^{+-} are computed by 2D quadrature over the base disk and
// memoized; the Poincare map only contributes a phase and a shift of the
// argument, so the cache is shared between transformed copies.
class TestFunction {
public:
    TestFunction(vec2 center, double radius, double amplitude, Wedge wedge,
                 double mass);

    double operator()(vec2 x) const; // pointwise value (real)

    double mass() const { return mass_; }
    Wedge wedge() const { return wedge_; }
    double amplitude() const { return amplitude_; }
    double radius() const { return radius_; }
    vec2 center() const { return center_; }
    bool is_kg() const { return kg_; }

    friend cplx fourier_pm(const TestFunction& f, int sign, cplx zeta);
    friend TestFunction transform(const TestFunction& f, vec2 a, double lambda);
    friend TestFunction reflect(const TestFunction& f);
    friend TestFunction klein_gordon_apply(const TestFunction& f);

private:
    struct Cache;
    cplx base_transform(cplx w) const; // (1/2pi) int prof(y) e^{i p(w).y} d2y
    double profile(vec2 y) const;      // base profile before the Poincare map

    vec2 center_;
    double radius_;
    double amplitude_;
    Wedge wedge_;
    double mass_;
    bool kg_ = false;

    // map state: f(x) = profile(s * Lambda_{-lambda}(x - a))
    int s_ = 1;
    vec2 a_{0, 0};
    double lambda_ = 0;

    std::shared_ptr<Cache> cache_;
};

// f^{sign}(zeta) = (1/2pi) int f(x) e^{sign * i p(zeta).x} d2x, sign = +-1
cplx fourier_pm(const TestFunction& f, int sign, cplx zeta);

// x -> f(Lambda_lambda^{-1}(x - a))
TestFunction transform(const TestFunction& f, vec2 a, double lambda);

// x -> conj(f(-x)) = f(-x) for real f
TestFunction reflect(const TestFunction& f);

// (box + m^2) f, closed form
TestFunction klein_gordon_apply(const TestFunction& f);

bool point_in_closed_wedge(vec2 x, Wedge w);

} // namespace wedge
