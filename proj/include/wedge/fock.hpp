#pragma once
#include "wedge/quadrature.hpp"
#include "wedge/smatrix.hpp"

#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

namespace wedge {

// entire one-particle seed: exp(-(th-mu)^2/sigma^2 + beta*th)
struct Atom {
    double mu = 0;
    double sigma = 1;
    cplx beta = 0;
    cplx operator()(cplx th) const {
        cplx d = th - mu;
        return std::exp(-d * d / (sigma * sigma) + beta * th);
    }
};

struct QuadratureSpec {
    double theta_max = 8.0;
    // per-axis GL orders for 1..4 dimensional inner products; all even and
    // pairwise distinct so no two axes share a node (Legendre polynomials of
    // distinct even degree have no common zero) and S-factor arguments in
    // integrands never hit a pole exactly. Two effects size the orders:
    // (a) the S-matrix pole nearest the real axis, at -i pi min(B, 2-B)/3,
    // gives a per-axis relative error of about 0.7 exp(-2N b / theta_max);
    // (b) products conj(f^+(th)) g^+(th) of test-function transforms
    // oscillate like exp(i sinh(th) D) with D the separation of the support
    // centers, and Gauss-Legendre resolves frequencies only up to about
    // pi N / (2 theta_max). With theta_max = 8 and centers within ~3 of
    // each other these orders give roughly 1e-9 (1D/2D) and 1e-7 (3D).
    std::array<std::vector<int>, 4> orders{
        {{640}, {640, 644}, {224, 228, 232}, {48, 50, 52, 54}}};
    int max_n = 4;
    const std::vector<int>& orders_for(int n) const { return orders.at(n - 1); }
};

// Closed-form n-particle wavefunction: an evaluator on complex rapidity
// tuples plus the metadata needed for domain checks (how many C_n multipliers
// the closed form carries).
class WaveFunction {
public:
    int n = 0;
    std::shared_ptr<const SMatrix> smatrix;
    int cn_power = 0;      // -1 when not tracked (outputs of z, z-dagger)
    double cn_alpha = -2.0;
    bool is_zero = false;
    std::function<cplx(std::span<const cplx>)> eval;

    cplx operator()(std::span<const cplx> th) const { return is_zero ? cplx(0) : eval(th); }
    cplx operator()(std::initializer_list<cplx> th) const {
        return (*this)(std::span<const cplx>(th.begin(), th.size()));
    }
};

WaveFunction wf_vacuum(cplx amplitude);
WaveFunction wf_zero(int n);
WaveFunction wf_single(std::shared_ptr<const SMatrix> S, Atom a);
WaveFunction wf_add(const WaveFunction& a, const WaveFunction& b);
WaveFunction wf_scale(cplx c, const WaveFunction& a);

// S^sigma(theta) = prod_{j<k, sigma(j)>sigma(k)} S(theta_{sigma(j)} - theta_{sigma(k)})
// sigma is 0-based: sigma[j] is the image of position j.
cplx s_sigma_factor(const SMatrix& S, std::span<const int> sigma,
                    std::span<const cplx> theta);

// Psi(theta) = C_n(theta)^cn_power * (1/n!) sum_sigma S^sigma(theta) prod_k atom_{sigma(k)}(theta_k)
// The evaluator pairs each C_n zero with the matching near-pole S factor so
// chi-shifted arguments stay finite (no intermediate overflow).
WaveFunction symmetrize(std::shared_ptr<const SMatrix> S, const std::vector<Atom>& atoms,
                        int cn_power, double cn_alpha = -2.0);

struct IPResult {
    cplx value{};
    double tail_bound = 0;
    double l1 = 0; // sum of |weighted integrand samples|, a natural scale
};

IPResult inner_product_full(const WaveFunction& phi, const WaveFunction& psi,
                            const QuadratureSpec& q);
cplx inner_product(const WaveFunction& phi, const WaveFunction& psi,
                   const QuadratureSpec& q);
double wf_norm(const WaveFunction& psi, const QuadratureSpec& q);

// C_n multipliers needed for the +-i pi/3 single-variable continuations
inline int cn_power_needed(int n) { return n <= 1 ? 0 : (n <= 3 ? 1 : 2); }

std::vector<std::vector<int>> permutations(int n);

} // namespace wedge
