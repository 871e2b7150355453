#pragma once
#include "wedge/fock.hpp"
#include "wedge/testfunction.hpp"

#include <map>
#include <string>

namespace wedge {

using OneParticleFn = std::function<cplx(cplx)>;

// Result of a field application: wavefunction components indexed by particle
// number (at most n-1, n, n+1 are populated for a pure n-particle input).
struct FieldResult {
    std::map<int, WaveFunction> components;
    std::string provenance;
};

// Finite linear combination of pure particle-number sectors.
using FockVector = std::map<int, WaveFunction>;

// Knobs used by the negative controls in the verification suite: scale the
// chi prefactor or remove chi entirely.
struct ChiOptions {
    double eta_scale = 1.0;
    bool include_chi = true;
};

// (z-dagger(xi) Psi)(lambda) = (1/sqrt(n+1)) sum_k prod_{j<k} S(lambda_k - lambda_j)
//                              xi(lambda_k) Psi(lambda with k removed)
WaveFunction apply_zdagger(const OneParticleFn& xi, const WaveFunction& psi);

// z(xi) = int conj(xi(theta)) z(theta) dtheta;
// (z(xi)Psi)(lambda) = sqrt(n) int conj(xi(theta)) Psi(theta, lambda) dtheta.
// Annihilating the vacuum returns the zero vector, not an error.
WaveFunction apply_z(const OneParticleFn& xi, const WaveFunction& psi,
                     const QuadratureSpec& q);

// Bound-state operator. Unprimed (f left-supported):
//   k-th term: -i eta prod_{j<k} S(th_k - th_j + i pi/3) f^+(th_k + i pi/3)
//              Psi(..., th_k - i pi/3, ...)
// Primed (g right-supported): slot terms with prod_{l>k} S(th_l - th_k + i pi/3),
//   g^+(th_k - i pi/3), Psi(..., th_k + i pi/3, ...).
WaveFunction apply_chi(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                       const WaveFunction& psi, bool primed,
                       double eta_scale = 1.0);

// single k-th term of the expansion above (k is 1-based slot position)
WaveFunction chi_expansion_term(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                                const WaveFunction& psi, int k, bool primed,
                                double eta_scale = 1.0);

// bare single-slot operators (chi_1 x 1 x...x 1) and (1 x...x 1 x chi'_1),
// no S prefactors, no symmetrization
WaveFunction chi1_slot(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                       const WaveFunction& psi, bool primed);

// phi(f) = z-dagger(f^+) + z(J1 f^-); phi'(g) = J phi(g_j) J
FieldResult apply_phi(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                      const WaveFunction& psi, bool primed, const QuadratureSpec& q);

// candidate wedge field: phi + chi (primed variant: phi' + chi')
FieldResult apply_fct(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                      const WaveFunction& psi, bool primed, const QuadratureSpec& q,
                      const ChiOptions& opts = {});

// (U(a,lambda)Psi)(th) = e^{i sum p(th_k).a} Psi(th_1 - lambda, ..., th_n - lambda)
WaveFunction apply_poincare(vec2 a, double lambda, const WaveFunction& psi, double mass);

// (J Psi)(th) = conj(Psi(conj th_n, ..., conj th_1))
WaveFunction apply_J(const WaveFunction& psi);

// FockVector helpers
void fv_accumulate(FockVector& acc, const WaveFunction& w);
FockVector apply_fct_vec(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                         const FockVector& v, bool primed, const QuadratureSpec& q,
                         const ChiOptions& opts = {});
// inner product summed over common sectors; .l1 accumulates sector scales
IPResult fv_inner(const FockVector& a, const FockVector& b, const QuadratureSpec& q);

} // namespace wedge
