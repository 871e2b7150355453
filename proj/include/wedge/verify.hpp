#pragma once
#include "wedge/fields.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace wedge {

struct CheckReport {
    std::string name;
    double residual = 0;
    double scale = 0;
    double tolerance = 0;
    bool pass = false;
    nlohmann::json metadata;

    static CheckReport make(std::string name, double residual, double scale,
                            double tolerance, nlohmann::json metadata = {});
    nlohmann::json to_json() const;
};

enum class CancellationPair { A, B, C };

// relative tolerance by largest particle number involved
double rel_tolerance_for(int nmax);

// residual of <fct(f)Phi, fct'(g)Psi> - <fct'(g)Phi, fct(f)Psi>
CheckReport weak_commutator(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                            const TestFunction& g, const FockVector& Phi,
                            const FockVector& Psi, const QuadratureSpec& q,
                            const ChiOptions& opts = {}, double tol_scale = 1.0);

// one cancellation mechanism of the proof:
//   A: chi against the reflected creators/annihilators (both adjoint orders)
//   B: off-diagonal slot terms of [chi, chi']
//   C: [phi, phi'] against the diagonal slot terms of [chi, chi']
// The signed complex value is stored in metadata["value"] so the pair sum can
// be compared with the full commutator.
CheckReport cancellation_pair(std::shared_ptr<const SMatrix> S, const TestFunction& f,
                              const TestFunction& g, const FockVector& Phi,
                              const FockVector& Psi, const QuadratureSpec& q,
                              CancellationPair pair, double tol_scale = 1.0);

// | int conj(Phi(th - i eps)) Psi(th) dth - int conj(Phi(th)) Psi(th - i eps) dth |
CheckReport contour_shift_check(const Atom& phi, const Atom& psi, double eps,
                                const QuadratureSpec& q, double tol_scale = 1.0);

// chi-symmetry, chi-covariance (boost / translation), fct-symmetry,
// Klein-Gordon, and J-reflection identities at n in {1,2}
std::vector<CheckReport> proposition_suite(std::shared_ptr<const SMatrix> S,
                                           const TestFunction& f, const TestFunction& g,
                                           const QuadratureSpec& q, double tol_scale = 1.0);

} // namespace wedge
