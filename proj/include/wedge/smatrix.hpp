#pragma once
#include "wedge/quadrature.hpp"

#include <array>
#include <json.hpp>
#include <string>
#include <vector>

namespace wedge {

// Two-particle scattering function S(zeta), stored as an explicit
// factorization: f_A factors, the singular factor S_inf = exp(ia(e^z - e^-z)),
// and a finite Blaschke product over zeros in the physical strip R + i(0,pi).
class SMatrix {
public:
    enum class Kind { elementary_fA, bullough_dodd, general_family, product };

    struct Pole {
        cplx location;
        int order = 1;
    };

    // Elementary block f_A(z) = tanh((z+A pi i)/2) / tanh((z-A pi i)/2).
    static cplx f_A(double A, cplx zeta);

    static SMatrix elementary_fA(double A);
    static SMatrix build_bullough_dodd(double B);
    static SMatrix build_general(const std::vector<double>& B_list, double a,
                                 const std::vector<cplx>& extra_zero_orbits);

    // Pole-checked evaluation; throws PoleProximity within the exclusion radius.
    cplx eval(cplx zeta) const;
    // Raw factor product, no pole guard. Used by residue-aware paths.
    cplx eval_raw(cplx zeta) const;

    // Contour-quadrature residue at a declared pole (two radii, must agree).
    cplx residue(cplx zeta0) const;
    // Cached residue at a declared pole (set during certification).
    cplx residue_cached(cplx zeta0) const;

    Kind kind() const { return kind_; }
    const std::vector<double>& fA_params() const { return fA_params_; }
    double singular_a() const { return singular_a_; }
    const std::vector<cplx>& blaschke_zeros() const { return blaschke_zeros_; }
    const std::vector<Pole>& poles() const { return poles_; }
    bool is_pole(cplx zeta0) const;
    cplx residue_R() const { return residue_R_; }
    cplx eta() const { return eta_; }
    double exclusion_radius() const { return exclusion_radius_; }

    nlohmann::json to_json() const;
    static SMatrix from_json(const nlohmann::json& j);

private:
    SMatrix() = default;
    void certify(); // cache residues, set eta, validate (S5) shape

    Kind kind_ = Kind::product;
    std::vector<double> fA_params_;
    double singular_a_ = 0.0;
    std::vector<cplx> blaschke_zeros_;
    std::vector<Pole> poles_;
    cplx residue_R_{};
    cplx residue_t_{}; // residue at pi i/3
    cplx eta_{};
    double exclusion_radius_ = 1e-6;
};

struct AxiomReport {
    // residuals indexed S1..S6 (0-based: [0] = S1)
    std::array<double, 6> residual{};
    std::array<bool, 6> pass{};
    double tolerance = 1e-10;
    int grid_points = 200;
    double grid_halfwidth = 8.0;
    bool all_pass() const;
    nlohmann::json to_json() const;
};

AxiomReport check_axioms(const SMatrix& S, int grid_points = 200,
                         double halfwidth = 8.0, double tolerance = 1e-10);

} // namespace wedge
