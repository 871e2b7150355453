#include "wedge/smatrix.hpp"
#include "wedge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wedge {

namespace {
constexpr double PI = std::numbers::pi;
const cplx I(0.0, 1.0);

bool close(cplx a, cplx b, double tol = 1e-9) { return std::abs(a - b) <= tol; }
} // namespace

// f_A(z) = tanh((z+A pi i)/2) / tanh((z-A pi i)/2), written as a sinh/cosh
// ratio so poles appear only through explicit zeros of the denominator.
cplx SMatrix::f_A(double A, cplx z) {
    cplx u = 0.5 * (z + A * PI * I);
    cplx v = 0.5 * (z - A * PI * I);
    return (std::sinh(u) * std::cosh(v)) / (std::cosh(u) * std::sinh(v));
}

cplx SMatrix::eval_raw(cplx z) const {
    cplx s = 1.0;
    for (double A : fA_params_) s *= f_A(A, z);
    if (singular_a_ > 0) s *= std::exp(I * singular_a_ * (std::exp(z) - std::exp(-z)));
    if (!blaschke_zeros_.empty()) {
        cplx ez = std::exp(z);
        for (cplx al : blaschke_zeros_)
            s *= (ez - std::exp(al)) / (ez - std::exp(std::conj(al)));
    }
    return s;
}

cplx SMatrix::eval(cplx z) const {
    for (const Pole& p : poles_)
        if (std::abs(z - p.location) < exclusion_radius_)
            throw PoleProximity("eval: point within exclusion radius of pole");
    return eval_raw(z);
}

bool SMatrix::is_pole(cplx z0) const {
    for (const Pole& p : poles_)
        if (close(z0, p.location)) return true;
    return false;
}

cplx SMatrix::residue(cplx z0) const {
    const Pole* pole = nullptr;
    for (const Pole& p : poles_)
        if (close(z0, p.location)) pole = &p;
    if (!pole) throw NotAPole("residue: location is not a declared pole");

    // keep the contour clear of every other declared pole and of the zeros
    // mirrored at -poles (unitarity) and the Blaschke zeros
    double clearance = 1e9;
    auto note = [&](cplx w) {
        if (!close(w, pole->location)) clearance = std::min(clearance, std::abs(w - pole->location));
    };
    for (const Pole& p : poles_) {
        note(p.location);
        note(-p.location);
    }
    for (cplx al : blaschke_zeros_) note(al);

    double r1 = std::min(1e-2, 0.45 * clearance);
    double r2 = r1 / 10.0;
    const int N = 512;
    auto contour = [&](double r) {
        std::vector<cplx> terms(N);
        for (int k = 0; k < N; ++k) {
            double phi = 2 * PI * k / N;
            cplx e = std::polar(1.0, phi);
            terms[k] = eval_raw(pole->location + r * e) * (r * e);
        }
        return pairwise_sum(terms) / (double)N;
    };
    cplx i1 = contour(r1), i2 = contour(r2);
    double scale = std::max(std::abs(i1), std::abs(i2));
    if (std::abs(i1 - i2) > 1e-8 * scale)
        throw ContourInconsistent("residue: two-radius contour check diverged");
    return i1;
}

cplx SMatrix::residue_cached(cplx z0) const {
    if (close(z0, cplx(0, 2 * PI / 3))) return residue_R_;
    if (close(z0, cplx(0, PI / 3))) return residue_t_;
    for (const Pole& p : poles_)
        if (close(z0, p.location)) return residue(z0);
    throw NotAPole("residue_cached: location is not a declared pole");
}

void SMatrix::certify() {
    for (const Pole& p : poles_) {
        if (p.location.imag() <= 0 || p.location.imag() >= PI)
            throw InvalidParameter("pole outside open strip");
        if (p.order != 1) {
            if (kind_ == Kind::bullough_dodd || kind_ == Kind::general_family)
                throw InvalidParameter("certified S-matrix requires simple poles");
            continue;
        }
        cplx r = residue(p.location);
        if (close(p.location, cplx(0, 2 * PI / 3))) residue_R_ = r;
        if (close(p.location, cplx(0, PI / 3))) residue_t_ = r;
    }
    eta_ = I * std::sqrt(2 * PI * std::abs(residue_R_));
    if (kind_ == Kind::bullough_dodd || kind_ == Kind::general_family) {
        bool two = poles_.size() == 2 && is_pole(cplx(0, PI / 3)) && is_pole(cplx(0, 2 * PI / 3));
        if (!two || std::abs(residue_R_.real()) > 1e-8 * std::abs(residue_R_) ||
            residue_R_.imag() <= 0)
            throw InvalidParameter("certification failed: residue not in iR+");
    }
}

SMatrix SMatrix::elementary_fA(double A) {
    SMatrix s;
    s.kind_ = Kind::elementary_fA;
    s.fA_params_ = {A};
    if (A > 0 && A < 1) {
        if (std::abs(A - 0.5) > 1e-12) {
            s.poles_.push_back({cplx(0, A * PI), 1});
            s.poles_.push_back({cplx(0, (1 - A) * PI), 1});
        } else {
            s.poles_.push_back({cplx(0, A * PI), 2});
        }
    }
    s.certify();
    return s;
}

SMatrix SMatrix::build_bullough_dodd(double B) {
    if (!(B > 0 && B < 2) || std::abs(B - 1) < 1e-9)
        throw InvalidParameter("build_bullough_dodd: B must lie in (0,2), B != 1");
    SMatrix s;
    s.kind_ = Kind::bullough_dodd;
    s.fA_params_ = {2.0 / 3.0, B / 3.0 - 2.0 / 3.0, -B / 3.0};
    s.poles_ = {{cplx(0, PI / 3), 1}, {cplx(0, 2 * PI / 3), 1}};
    s.certify();
    return s;
}

SMatrix SMatrix::build_general(const std::vector<double>& B_list, double a,
                               const std::vector<cplx>& extra_zero_orbits) {
    if (B_list.size() % 2 == 0)
        throw EvenFactorCount("build_general: B_list must have odd length");
    for (double B : B_list)
        if (!(B > 0 && B < 2) || std::abs(B - 1) < 1e-9)
            throw InvalidParameter("build_general: each B must lie in (0,2), B != 1");
    if (a < 0) throw InvalidParameter("build_general: a must be nonnegative");

    SMatrix s;
    s.kind_ = Kind::general_family;
    s.fA_params_.push_back(2.0 / 3.0);
    for (double B : B_list) {
        s.fA_params_.push_back(B / 3.0 - 2.0 / 3.0);
        s.fA_params_.push_back(-B / 3.0);
    }
    s.singular_a_ = a;

    // complete user zeros to orbits closed under z -> -conj z, z -> i pi - z,
    // and the bootstrap pairing z -> z + i pi/3 for Im z < pi/3
    std::vector<cplx> orbit;
    auto add = [&](cplx z) {
        if (z.imag() <= 1e-12 || z.imag() >= PI - 1e-12)
            throw OrbitOverflow("build_general: orbit point leaves the strip");
        for (cplx w : orbit)
            if (close(w, z, 1e-12)) return false;
        orbit.push_back(z);
        return true;
    };
    for (cplx z : extra_zero_orbits) add(z);
    for (size_t pass = 0; pass < 64; ++pass) {
        bool grew = false;
        for (size_t i = 0; i < orbit.size(); ++i) {
            cplx z = orbit[i];
            grew |= add(-std::conj(z));
            grew |= add(cplx(0, PI) - z);
            if (z.imag() < PI / 3 - 1e-12) grew |= add(z + cplx(0, PI / 3));
        }
        if (!grew) break;
        if (pass == 63) throw OrbitOverflow("build_general: orbit closure did not terminate");
    }
    std::sort(orbit.begin(), orbit.end(), [](cplx x, cplx y) {
        return x.imag() != y.imag() ? x.imag() < y.imag() : x.real() < y.real();
    });
    s.blaschke_zeros_ = orbit;

    s.poles_ = {{cplx(0, PI / 3), 1}, {cplx(0, 2 * PI / 3), 1}};
    s.certify();
    return s;
}

bool AxiomReport::all_pass() const {
    return std::all_of(pass.begin(), pass.end(), [](bool b) { return b; });
}

nlohmann::json AxiomReport::to_json() const {
    nlohmann::json j;
    const char* names[] = {"S1_unitarity",      "S2_hermitian_analyticity",
                           "S3_crossing",        "S4_bootstrap",
                           "S5_positive_residue", "S6_value_at_zero"};
    for (int i = 0; i < 6; ++i)
        j[names[i]] = {{"residual", residual[i]}, {"pass", pass[i]}};
    j["tolerance"] = tolerance;
    j["grid"] = {{"points", grid_points}, {"halfwidth", grid_halfwidth}};
    return j;
}

AxiomReport check_axioms(const SMatrix& S, int grid_points, double halfwidth,
                         double tolerance) {
    AxiomReport rep;
    rep.tolerance = tolerance;
    rep.grid_points = grid_points;
    rep.grid_halfwidth = halfwidth;

    for (int i = 0; i < grid_points; ++i) {
        double th = -halfwidth + 2 * halfwidth * i / (grid_points - 1.0);
        cplx s0 = S.eval(th);
        rep.residual[0] = std::max(rep.residual[0], std::abs(s0 * std::conj(s0) - 1.0));
        rep.residual[1] = std::max(rep.residual[1], std::abs(S.eval(-th) * s0 - 1.0));
        rep.residual[2] = std::max(rep.residual[2], std::abs(s0 - S.eval(cplx(0, PI) - th)));
        cplx lhs = S.eval(th + cplx(0, PI / 3));
        cplx rhs = s0 * S.eval(th + cplx(0, 2 * PI / 3));
        rep.residual[3] = std::max(rep.residual[3], std::abs(lhs - rhs));
    }
    cplx R = S.residue_cached(cplx(0, 2 * std::numbers::pi / 3));
    double s5 = std::abs(R.real()) + std::max(0.0, -R.imag());
    bool audit = S.poles().size() == 2 && S.is_pole(cplx(0, PI / 3)) &&
                 S.is_pole(cplx(0, 2 * PI / 3));
    if (!audit) s5 += 1.0;
    rep.residual[4] = s5;
    rep.residual[5] = std::abs(S.eval(0.0) + 1.0);

    for (int i = 0; i < 6; ++i) rep.pass[i] = rep.residual[i] <= tolerance;
    return rep;
}

namespace {
nlohmann::json cj(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }
cplx jc(const nlohmann::json& j) { return cplx(j.at(0).get<double>(), j.at(1).get<double>()); }

const char* kind_name(SMatrix::Kind k) {
    switch (k) {
        case SMatrix::Kind::elementary_fA: return "elementary_fA";
        case SMatrix::Kind::bullough_dodd: return "bullough_dodd";
        case SMatrix::Kind::general_family: return "general_family";
        default: return "product";
    }
}
} // namespace

nlohmann::json SMatrix::to_json() const {
    nlohmann::json j;
    j["kind"] = kind_name(kind_);
    j["fA_params"] = fA_params_;
    j["singular_a"] = singular_a_;
    j["blaschke_zeros"] = nlohmann::json::array();
    for (cplx z : blaschke_zeros_) j["blaschke_zeros"].push_back(cj(z));
    j["poles"] = nlohmann::json::array();
    for (const Pole& p : poles_) j["poles"].push_back({{"location", cj(p.location)}, {"order", p.order}});
    j["residue_R"] = cj(residue_R_);
    j["eta"] = cj(eta_);
    return j;
}

SMatrix SMatrix::from_json(const nlohmann::json& j) {
    SMatrix s;
    std::string k = j.at("kind").get<std::string>();
    if (k == "elementary_fA") s.kind_ = Kind::elementary_fA;
    else if (k == "bullough_dodd") s.kind_ = Kind::bullough_dodd;
    else if (k == "general_family") s.kind_ = Kind::general_family;
    else s.kind_ = Kind::product;
    s.fA_params_ = j.at("fA_params").get<std::vector<double>>();
    s.singular_a_ = j.at("singular_a").get<double>();
    for (const auto& z : j.at("blaschke_zeros")) s.blaschke_zeros_.push_back(jc(z));
    for (const auto& p : j.at("poles"))
        s.poles_.push_back({jc(p.at("location")), p.at("order").get<int>()});
    s.certify();
    return s;
}

} // namespace wedge
