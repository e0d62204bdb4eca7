#pragma once

#include "detk/ideal.hpp"
#include "detk/poly_matrix.hpp"

#include <memory>
#include <optional>
#include <string>

namespace detk {

// Map germ (R^n,0) -> (R^p,0): component polynomials, all vanishing at 0.
struct MapGerm {
    std::vector<Polynomial> components;

    MapGerm() = default;
    explicit MapGerm(std::vector<Polynomial> comps);

    std::size_t size() const { return components.size(); }
    const VarList& vars() const { return components.front().vars(); }
};

// Gradient map of f as a MapGerm.
MapGerm gradient(const Polynomial& f);

// sigma(v) = sum_i v_i * psi_i.
Polynomial sigma_apply(const ModuleVector& v, const MapGerm& psi);

struct PrimitiveResult {
    bool member = false;
    // which part failed: "f" or "df/dx<i>"; empty when member
    std::string failed_part;
    Polynomial witness; // nonzero normal form of the failing part
};

// f lies in the primitive ideal of I: f and all first derivatives reduce
// to zero. Requires f(0) = 0.
PrimitiveResult primitive_member(const Polynomial& f, const Ideal& I);

// Presentation of O^p / sigma^{-1}(<phi>): lifts h^j with sigma(h^j) =
// phi_j, syzygies k^j of psi, the matrix lambda = [h^1..h^q k^1..k^r],
// and the ideal of its maximal minors.
struct FittingResult {
    MapGerm psi;
    MapGerm phi;
    std::vector<ModuleVector> lifts;
    std::vector<ModuleVector> relations;
    std::shared_ptr<PolyMatrix> lambda;
    std::vector<Polynomial> minor_list; // all p x p minors, zero ones dropped
    std::shared_ptr<Ideal> ideal;       // K; null until fitting_ideal
};

// Checks <phi> subset <psi>, computes lifts and syzygies, assembles lambda.
// Throws NotInIdealError when some phi_j has no polynomial lift.
FittingResult build_lambda(const MapGerm& psi, const MapGerm& phi);

// build_lambda plus the minors ideal. Throws DegenerateIdealError when all
// maximal minors vanish (K = 0), which is a meaningful outcome, not a bug.
FittingResult fitting_ideal(const MapGerm& psi, const MapGerm& phi);

// The K_f specialization: phi = grad f; requires f in the primitive ideal
// of <psi> (throws NotPrimitiveError with the failing part otherwise).
FittingResult kf_pipeline(const MapGerm& psi, const Polynomial& f);

} // namespace detk
