#pragma once

#include "detk/polynomial.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace detk {

// Polynomial map C^k -> C^n parametrizing one branch of a variety. Each
// coordinate is re + i*im with rational-coefficient polynomials in the
// (complex) parameters; minimization runs over 2k real degrees of freedom
// inside [-box, box].
struct BranchMap {
    VarList params;
    std::vector<std::pair<Polynomial, Polynomial>> components;
    double box = 1.0;

    std::size_t nparams() const { return params->size(); }
    ComplexPoint eval(const std::vector<std::complex<double>>& w) const;
};

// The complex zero set of g, optionally with branch parametrizations.
struct VarietyDescriptor {
    Polynomial g;
    std::vector<BranchMap> branches;
};

enum class DistMethod { Penalty, Parametrized, Grid };

struct DistOptions {
    DistMethod method = DistMethod::Penalty;
    // penalty ladder rho = rho_min, 10*rho_min, ..., rho_max
    double rho_min = 1e2;
    double rho_max = 1e12;
    int starts = 6;
    unsigned seed = 1234;
    // parametrized search
    int coarse_per_dim = 0; // 0: choose by dimension
    int refine_starts = 4;
    int refine_sweeps = 3;
    // grid oracle
    int grid_per_dim = 0;     // 0: choose by dimension
    double grid_radius = 0.0; // 0: scale with |x|
    // continuation: candidate nearest points from a neighboring sample,
    // polished directly without the penalty ladder
    std::vector<ComplexPoint> warm_starts;
};

struct DistResult {
    double dist = std::numeric_limits<double>::infinity();
    ComplexPoint witness;
    double residual = 0.0;  // |g(witness)|
    bool converged = true;  // residual under threshold for penalty runs
};

// Upper estimate of dist(x, Z_g) for a real point x. The penalty method
// minimizes ||z-x||^2 + rho |g(z)|^2 over complex z with an ascending rho
// ladder and Armijo gradient descent, then projects onto the zero set with
// Newton steps; the parametrized method minimizes over branch parameters
// (coarse lattice + per-coordinate golden-section + gradient polish); the
// grid method is a brute-force lattice oracle with Newton projection.
DistResult dist_to_variety(const std::vector<double>& x, const VarietyDescriptor& V,
                           const DistOptions& opts = {});

// x_i(t) = sign * c * t^mu * log(1+1/t)^logpow; sign enumerated when
// sign_both is set. c = 0 pins the coordinate to zero along the arc.
struct ArcComponent {
    double c = 0.0;
    double mu = 1.0;
    double logpow = 0.0;
    bool sign_both = false;
};

struct ArcPiece {
    std::vector<ArcComponent> comps;
    double tmax = 1.0;
};

struct SetPiece {
    enum class Kind { Origin, Subspace, Arc };
    Kind kind = Kind::Origin;
    std::vector<int> vanishing; // subspace: indices (0-based) forced to zero
    ArcPiece arc;
};

// Closed set Y through the origin: union of pieces.
struct SetDescriptor {
    std::vector<SetPiece> pieces;

    static SetDescriptor origin();
    static SetDescriptor subspace(std::vector<int> vanishing);
    static SetDescriptor arc(ArcPiece a);
};

double dist_to_set(const std::vector<double>& x, const SetDescriptor& Y);

// Golden-section minimization on [a, b]; shared with the arc search.
double golden_min(const std::function<double(double)>& f, double a, double b, int iters = 80);

} // namespace detk
