#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "detk/parse.hpp"
#include "detk/variety.hpp"

#include <cmath>
#include <random>

using namespace detk;

namespace {
const VarList V2 = make_vars({"x1", "x2"});
const VarList W1 = make_vars({"w"});

Polynomial PW(const std::string& s) { return parse_poly(s, W1); }

// Z_{x1^2+x2^4}: two smooth branches z1 = +-i z2^2 parametrized by one
// complex parameter
VarietyDescriptor quartic_variety(bool squared = false) {
    VarietyDescriptor V;
    V.g = parse_poly(squared ? "(x1^2+x2^4)^2" : "x1^2+x2^4", V2);
    V.branches.push_back(BranchMap{W1, {{PW("0"), PW("w^2")}, {PW("w"), PW("0")}}, 1.0});
    V.branches.push_back(BranchMap{W1, {{PW("0"), PW("-w^2")}, {PW("w"), PW("0")}}, 1.0});
    return V;
}

SetDescriptor y_mu_2d(double mu) {
    ArcPiece a;
    if (mu >= 1.0)
        a.comps = {{1.0, mu, 0.0, true}, {1.0, 1.0, 0.0, true}};
    else
        a.comps = {{1.0, 1.0, 0.0, true}, {1.0, 1.0 / mu, 0.0, true}};
    return SetDescriptor::arc(a);
}
} // namespace

TEST_CASE("branch points satisfy g = 0") {
    auto V = quartic_variety();
    std::mt19937_64 rng(5);
    auto unif = [&]() { return (double)(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    for (int k = 0; k < 50; ++k) {
        std::vector<std::complex<double>> w{{unif(), unif()}};
        for (const auto& br : V.branches) {
            ComplexPoint z = br.eval(w);
            double nz = std::sqrt(std::norm(z.z[0]) + std::norm(z.z[1]));
            double bound = 1e-9 * std::pow(1.0 + nz, V.g.total_degree());
            CHECK(std::abs(evaluate(V.g, z)) <= bound);
        }
    }
}

TEST_CASE("distance to the quartic variety") {
    auto V = quartic_variety();

    // origin lies on Z_g
    for (auto m : {DistMethod::Penalty, DistMethod::Parametrized}) {
        DistOptions o;
        o.method = m;
        auto r = dist_to_variety({0.0, 0.0}, V, o);
        CHECK(r.dist <= 1e-8);
    }

    // x on the x1-axis: nearest zero is the origin
    DistOptions par;
    par.method = DistMethod::Parametrized;
    CHECK(dist_to_variety({0.1, 0.0}, V, par).dist == doctest::Approx(0.1).epsilon(1e-4));

    // x on the x2-axis: distance ~ x2^2 (grid-oracle cross-check)
    auto rp = dist_to_variety({0.0, 0.1}, V, par);
    CHECK(rp.dist == doctest::Approx(0.01).epsilon(0.08));
    DistOptions gr;
    gr.method = DistMethod::Grid;
    gr.grid_per_dim = 9;
    auto rg = dist_to_variety({0.0, 0.1}, V, gr);
    CHECK(rp.dist <= rg.dist * 1.0001); // oracle is an upper bound too
    CHECK(rg.dist == doctest::Approx(0.01).epsilon(0.25));
}

TEST_CASE("empty and full zero sets") {
    VarietyDescriptor unit;
    unit.g = parse_poly("1", V2);
    CHECK(std::isinf(dist_to_variety({0.5, 0.5}, unit).dist));

    VarietyDescriptor all;
    all.g = Polynomial::zero(V2);
    CHECK(dist_to_variety({0.5, 0.5}, all).dist == 0.0);
}

TEST_CASE("zero detection: points with g(x) = 0 have distance ~ 0") {
    VarietyDescriptor V;
    V.g = parse_poly("x1^2-x2^2", V2); // real zeros on the diagonals
    auto r = dist_to_variety({0.25, 0.25}, V);
    CHECK(r.dist <= 1e-8);
}

TEST_CASE("witness upper bound") {
    auto V = quartic_variety();
    std::mt19937_64 rng(9);
    auto unif = [&]() { return (double)(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    DistOptions par;
    par.method = DistMethod::Parametrized;
    for (int k = 0; k < 25; ++k) {
        std::vector<double> x{0.3 * unif(), 0.3 * unif()};
        auto r = dist_to_variety(x, V, par);
        for (const auto& br : V.branches) {
            std::vector<std::complex<double>> w{{unif(), unif()}};
            ComplexPoint z0 = br.eval(w);
            double wd = std::sqrt(std::norm(z0.z[0] - std::complex<double>(x[0], 0)) +
                                  std::norm(z0.z[1] - std::complex<double>(x[1], 0)));
            CHECK(r.dist <= wd + 1e-9);
        }
    }
}

TEST_CASE("penalty and parametrized estimates agree") {
    auto V = quartic_variety(true); // the squared germ: same zero set
    std::mt19937_64 rng(12345);
    auto unif = [&]() { return (double)(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    DistOptions pen; // default penalty
    DistOptions par;
    par.method = DistMethod::Parametrized;
    int checked = 0;
    for (int k = 0; k < 100; ++k) {
        std::vector<double> x{0.3 * unif(), 0.3 * unif()};
        double dpen = dist_to_variety(x, V, pen).dist;
        double dpar = dist_to_variety(x, V, par).dist;
        if (dpar < 1e-6) continue; // relative agreement is meaningless at zero
        ++checked;
        CHECK(std::abs(dpen - dpar) <= 0.05 * dpar);
    }
    CHECK(checked >= 90);
}

TEST_CASE("dist_to_set basics") {
    auto Y0 = SetDescriptor::origin();
    CHECK(dist_to_set({0.3, -0.4}, Y0) == doctest::Approx(0.5));

    auto Ysub = SetDescriptor::subspace({0}); // the x2-axis: x1 = 0
    CHECK(dist_to_set({0.3, 9.0}, Ysub) == doctest::Approx(0.3));

    // points sampled on an arc are at distance ~ 0
    auto Y = y_mu_2d(1.5);
    for (double t : {1e-4, 1e-3, 1e-2, 0.2}) {
        double d1 = dist_to_set({std::pow(t, 1.5), t}, Y);
        CHECK(d1 <= 1e-10);
        double d2 = dist_to_set({-std::pow(t, 1.5), -t}, Y);
        CHECK(d2 <= 1e-10);
    }

    // x2-axis point: positive but below |x|
    double t = 0.01;
    double d = dist_to_set({0.0, t}, Y);
    CHECK(d > 0.0);
    CHECK(d <= t);
    // golden-section oracle agrees with the asymptotic t^1.5 scale
    CHECK(d == doctest::Approx(std::pow(t, 1.5)).epsilon(0.05));
}

TEST_CASE("dist_to_set handles the inverted parametrization for mu < 1") {
    auto Y = y_mu_2d(0.5); // |x1| = |x2|^0.5, i.e. |x2| = x1^2
    for (double t : {1e-3, 1e-2, 0.1}) {
        CHECK(dist_to_set({t, t * t}, Y) <= 1e-10);
        CHECK(dist_to_set({-t, t * t}, Y) <= 1e-10);
    }
    double t = 0.01;
    // the arc curves away from the x2-axis: nearest point is the origin
    CHECK(dist_to_set({0.0, t}, Y) == doctest::Approx(t).epsilon(1e-6));
}

TEST_CASE("log-corrected arcs") {
    ArcPiece a;
    a.comps = {{1.0, 1.5, 1.0, true}, {1.0, 1.0, 0.0, true}};
    auto Y = SetDescriptor::arc(a);
    double t = 1e-3;
    double x1 = std::pow(t, 1.5) * std::log1p(1.0 / t);
    CHECK(dist_to_set({x1, t}, Y) <= 1e-10);
}
