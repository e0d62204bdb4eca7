#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "detk/parse.hpp"
#include "detk/separation.hpp"

#include <cmath>

using namespace detk;

namespace {
const VarList V2 = make_vars({"x1", "x2"});
const VarList W1 = make_vars({"w"});

Polynomial PW(const std::string& s) { return parse_poly(s, W1); }

VarietyDescriptor quartic_variety() {
    VarietyDescriptor V;
    V.g = parse_poly("(x1^2+x2^4)^2", V2);
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

SamplePlan fast_plan() {
    SamplePlan p = SamplePlan::defaults();
    p.dist.method = DistMethod::Parametrized;
    return p;
}
} // namespace

TEST_CASE("synthetic exponent recovery is exact") {
    for (double s : {1.0, 1.5, 2.0}) {
        std::vector<std::pair<double, double>> pairs;
        for (double r = 0.25; r > 1e-6; r *= 0.7) pairs.emplace_back(r, 0.37 * std::pow(r, s));
        ExponentFit fit = fit_envelope(pairs, false);
        CHECK(fit.s_hat == doctest::Approx(s).epsilon(1e-6));
        CHECK(fit.c_hat == doctest::Approx(0.37).epsilon(1e-6));
        CHECK(fit.residual <= 1e-9);
    }
}

TEST_CASE("insufficient data is reported") {
    std::vector<std::pair<double, double>> pairs{{0.1, 0.1}, {0.09, 0.09}};
    CHECK_THROWS_AS(fit_envelope(pairs, false), InsufficientDataError);
}

TEST_CASE("isolated far bins do not wreck the fit") {
    std::vector<std::pair<double, double>> pairs;
    for (double r = 0.25; r > 1e-5; r *= 0.7) pairs.emplace_back(r, std::pow(r, 1.5));
    // a near-coincidence sample: r tiny, d moderate
    pairs.emplace_back(1e-12, 0.3);
    ExponentFit fit = fit_envelope(pairs, false);
    CHECK(fit.s_hat == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("separation exponent for the quartic geometry, mu = 1.5") {
    auto fit = fit_separation(quartic_variety(), y_mu_2d(1.5), fast_plan());
    CHECK(fit.s_hat == doctest::Approx(4.0 / 3.0).epsilon(0.075));
    CHECK(!fit.clamped);
}

TEST_CASE("separation exponent for the quartic geometry, mu = 3") {
    auto fit = fit_separation(quartic_variety(), y_mu_2d(3.0), fast_plan());
    CHECK(fit.s_hat == doctest::Approx(1.0).epsilon(0.1));
    // the raw envelope slope is 2/3; admissibility clamps it at 1
    CHECK(fit.clamped);
    CHECK(fit.raw_slope < 1.0);
}

TEST_CASE("scale stability of the fitted exponent") {
    SamplePlan narrow = fast_plan();
    narrow.radii = SamplePlan::geometric_radii(std::pow(2.0, -4), std::pow(2.0, -14),
                                               std::pow(2.0, -0.25));
    SamplePlan wide = fast_plan();
    wide.radii = SamplePlan::geometric_radii(std::pow(2.0, -4), std::pow(2.0, -24),
                                             std::pow(2.0, -0.25));
    auto f1 = fit_separation(quartic_variety(), y_mu_2d(1.5), narrow);
    auto f2 = fit_separation(quartic_variety(), y_mu_2d(1.5), wide);
    CHECK(std::abs(f1.s_hat - f2.s_hat) < 0.05);
}

TEST_CASE("verification accepts the fitted theta and rejects a stronger one") {
    auto V = quartic_variety();
    auto Y = y_mu_2d(1.5);
    auto fit = fit_separation(V, Y, fast_plan());

    SamplePlan fresh = fast_plan();
    fresh.seed = 43;
    fresh.radii = SamplePlan::geometric_radii(std::pow(2.0, -4.125), std::pow(2.0, -18),
                                              std::pow(2.0, -0.5));
    AdmissibleFunction ok_theta{fit.c_hat / 2.0, fit.s_hat, 0.0};
    auto rep = verify_separation(V, Y, ok_theta, fresh);
    CHECK(rep.ok);

    // claiming theta ~ t^1 is too strong: fails near the x2-axis
    AdmissibleFunction strong{fit.c_hat / 2.0, 1.0, 0.0};
    auto bad = verify_separation(V, Y, strong, fresh);
    CHECK(!bad.ok);
}

TEST_CASE("trivial separation from the origin") {
    VarietyDescriptor V;
    V.g = parse_poly("x1^2+x2^2", V2); // real zero set is just the origin
    auto Y = SetDescriptor::origin();
    SamplePlan plan = SamplePlan::defaults(); // penalty method
    plan.radii = SamplePlan::geometric_radii(std::pow(2.0, -4), std::pow(2.0, -12),
                                             std::pow(2.0, -0.5));
    AdmissibleFunction half{0.5, 1.0, 0.0};
    auto rep = verify_separation(V, Y, half, plan);
    CHECK(rep.ok); // dist(x, Z) = |x|/sqrt(2) >= |x|/2
}

TEST_CASE("empty variety verifies trivially") {
    VarietyDescriptor V;
    V.g = parse_poly("1", V2);
    SamplePlan plan = SamplePlan::defaults();
    plan.radii = {0.1, 0.01};
    auto rep = verify_separation(V, SetDescriptor::origin(), AdmissibleFunction{1, 1, 0}, plan);
    CHECK(rep.ok);
}
