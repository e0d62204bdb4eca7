#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "detk/fitting.hpp"
#include "detk/parse.hpp"
#include "test_util.hpp"

using namespace detk;
using testutil::random_poly;

namespace {
const VarList V2 = make_vars({"x1", "x2"});
const VarList V3 = make_vars({"x1", "x2", "x3"});

Polynomial P2(const std::string& s) { return parse_poly(s, V2); }
Polynomial P3(const std::string& s) { return parse_poly(s, V3); }

MapGerm psi2() { return MapGerm({P2("x1"), P2("x2")}); }
} // namespace

TEST_CASE("sigma_apply") {
    CHECK(sigma_apply(ModuleVector({P2("x2"), P2("-x1")}), psi2()).is_zero());
    CHECK(sigma_apply(ModuleVector({P2("4*(x1^2+x2^4)"), P2("0")}), psi2()) ==
          P2("4*x1*(x1^2+x2^4)"));
    CHECK(sigma_apply(ModuleVector::zero(V2, 2), psi2()).is_zero());
    CHECK_THROWS_AS(sigma_apply(ModuleVector({P2("x1")}), psi2()), IndexError);
}

TEST_CASE("primitive membership") {
    Ideal psiI({P3("x1"), P3("x2")});
    CHECK(primitive_member(P3("x1^2"), psiI).member);
    CHECK(primitive_member(P3("(x1^2+x2^2+x3^4)^2*(x1^2+x2^2)"), psiI).member);

    auto bad = primitive_member(P3("x1"), psiI);
    CHECK(!bad.member);
    CHECK(bad.failed_part == "df/dx1");
    CHECK(bad.witness == P3("1"));

    CHECK_THROWS_AS(primitive_member(P3("x1+1"), psiI), Error);
}

TEST_CASE("build_lambda on the quartic example") {
    Polynomial f = P2("(x1^2+x2^4)^2");
    FittingResult r = build_lambda(psi2(), gradient(f));
    REQUIRE(r.lifts.size() == 2);
    REQUIRE(r.relations.size() == 1);
    // lifts are valid whenever sigma reconstructs phi; the first one is the
    // hand one, the second may differ from it by a syzygy combination
    CHECK(r.lifts[0] == ModuleVector({P2("4*x1^2+4*x2^4"), P2("0")}));
    CHECK(sigma_apply(r.lifts[1], psi2()) == derive(f, 1));
    REQUIRE(r.lambda->rows() == 2);
    REQUIRE(r.lambda->cols() == 3);
    // relation column is the Koszul syzygy up to sign
    bool koszul = (r.lambda->at(0, 2) == P2("x2") && r.lambda->at(1, 2) == P2("-x1")) ||
                  (r.lambda->at(0, 2) == P2("-x2") && r.lambda->at(1, 2) == P2("x1"));
    CHECK(koszul);
}

TEST_CASE("build_lambda identity lifts") {
    FittingResult r = build_lambda(psi2(), MapGerm({P2("x1"), P2("x2")}));
    CHECK(r.lambda->at(0, 0) == P2("1"));
    CHECK(r.lambda->at(1, 0) == P2("0"));
    CHECK(r.lambda->at(0, 1) == P2("0"));
    CHECK(r.lambda->at(1, 1) == P2("1"));
}

TEST_CASE("build_lambda lift with an outside coefficient") {
    MapGerm psi({P3("x1"), P3("x2")});
    FittingResult r = build_lambda(psi, MapGerm({P3("x3*x1")}));
    CHECK(r.lifts[0] == ModuleVector({P3("x3"), P3("0")}));
}

TEST_CASE("build_lambda rejects phi outside psi") {
    MapGerm psi({P2("x1^2"), P2("x2^2")});
    CHECK_THROWS_AS(build_lambda(psi, MapGerm({P2("x1")})), NotInIdealError);
}

TEST_CASE("lift and relation soundness") {
    Polynomial f = P3("(x1^2+x2^2+x3^4)^2*(x1^2+x2^2)");
    MapGerm psi({P3("x1"), P3("x2")});
    FittingResult r = build_lambda(psi, gradient(f));
    for (std::size_t j = 0; j < r.lifts.size(); ++j)
        CHECK(sigma_apply(r.lifts[j], psi) == r.phi.components[j]);
    for (const auto& k : r.relations) CHECK(sigma_apply(k, psi).is_zero());
}

TEST_CASE("fitting ideal of the quartic example equals the scaled generators") {
    Polynomial f = P2("(x1^2+x2^4)^2");
    FittingResult r = kf_pipeline(psi2(), f);
    REQUIRE(r.ideal);
    Ideal expected({P2("x1*(x1^2+x2^4)"), P2("x2^3*(x1^2+x2^4)")});
    CHECK(ideal_equal(*r.ideal, expected));
    // f itself is a member
    CHECK(normal_form(f, *r.ideal).is_zero());
}

TEST_CASE("Morse point gives the unit ideal") {
    FittingResult r = kf_pipeline(psi2(), P2("x1^2+x2^2"));
    CHECK(r.ideal->is_unit());
    // the lift-pair minor is the constant 4
    CHECK(r.minor_list[0] == P2("4"));
}

TEST_CASE("three-variable example contains the published germ") {
    Polynomial f = P3("(x1^2+x2^2+x3^4)^2*(x1^2+x2^2)");
    MapGerm psi({P3("x1"), P3("x2")});
    FittingResult r = kf_pipeline(psi, f);
    Polynomial g = P3("(x1^2+x2^2+x3^4)^2*(3*x1^2+3*x2^2+x3^4)^2");
    CHECK(normal_form(g, *r.ideal).is_zero());
}

TEST_CASE("kf_pipeline rejects non-primitive f") {
    CHECK_THROWS_AS(kf_pipeline(psi2(), P2("x1")), NotPrimitiveError);
}

TEST_CASE("image inclusion: K*psi_i inside <grad f>") {
    Polynomial f = P2("(x1^2+x2^4)^2");
    FittingResult r = kf_pipeline(psi2(), f);
    Ideal gradI({derive(f, 0), derive(f, 1)});
    for (const auto& m : r.minor_list)
        for (const auto& psi_i : r.psi.components)
            CHECK(normal_form(m * psi_i, gradI).is_zero());
}

TEST_CASE("lift perturbation by syzygy combinations leaves K unchanged") {
    Polynomial f = P2("(x1^2+x2^4)^2");
    FittingResult r = kf_pipeline(psi2(), f);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        PolyMatrix lam(*r.lambda);
        for (std::size_t j = 0; j < r.lifts.size(); ++j) {
            ModuleVector h = r.lifts[j];
            for (const auto& k : r.relations) h = h + k.scaled(random_poly(rng, V2, 2, 2));
            for (std::size_t i = 0; i < 2; ++i) lam.at(i, j) = h.entries[i];
        }
        std::vector<Polynomial> mins;
        for (auto& m : minors(lam, 2))
            if (!m.is_zero()) mins.push_back(m);
        REQUIRE(!mins.empty());
        CHECK(ideal_equal(Ideal(mins), *r.ideal));
    }
}

TEST_CASE("identity-psi specialization keeps x_k^{n-2} df/dx_j inside K_f") {
    // n = 3, psi = identity
    Polynomial f = P3("x1^2+x2^2+x3^4");
    MapGerm psi({P3("x1"), P3("x2"), P3("x3")});
    FittingResult r = kf_pipeline(psi, f);
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t j = 0; j < 3; ++j) {
            Polynomial probe = Polynomial::variable(V3, k) * derive(f, j);
            CHECK(normal_form(probe, *r.ideal).is_zero());
        }
}

TEST_CASE("degenerate ideal is reported, not swallowed") {
    // psi with a single component and phi = psi: lambda is the 1x1 [1],
    // never degenerate; build a genuinely degenerate case instead:
    // phi = 0 map is rejected earlier (vanishing constant term holds),
    // so degeneracy needs a zero lift column times zero relations; a
    // single-generator psi with phi = 0 gives lambda = [0] and K = 0.
    MapGerm psi({P2("x1")});
    MapGerm phi({Polynomial::zero(V2)});
    CHECK_THROWS_AS(fitting_ideal(psi, phi), DegenerateIdealError);
}
