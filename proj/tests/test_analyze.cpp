#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "detk/analyze.hpp"
#include "detk/config.hpp"
#include "detk/parse.hpp"
#include "detk/report.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

using namespace detk;
using nlohmann::json;

namespace {
const VarList V2 = make_vars({"x1", "x2"});

Polynomial P2(const std::string& s) { return parse_poly(s, V2); }

ProblemSpec quartic_spec(double mu, GStrategy strategy) {
    json doc = {
        {"variables", {"x1", "x2"}},
        {"f", "(x1^2+x2^4)^2"},
        {"psi", {"x1", "x2"}},
        {"sequence", {{"family", "gevrey_log"}, {"alpha", 1}, {"beta", 0}}},
        {"branches",
         json::array({{{"params", {"w"}},
                       {"components", json::array({{{"re", "0"}, {"im", "w^2"}},
                                                   {{"re", "w"}, {"im", "0"}}})}},
                      {{"params", {"w"}},
                       {"components", json::array({{{"re", "0"}, {"im", "-w^2"}},
                                                   {{"re", "w"}, {"im", "0"}}})}}})},
        {"plan", {{"method", "parametrized"}}},
    };
    json arc;
    if (mu >= 1.0)
        arc = {{"type", "arc"},
               {"components", json::array({{{"c", 1}, {"mu", mu}, {"sign", "both"}},
                                           {{"c", 1}, {"mu", 1.0}, {"sign", "both"}}})}};
    else
        arc = {{"type", "arc"},
               {"components", json::array({{{"c", 1}, {"mu", 1.0}, {"sign", "both"}},
                                           {{"c", 1}, {"mu", 1.0 / mu}, {"sign", "both"}}})}};
    doc["Y"] = {{"pieces", json::array({arc})}};
    Config cfg = parse_config(doc);
    ProblemSpec spec = cfg.to_problem_spec();
    spec.strategy = std::move(strategy);
    return spec;
}

GStrategy user_g(const std::string& s) {
    GStrategy st;
    st.kind = GStrategy::Kind::UserSupplied;
    st.user_g = P2(s);
    return st;
}
} // namespace

TEST_CASE("beta_table reproduces the closed-form cases") {
    CHECK(beta_table(1.0, 0.5) == doctest::Approx(2.0));
    CHECK(beta_table(1.0, 1.5) == doctest::Approx(4.0 / 3.0));
    CHECK(beta_table(1.0, 3.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(beta_table(0.0, 1.0), Error);
    CHECK_THROWS_AS(beta_table(1.0, -2.0), Error);
}

TEST_CASE("beta_table is non-increasing in mu and continuous at the breaks") {
    double alpha = 1.7;
    double prev = beta_table(alpha, 0.05);
    for (double mu = 0.1; mu <= 4.0; mu += 0.05) {
        double b = beta_table(alpha, mu);
        CHECK(b <= prev + 1e-12);
        prev = b;
    }
    CHECK(beta_table(alpha, 1.0) == doctest::Approx(beta_table(alpha, 1.0 + 1e-12)));
    CHECK(beta_table(alpha, 2.0) == doctest::Approx(beta_table(alpha, 2.0 + 1e-12)));
}

TEST_CASE("rational rounding") {
    auto r = round_rational(1.3334);
    CHECK(r.rounded);
    CHECK(r.num == 4);
    CHECK(r.den == 3);
    auto q = round_rational(1.0401); // within window of 1
    CHECK(q.rounded);
    CHECK(q.den == 1);
    auto far = round_rational(1.4641, 12, 0.002);
    CHECK(!far.rounded);
    CHECK(far.value == doctest::Approx(1.4641));
}

TEST_CASE("analyze: quartic example, mu = 1.5") {
    DeterminacyReport rep = analyze(quartic_spec(1.5, user_g("(x1^2+x2^4)^2")));
    REQUIRE(rep.status == AnalyzeStatus::Ok);
    CHECK(rep.f_in_psi);
    CHECK(rep.grad_in_psi);
    CHECK(rep.dol_ok);
    CHECK(rep.s_round.rounded);
    CHECK(rep.s_round.num == 4);
    CHECK(rep.s_round.den == 3);
    CHECK(rep.target.family().alpha == doctest::Approx(4.0 / 3.0));
    CHECK(rep.target.family().beta == doctest::Approx(0.0));
    CHECK(rep.verify.ok);
    CHECK(!rep.conclusion.empty());
    // every reported generator reproduces under membership against the basis
    for (const auto& m : rep.fitting->minor_list) {
        auto mem = ideal_member(m, *rep.fitting->ideal);
        CHECK(mem.member);
    }
}

TEST_CASE("analyze: Morse germ gives the no-loss conclusion") {
    json doc = {{"variables", {"x1", "x2"}},
                {"f", "x1^2+x2^2"},
                {"psi", {"x1", "x2"}},
                {"Y", {{"pieces", json::array({{{"type", "origin"}}})}}},
                {"sequence", {{"family", "gevrey_log"}, {"alpha", 1}, {"beta", 0}}}};
    DeterminacyReport rep = analyze(parse_config(doc).to_problem_spec());
    REQUIRE(rep.status == AnalyzeStatus::Ok);
    CHECK(rep.kf_is_unit);
    CHECK(rep.chosen_g == "1");
    CHECK(rep.theta.mu == doctest::Approx(1.0));
    CHECK(rep.target.family().alpha == doctest::Approx(1.0));
    CHECK(rep.conclusion.find("M^(theta) = M") != std::string::npos);
}

TEST_CASE("analyze: non-primitive f is rejected with a witness") {
    json doc = {{"variables", {"x1", "x2"}},
                {"f", "x1"},
                {"psi", {"x1", "x2"}},
                {"Y", {{"pieces", json::array({{{"type", "origin"}}})}}},
                {"sequence", {{"family", "gevrey_log"}, {"alpha", 1}, {"beta", 0}}}};
    DeterminacyReport rep = analyze(parse_config(doc).to_problem_spec());
    CHECK(rep.status == AnalyzeStatus::NotPrimitive);
    CHECK(rep.conclusion.empty());
    CHECK(rep.primitive_witness.find("df/dx1") != std::string::npos);
}

TEST_CASE("analyze: quasianalytic sequences are rejected") {
    json doc = {{"variables", {"x1", "x2"}},
                {"f", "x1^2+x2^2"},
                {"psi", {"x1", "x2"}},
                {"Y", {{"pieces", json::array({{{"type", "origin"}}})}}},
                {"sequence", {{"family", "gevrey_log"}, {"alpha", 0}, {"beta", 0}}}};
    DeterminacyReport rep = analyze(parse_config(doc).to_problem_spec());
    CHECK(rep.status == AnalyzeStatus::SequenceRejected);
    CHECK(rep.conclusion.empty());
}

TEST_CASE("analyze: default strategy picks the lowest-degree minor") {
    DeterminacyReport rep = analyze(quartic_spec(1.5, GStrategy{}));
    CHECK(rep.strategy_name == "lowest-degree-minor");
    // lowest-degree minor is -4*x1*(x1^2+x2^4); its zero set contains the
    // complex plane {x1 = 0}, so real points near the x2-axis sit at
    // distance 0 and the inequality cannot be verified
    CHECK(rep.chosen_g.find("x1*x2^4") != std::string::npos);
    CHECK(rep.status == AnalyzeStatus::SeparationUnverified);
    CHECK(rep.conclusion.empty());
}

TEST_CASE("analyze: best-fit strategy discards minors that meet the real plane") {
    // f = (x1^2+x2^2)^2 with the identity psi: the minor 16(x1^2+x2^2)^2
    // has real trace {0} and verifies against Y = {0}; the minors with an
    // x1 or x2 factor vanish on a real axis and are rejected
    json doc = {{"variables", {"x1", "x2"}},
                {"f", "(x1^2+x2^2)^2"},
                {"psi", {"x1", "x2"}},
                {"Y", {{"pieces", json::array({{{"type", "origin"}}})}}},
                {"sequence", {{"family", "gevrey_log"}, {"alpha", 1}, {"beta", 0}}}};
    ProblemSpec spec = parse_config(doc).to_problem_spec();
    spec.strategy.kind = GStrategy::Kind::AllMinorsBestFit;
    spec.plan.radii = SamplePlan::geometric_radii(std::pow(2.0, -3), std::pow(2.0, -10),
                                                  std::pow(2.0, -0.5));
    spec.plan.directions = 16;
    DeterminacyReport rep = analyze(spec);
    REQUIRE(rep.status == AnalyzeStatus::Ok);
    CHECK(rep.chosen_g.find("16") != std::string::npos);
    CHECK(rep.s_round.value == doctest::Approx(1.0));
}

TEST_CASE("analyze: consistency with the closed-form table") {
    // alpha * s equals beta_table(alpha, mu) exactly after rounding
    for (double mu : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        DeterminacyReport rep = analyze(quartic_spec(mu, user_g("(x1^2+x2^4)^2")));
        REQUIRE(rep.status == AnalyzeStatus::Ok);
        REQUIRE(rep.s_round.rounded);
        double alpha = 2.0;
        double beta = alpha * rep.s_round.num / rep.s_round.den;
        CHECK(beta == doctest::Approx(beta_table(alpha, mu)).epsilon(1e-12));
    }
}

TEST_CASE("isolated pipeline: quartic germ with gamma = f") {
    SamplePlan plan = SamplePlan::defaults();
    plan.radii = SamplePlan::geometric_radii(std::pow(2.0, -3), std::pow(2.0, -12),
                                             std::pow(2.0, -0.5));
    plan.directions = 24;
    DeterminacyReport rep =
        isolated_pipeline(P2("(x1^2+x2^4)^2"), TameSequence::gevrey_log(1, 0),
                          P2("(x1^2+x2^4)^2"), plan);
    REQUIRE(rep.status == AnalyzeStatus::Ok);
    CHECK(std::abs(rep.fit.s_hat - 2.0) <= 0.2);
    CHECK(rep.s_round.value == doctest::Approx(2.0));
    CHECK(rep.target.family().alpha == doctest::Approx(2.0));
}

TEST_CASE("isolated pipeline: Morse germ keeps the class") {
    SamplePlan plan = SamplePlan::defaults();
    plan.radii = SamplePlan::geometric_radii(std::pow(2.0, -3), std::pow(2.0, -12),
                                             std::pow(2.0, -0.5));
    plan.directions = 24;
    DeterminacyReport rep = isolated_pipeline(P2("x1^2+x2^2"), TameSequence::gevrey_log(1, 0),
                                              P2("x1^2+x2^2"), plan);
    REQUIRE(rep.status == AnalyzeStatus::Ok);
    CHECK(rep.s_round.value == doctest::Approx(1.0));
    CHECK(rep.target.family().alpha == doctest::Approx(1.0));
}

TEST_CASE("isolated pipeline rejects gamma outside the Jacobian ideal") {
    DeterminacyReport rep = isolated_pipeline(P2("(x1^2+x2^4)^2"), TameSequence::gevrey_log(1, 0),
                                              P2("x1"), SamplePlan::defaults());
    CHECK(rep.status == AnalyzeStatus::GNotInIdeal);
}

TEST_CASE("isolated pipeline: derivative membership in K_f for the quartic germ") {
    Polynomial f = P2("(x1^2+x2^4)^2");
    std::vector<Polynomial> id_comps{P2("x1"), P2("x2")};
    FittingResult kf = kf_pipeline(MapGerm(id_comps), f);
    // n = 2: x_k^{n-2} df/dx_j = df/dx_j
    for (int j = 0; j < 2; ++j) CHECK(normal_form(derive(f, j), *kf.ideal).is_zero());
}

TEST_CASE("report rendering is stable and machine-checkable") {
    DeterminacyReport rep = analyze(quartic_spec(1.5, user_g("(x1^2+x2^4)^2")));
    std::string t1 = render_text(rep);
    std::string t2 = render_text(rep);
    CHECK(t1 == t2);
    CHECK(t1.find("status: ok") != std::string::npos);
    CHECK(t1.find("4/3") != std::string::npos);
    json j = render_json(rep);
    CHECK(j["status"] == "ok");
    CHECK(j["fit"]["s_num"] == 4);
    CHECK(j["fit"]["s_den"] == 3);
    CHECK(j["hypotheses"]["image_inclusion_ok"] == true);
}

TEST_CASE("log-corrected flatness set recovers the log exponent heuristically") {
    // Y arcs carry log(1+1/t)^nu; expect s ~ 2/mu and nu_hat ~ 2 nu / mu
    double mu = 1.5, nu = 1.0;
    json doc = {
        {"variables", {"x1", "x2"}},
        {"f", "(x1^2+x2^4)^2"},
        {"psi", {"x1", "x2"}},
        {"sequence", {{"family", "gevrey_log"}, {"alpha", 1}, {"beta", 0}}},
        {"branches",
         json::array({{{"params", {"w"}},
                       {"components", json::array({{{"re", "0"}, {"im", "w^2"}},
                                                   {{"re", "w"}, {"im", "0"}}})}},
                      {{"params", {"w"}},
                       {"components", json::array({{{"re", "0"}, {"im", "-w^2"}},
                                                   {{"re", "w"}, {"im", "0"}}})}}})},
        {"plan", {{"method", "parametrized"}, {"fit_log_correction", true}}},
    };
    doc["Y"] = {
        {"pieces",
         json::array(
             {{{"type", "arc"},
               {"components",
                json::array({{{"c", 1}, {"mu", mu}, {"logpow", nu}, {"sign", "both"}},
                             {{"c", 1}, {"mu", 1.0}, {"sign", "both"}}})}}})}};
    Config cfg = parse_config(doc);
    ProblemSpec spec = cfg.to_problem_spec();
    spec.strategy = user_g("(x1^2+x2^4)^2");
    spec.plan.fit_log_correction = true;
    DeterminacyReport rep = analyze(spec);
    REQUIRE(rep.has_fit);
    REQUIRE(rep.fit.nu_hat.has_value());
    double expect_nu = 2.0 * nu / mu;
    CHECK(std::abs(*rep.fit.nu_hat - expect_nu) <= 0.15 * expect_nu);
    // feeding (s, nu_hat) to the closed transform lands near (2a/mu, 2nu/mu)
    TameSequence target =
        mtheta_closed(TameSequence::gevrey_log(1, 0),
                      AdmissibleFunction{1.0, rep.s_round.value, *rep.fit.nu_hat});
    CHECK(target.family().alpha == doctest::Approx(2.0 / mu).epsilon(0.05));
    CHECK(target.family().beta == doctest::Approx(2.0 * nu / mu).epsilon(0.15));
}
