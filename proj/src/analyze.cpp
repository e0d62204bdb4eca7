#include "detk/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace detk {

std::string GStrategy::name() const {
    switch (kind) {
        case Kind::LowestDegreeMinor: return "lowest-degree-minor";
        case Kind::UserSupplied: return "user-supplied";
        case Kind::AllMinorsBestFit: return "all-minors-best-fit";
    }
    return "?";
}

std::string to_string(AnalyzeStatus s) {
    switch (s) {
        case AnalyzeStatus::Ok: return "ok";
        case AnalyzeStatus::NotPrimitive: return "not-primitive";
        case AnalyzeStatus::SequenceRejected: return "sequence-rejected";
        case AnalyzeStatus::DegenerateIdeal: return "degenerate-ideal";
        case AnalyzeStatus::GNotInIdeal: return "g-not-in-ideal";
        case AnalyzeStatus::InsufficientData: return "insufficient-data";
        case AnalyzeStatus::SeparationUnverified: return "separation-unverified";
    }
    return "?";
}

RationalRounding round_rational(double s, int max_den, double window) {
    RationalRounding best;
    best.value = s;
    double best_err = window;
    for (int q = 1; q <= max_den; ++q) {
        long p = std::lround(s * q);
        double err = std::abs(s - static_cast<double>(p) / q);
        if (err < best_err - 1e-15) {
            best_err = err;
            best.rounded = true;
            best.num = p;
            best.den = q;
            best.value = static_cast<double>(p) / q;
        }
    }
    return best;
}

double beta_table(double alpha, double mu) {
    if (!(alpha > 0) || !(mu > 0)) throw Error("beta_table needs positive alpha and mu");
    if (mu <= 1.0) return 2.0 * alpha;
    if (mu <= 2.0) return 2.0 * alpha / mu;
    return alpha;
}

namespace {

std::string fnum(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

SamplePlan fresh_plan(const SamplePlan& plan) {
    SamplePlan fresh = plan;
    fresh.seed = plan.seed + 1;
    fresh.radii.clear();
    const double shift = std::pow(2.0, -1.0 / 8.0);
    for (std::size_t i = 0; i < plan.radii.size(); i += 2)
        fresh.radii.push_back(plan.radii[i] * shift);
    if (fresh.radii.empty()) fresh.radii = plan.radii;
    return fresh;
}

void run_sequence_checks(const TameSequence& M, DeterminacyReport& rep) {
    rep.m_desc = M.describe();
    rep.tame = check_tame(M, std::min(50, M.max_j()));
    rep.nonqa = check_nonqa(M, std::min(2000, M.max_j() - 1));
    if (rep.nonqa.heuristic)
        rep.warnings.push_back("non-quasianalyticity verdict is heuristic (tabulated sequence)");
}

bool sequence_acceptable(const DeterminacyReport& rep) {
    return rep.tame.ok && rep.nonqa.verdict != QAVerdict::Quasianalytic;
}

struct GChoice {
    Polynomial g;
    bool have_fit = false;
    ExponentFit fit;
};

// Branch parametrizations must actually land on Z_g: sample each branch on
// a deterministic parameter set and test the residual bound.
bool branches_cover(const Polynomial& g, const std::vector<BranchMap>& branches) {
    int deg = std::max(g.total_degree(), 1);
    for (const auto& br : branches) {
        std::uint64_t state = 0x9e3779b97f4a7c15ull;
        auto unif = [&state]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return (double)(state >> 11) * 0x1.0p-53 * 2.0 - 1.0;
        };
        for (int k = 0; k < 32; ++k) {
            std::vector<std::complex<double>> w(br.nparams());
            for (auto& wi : w) wi = std::complex<double>(unif() * br.box, unif() * br.box);
            ComplexPoint z = br.eval(w);
            double nz = 0;
            for (const auto& zi : z.z) nz += std::norm(zi);
            double bound = 1e-9 * std::pow(1.0 + std::sqrt(nz), deg);
            if (std::abs(evaluate(g, z)) > bound) return false;
        }
    }
    return true;
}

} // namespace

DeterminacyReport analyze(const ProblemSpec& spec) {
    DeterminacyReport rep;
    rep.strategy_name = spec.strategy.name();

    run_sequence_checks(spec.M, rep);

    Ideal psi_ideal(spec.psi.components);
    rep.f_in_psi = normal_form(spec.f, psi_ideal).is_zero();
    PrimitiveResult prim = primitive_member(spec.f, psi_ideal);
    rep.grad_in_psi = prim.member || prim.failed_part != "f";
    if (!prim.member) {
        rep.status = AnalyzeStatus::NotPrimitive;
        rep.primitive_witness = prim.failed_part + " -> " + prim.witness.str();
        rep.failure_detail = "f is not in the primitive ideal of <psi>: " + rep.primitive_witness;
        if (prim.failed_part != "f") rep.grad_in_psi = false;
        return rep;
    }

    if (!sequence_acceptable(rep)) {
        rep.status = AnalyzeStatus::SequenceRejected;
        rep.failure_detail = rep.tame.ok
                                 ? "sequence is quasianalytic: flat perturbations are trivial"
                                 : "sequence is not tame: " + rep.tame.violation;
        return rep;
    }

    try {
        rep.fitting = std::make_shared<FittingResult>(kf_pipeline(spec.psi, spec.f));
    } catch (const DegenerateIdealError& e) {
        rep.status = AnalyzeStatus::DegenerateIdeal;
        rep.failure_detail = e.what();
        return rep;
    }
    const FittingResult& kf = *rep.fitting;

    // inclusion K <psi> inside <grad f>, checked on every generator pair
    Ideal grad_ideal(kf.phi.components);
    rep.dol_ok = true;
    for (const auto& m : kf.minor_list)
        for (const auto& psi_i : spec.psi.components) {
            ++rep.dol_checked;
            if (!normal_form(m * psi_i, grad_ideal).is_zero()) rep.dol_ok = false;
        }
    if (!rep.dol_ok) rep.warnings.push_back("image inclusion K*psi in <grad f> failed (unexpected)");

    rep.kf_is_unit = kf.ideal->is_unit();
    if (rep.kf_is_unit) {
        // no separation constraint: empty zero set, theta = identity
        rep.chosen_g = "1";
        rep.has_theta = true;
        rep.theta = AdmissibleFunction{1.0, 1.0, 0.0};
        rep.has_target = true;
        rep.target = spec.M;
        rep.target_desc = spec.M.describe();
        rep.verify.ok = true;
        rep.has_verify = true;
        rep.conclusion = "f + int<psi>*m^inf_{Y,M} subset f o R_{M^(theta)} with M^(theta) = M "
                         "(unit ideal: no separation constraint)";
        return rep;
    }

    // Config branches describe the zero set of the user-supplied g only; a
    // strategy that picks some other generator must not inherit them (they
    // could parametrize a strict subset of the new zero set and inflate the
    // distances), so minor-selection strategies run on the penalty method.
    SamplePlan minor_plan = spec.plan;
    minor_plan.dist.method = DistMethod::Penalty;

    // g selection
    GChoice choice;
    switch (spec.strategy.kind) {
        case GStrategy::Kind::UserSupplied: {
            if (!spec.strategy.user_g) throw ConfigError("strategy user-supplied needs g");
            choice.g = *spec.strategy.user_g;
            break;
        }
        case GStrategy::Kind::LowestDegreeMinor: {
            std::size_t best = 0;
            for (std::size_t i = 1; i < kf.minor_list.size(); ++i)
                if (kf.minor_list[i].total_degree() < kf.minor_list[best].total_degree()) best = i;
            choice.g = kf.minor_list[best];
            break;
        }
        case GStrategy::Kind::AllMinorsBestFit: {
            bool found = false;
            for (const auto& m : kf.minor_list) {
                VarietyDescriptor V{m, {}};
                ExponentFit f;
                try {
                    f = fit_separation(V, spec.Y, minor_plan);
                } catch (const InsufficientDataError&) {
                    continue;
                }
                AdmissibleFunction th{f.c_hat / 2.0, f.s_hat, 0.0};
                VerifyReport v = verify_separation(V, spec.Y, th, fresh_plan(minor_plan));
                if (!v.ok) continue;
                if (!found || f.s_hat < choice.fit.s_hat) {
                    found = true;
                    choice.g = m;
                    choice.fit = f;
                    choice.have_fit = true;
                }
            }
            if (!found) {
                rep.status = AnalyzeStatus::SeparationUnverified;
                rep.failure_detail = "no minor produced a verifiable separation inequality";
                return rep;
            }
            break;
        }
    }
    rep.chosen_g = choice.g.str();

    MemberResult member = ideal_member(choice.g, *kf.ideal);
    if (!member.member) {
        rep.status = AnalyzeStatus::GNotInIdeal;
        rep.failure_detail =
            "chosen g is not in K_f; witness remainder " + member.cert.remainder.str();
        return rep;
    }
    for (const auto& c : member.cert.cofactors.entries) rep.g_certificate.push_back(c.str());

    bool use_branches =
        spec.strategy.kind == GStrategy::Kind::UserSupplied && !spec.branches.empty();
    if (use_branches && !branches_cover(choice.g, spec.branches))
        throw ConfigError("branch parametrizations do not lie on the zero set of g");
    VarietyDescriptor V{choice.g, use_branches ? spec.branches : std::vector<BranchMap>{}};
    SamplePlan plan = spec.strategy.kind == GStrategy::Kind::UserSupplied ? spec.plan : minor_plan;
    if (use_branches && plan.dist.method == DistMethod::Penalty)
        rep.warnings.push_back("branches provided but the penalty method is selected");

    if (choice.have_fit)
        rep.fit = choice.fit;
    else {
        try {
            rep.fit = fit_separation(V, spec.Y, plan);
        } catch (const InsufficientDataError& e) {
            rep.status = AnalyzeStatus::InsufficientData;
            rep.failure_detail = e.what();
            return rep;
        }
    }
    rep.has_fit = true;
    if (rep.fit.clamped)
        rep.warnings.push_back("raw envelope slope " + fnum(rep.fit.raw_slope) +
                               " clamped to 1 (admissibility)");

    rep.s_round = round_rational(rep.fit.s_hat);
    double s = rep.s_round.value;

    rep.theta = AdmissibleFunction{rep.fit.c_hat / 2.0, s, 0.0};
    if (plan.fit_log_correction && rep.fit.nu_hat && *rep.fit.nu_hat > 0.05)
        rep.theta.nu = *rep.fit.nu_hat;
    rep.has_theta = true;
    auto adm = check_admissible(rep.theta, log_grid(1e-6, 0.3, 128));
    if (!adm.ok) rep.warnings.push_back("fitted theta failed admissibility: " + adm.violation);

    rep.verify = verify_separation(V, spec.Y, rep.theta, fresh_plan(plan));
    rep.has_verify = true;
    if (!rep.verify.ok) {
        rep.status = AnalyzeStatus::SeparationUnverified;
        std::ostringstream d;
        d << "separation check failed: worst margin " << fnum(rep.verify.worst_margin)
          << " at r=" << fnum(rep.verify.worst_r) << ", d=" << fnum(rep.verify.worst_d);
        rep.failure_detail = d.str();
        return rep;
    }

    if (spec.M.is_gevrey_log()) {
        rep.target = mtheta_closed(spec.M, rep.theta);
    } else {
        auto num = mtheta_numeric(spec.M, rep.theta, spec.jmax);
        rep.target = num.seq;
        if (!num.truncated_js.empty())
            rep.warnings.push_back("numeric M^(theta) hit the grid boundary for " +
                                   std::to_string(num.truncated_js.size()) + " indices");
    }
    rep.has_target = true;
    rep.target_desc = rep.target.describe();

    std::ostringstream c;
    c << "f + int<psi>*m^inf_{Y,M} subset f o R_{M^(theta)}  [separation corroborated on "
      << rep.verify.checked << " fresh samples; sampling cannot prove the germ inequality]";
    rep.conclusion = c.str();
    return rep;
}

DeterminacyReport isolated_pipeline(const Polynomial& f, const TameSequence& M,
                                    const Polynomial& gamma, const SamplePlan& plan, int jmax) {
    DeterminacyReport rep;
    rep.strategy_name = "isolated (psi = identity)";
    run_sequence_checks(M, rep);

    std::size_t n = f.nvars();
    std::vector<Polynomial> id_comps;
    for (std::size_t i = 0; i < n; ++i) id_comps.push_back(Polynomial::variable(f.vars(), i));
    MapGerm psi(id_comps);

    std::vector<Polynomial> grad_comps;
    for (std::size_t i = 0; i < n; ++i) grad_comps.push_back(derive(f, i));
    Ideal grad_ideal(grad_comps);
    MemberResult gm = ideal_member(gamma, grad_ideal);
    if (!gm.member) {
        rep.status = AnalyzeStatus::GNotInIdeal;
        rep.failure_detail =
            "gamma is not in the Jacobian ideal; witness " + gm.cert.remainder.str();
        return rep;
    }

    Ideal psi_ideal(id_comps);
    PrimitiveResult prim = primitive_member(f, psi_ideal);
    rep.f_in_psi = normal_form(f, psi_ideal).is_zero();
    rep.grad_in_psi = prim.member;
    if (!prim.member) {
        rep.status = AnalyzeStatus::NotPrimitive;
        rep.primitive_witness = prim.failed_part + " -> " + prim.witness.str();
        rep.failure_detail = "f does not vanish to second order at 0: " + rep.primitive_witness;
        return rep;
    }

    if (!sequence_acceptable(rep)) {
        rep.status = AnalyzeStatus::SequenceRejected;
        rep.failure_detail = rep.tame.ok ? "sequence is quasianalytic"
                                         : "sequence is not tame: " + rep.tame.violation;
        return rep;
    }

    rep.fitting = std::make_shared<FittingResult>(kf_pipeline(psi, f));
    const FittingResult& kf = *rep.fitting;
    rep.kf_is_unit = kf.ideal->is_unit();

    // g = |x|^{2n} gamma
    Polynomial r2 = Polynomial::zero(f.vars());
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial xi = Polynomial::variable(f.vars(), i);
        r2 = r2 + xi * xi;
    }
    Polynomial g = r2.pow(static_cast<unsigned>(n)) * gamma;
    rep.chosen_g = g.str();

    MemberResult member = ideal_member(g, *kf.ideal);
    if (!member.member) {
        rep.status = AnalyzeStatus::GNotInIdeal;
        rep.failure_detail = "|x|^{2n} gamma is not in K_f over the polynomial ring; witness " +
                             member.cert.remainder.str();
        return rep;
    }
    for (const auto& c : member.cert.cofactors.entries) rep.g_certificate.push_back(c.str());

    VarietyDescriptor V{g, {}};
    SetDescriptor Y = SetDescriptor::origin();
    try {
        rep.fit = fit_separation(V, Y, plan);
    } catch (const InsufficientDataError& e) {
        rep.status = AnalyzeStatus::InsufficientData;
        rep.failure_detail = e.what();
        return rep;
    }
    rep.has_fit = true;
    rep.s_round = round_rational(rep.fit.s_hat);
    rep.theta = AdmissibleFunction{rep.fit.c_hat / 2.0, rep.s_round.value, 0.0};
    rep.has_theta = true;

    rep.verify = verify_separation(V, Y, rep.theta, fresh_plan(plan));
    rep.has_verify = true;
    if (!rep.verify.ok) {
        rep.status = AnalyzeStatus::SeparationUnverified;
        rep.failure_detail = "separation check failed with worst margin " +
                             fnum(rep.verify.worst_margin);
        return rep;
    }

    if (M.is_gevrey_log())
        rep.target = mtheta_closed(M, rep.theta);
    else
        rep.target = mtheta_numeric(M, rep.theta, jmax).seq;
    rep.has_target = true;
    rep.target_desc = rep.target.describe();
    std::ostringstream c;
    c << "f + m^inf_M subset f o R_{M^s} with s = " << fnum(rep.s_round.value)
      << "  [separation corroborated on " << rep.verify.checked
      << " fresh samples; sampling cannot prove the germ inequality]";
    rep.conclusion = c.str();
    return rep;
}

} // namespace detk
