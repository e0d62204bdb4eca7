#include "detk/report.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace detk {

using nlohmann::json;

std::string format_num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace {
const char* yn(bool b) { return b ? "pass" : "FAIL"; }
} // namespace

std::string render_tame_text(const TameReport& rep) {
    std::ostringstream out;
    out << "tame check: " << (rep.ok ? "ok" : "violated") << "\n";
    out << "  increasing (M_0 = 1): " << yn(rep.increasing_ok) << "\n";
    out << "  log-convex ratios:    " << yn(rep.logconvex_ok) << "\n";
    out << "  moderate growth:      " << yn(rep.moderate_ok);
    if (rep.moderate_ok) out << "  (A = " << format_num(rep.A) << ")";
    out << "\n";
    if (!rep.ok)
        out << "  first violation at j = " << rep.first_violation << ": " << rep.violation << "\n";
    return out.str();
}

std::string render_nonqa_text(const NonQAReport& rep) {
    std::ostringstream out;
    out << "non-quasianalyticity: ";
    switch (rep.verdict) {
        case QAVerdict::NonQuasianalytic: out << "non-quasianalytic"; break;
        case QAVerdict::Quasianalytic: out << "quasianalytic"; break;
        case QAVerdict::Inconclusive: out << "inconclusive"; break;
    }
    if (rep.heuristic) out << " (heuristic)";
    out << "\n  " << rep.detail << "\n  partial sums:";
    for (const auto& [j, s] : rep.checkpoints)
        out << "  S(" << j << ") = " << format_num(s);
    out << "\n  final partial sum " << format_num(rep.partial_sum) << "\n";
    return out.str();
}

std::string render_fit_text(const ExponentFit& fit) {
    std::ostringstream out;
    out << "separation fit: s_hat = " << format_num(fit.s_hat)
        << "  c_hat = " << format_num(fit.c_hat) << "\n";
    out << "  raw slope " << format_num(fit.raw_slope) << (fit.clamped ? " (clamped to 1)" : "")
        << ", rms residual " << format_num(fit.residual) << ", bins used " << fit.bins_used
        << ", samples " << fit.samples.size() << "\n";
    if (fit.nu_hat) out << "  log-correction nu_hat = " << format_num(*fit.nu_hat) << "\n";
    return out.str();
}

json render_fit_json(const ExponentFit& fit) {
    json j;
    j["s_hat"] = fit.s_hat;
    j["raw_slope"] = fit.raw_slope;
    j["c_hat"] = fit.c_hat;
    j["clamped"] = fit.clamped;
    j["residual"] = fit.residual;
    j["bins_used"] = fit.bins_used;
    j["sample_count"] = fit.samples.size();
    if (fit.nu_hat) j["nu_hat"] = *fit.nu_hat;
    return j;
}

std::string render_fit_csv(const ExponentFit& fit) {
    std::ostringstream out;
    out << "log_r,log_d,is_envelope\n";
    auto on_envelope = [&](double lr, double ld) {
        for (const auto& [er, ed] : fit.envelope)
            if (er == lr && ed == ld) return 1;
        return 0;
    };
    for (const auto& [lr, ld] : fit.samples) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%d\n", lr, ld, on_envelope(lr, ld));
        out << buf;
    }
    return out.str();
}

std::string render_fitting_text(const FittingResult& res) {
    std::ostringstream out;
    out << "psi = (";
    for (std::size_t i = 0; i < res.psi.size(); ++i)
        out << (i ? ", " : "") << res.psi.components[i].str();
    out << ")\nphi = (";
    for (std::size_t i = 0; i < res.phi.size(); ++i)
        out << (i ? ", " : "") << res.phi.components[i].str();
    out << ")\n";
    out << "lifts:\n";
    for (const auto& h : res.lifts) out << "  " << h.str() << "\n";
    out << "relations:\n";
    for (const auto& k : res.relations) out << "  " << k.str() << "\n";
    out << "lambda is " << res.lambda->rows() << " x " << res.lambda->cols() << "\n";
    out << "nonzero maximal minors (" << res.minor_list.size() << "):\n";
    for (const auto& m : res.minor_list) out << "  " << m.str() << "\n";
    if (res.ideal) {
        out << "reduced basis of K (" << res.ideal->basis().size() << "):\n";
        for (const auto& b : res.ideal->basis()) out << "  " << b.str() << "\n";
        if (res.ideal->is_unit()) out << "K is the unit ideal\n";
    }
    return out.str();
}

std::string render_text(const DeterminacyReport& rep) {
    std::ostringstream out;
    out << "== determinacy analysis ==\n";
    out << "status: " << to_string(rep.status) << "\n";
    if (!rep.failure_detail.empty()) out << "detail: " << rep.failure_detail << "\n";
    out << "strategy: " << rep.strategy_name << "\n";
    out << "\n[sequence]\n";
    out << "M = " << rep.m_desc << "\n";
    out << render_tame_text(rep.tame);
    out << render_nonqa_text(rep.nonqa);

    out << "\n[hypotheses]\n";
    out << "f in <psi>:        " << yn(rep.f_in_psi) << "\n";
    out << "grad f in <psi>:   " << yn(rep.grad_in_psi) << "\n";
    if (!rep.primitive_witness.empty()) out << "witness: " << rep.primitive_witness << "\n";
    if (rep.dol_checked > 0)
        out << "K*psi_i in <grad f>: " << yn(rep.dol_ok) << "  (" << rep.dol_checked
            << " products)\n";

    if (rep.fitting) {
        out << "\n[fitting]\n";
        out << "K_f generators (" << rep.fitting->minor_list.size() << "):\n";
        for (const auto& m : rep.fitting->minor_list) out << "  " << m.str() << "\n";
        if (rep.kf_is_unit) out << "K_f is the unit ideal\n";
    }
    if (!rep.chosen_g.empty()) {
        out << "chosen g = " << rep.chosen_g << "\n";
        if (!rep.g_certificate.empty()) {
            out << "membership certificate (cofactors over the generators):\n";
            for (const auto& c : rep.g_certificate) out << "  " << c << "\n";
        }
    }

    if (rep.has_fit) {
        out << "\n[separation]\n";
        out << render_fit_text(rep.fit);
        if (rep.s_round.rounded)
            out << "rounded exponent s = " << rep.s_round.num << "/" << rep.s_round.den << " = "
                << format_num(rep.s_round.value) << "\n";
        else
            out << "exponent kept unrounded: s = " << format_num(rep.s_round.value) << "\n";
    }
    if (rep.has_theta) {
        out << "theta(t) = " << format_num(rep.theta.c) << " * t^" << format_num(rep.theta.mu);
        if (rep.theta.nu != 0.0) out << " * log(1+1/t)^-" << format_num(rep.theta.nu);
        out << "\n";
    }
    if (rep.has_verify) {
        out << "fresh-sample check: " << (rep.verify.ok ? "ok" : "VIOLATED") << " ("
            << rep.verify.checked << " samples";
        if (std::isfinite(rep.verify.worst_margin))
            out << ", worst log-margin " << format_num(rep.verify.worst_margin);
        out << ")\n";
    }

    if (rep.has_target) {
        out << "\n[conclusion]\n";
        out << "M^(theta) = " << rep.target_desc << "\n";
        out << rep.conclusion << "\n";
    }
    if (!rep.warnings.empty()) {
        out << "\n[warnings]\n";
        for (const auto& w : rep.warnings) out << "- " << w << "\n";
    }
    return out.str();
}

json render_json(const DeterminacyReport& rep) {
    json j;
    j["status"] = to_string(rep.status);
    j["failure_detail"] = rep.failure_detail;
    j["strategy"] = rep.strategy_name;
    j["sequence"] = {{"description", rep.m_desc},
                     {"tame", rep.tame.ok},
                     {"moderate_constant", rep.tame.A},
                     {"nonqa_heuristic", rep.nonqa.heuristic},
                     {"nonqa_partial_sum", rep.nonqa.partial_sum}};
    switch (rep.nonqa.verdict) {
        case QAVerdict::NonQuasianalytic: j["sequence"]["nonqa"] = "non-quasianalytic"; break;
        case QAVerdict::Quasianalytic: j["sequence"]["nonqa"] = "quasianalytic"; break;
        case QAVerdict::Inconclusive: j["sequence"]["nonqa"] = "inconclusive"; break;
    }
    j["hypotheses"] = {{"f_in_psi", rep.f_in_psi},
                       {"grad_in_psi", rep.grad_in_psi},
                       {"primitive_witness", rep.primitive_witness},
                       {"image_inclusion_ok", rep.dol_ok},
                       {"image_inclusion_checked", rep.dol_checked}};
    if (rep.fitting) {
        json gens = json::array();
        for (const auto& m : rep.fitting->minor_list) gens.push_back(m.str());
        j["kf"] = {{"generators", gens}, {"unit_ideal", rep.kf_is_unit}};
        json basis = json::array();
        for (const auto& b : rep.fitting->ideal->basis()) basis.push_back(b.str());
        j["kf"]["reduced_basis"] = basis;
    }
    j["chosen_g"] = rep.chosen_g;
    j["g_certificate"] = rep.g_certificate;
    if (rep.has_fit) {
        j["fit"] = render_fit_json(rep.fit);
        j["fit"]["s_rounded"] = rep.s_round.value;
        j["fit"]["rounded"] = rep.s_round.rounded;
        if (rep.s_round.rounded) {
            j["fit"]["s_num"] = rep.s_round.num;
            j["fit"]["s_den"] = rep.s_round.den;
        }
    }
    if (rep.has_theta) j["theta"] = {{"c", rep.theta.c}, {"mu", rep.theta.mu}, {"nu", rep.theta.nu}};
    if (rep.has_verify)
        j["verify"] = {{"ok", rep.verify.ok},
                       {"checked", rep.verify.checked},
                       {"worst_margin", std::isfinite(rep.verify.worst_margin)
                                            ? json(rep.verify.worst_margin)
                                            : json()}};
    if (rep.has_target) j["target"] = rep.target_desc;
    j["warnings"] = rep.warnings;
    j["conclusion"] = rep.conclusion;
    return j;
}

} // namespace detk
