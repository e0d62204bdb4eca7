#include "detk/config.hpp"
#include "detk/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

using namespace detk;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string csv_path;
    bool as_json = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
    auto* c = cmd->add_option("--config", opts.config_path, "JSON problem description");
    if (config_required) c->required();
    cmd->add_option("--out", opts.out_path, "write the report to a file instead of stdout");
    cmd->add_option("--csv", opts.csv_path, "write (log r, log d) sample pairs as CSV");
    cmd->add_flag("--json", opts.as_json, "emit the report as JSON");
}

int emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(opts.out_path);
    if (!out) {
        std::cerr << "cannot open output file: " << opts.out_path << "\n";
        return 1;
    }
    out << text;
    return 0;
}

int emit_report(const CommonOpts& opts, const std::string& text, const json& j) {
    return emit(opts, opts.as_json ? j.dump(2) + "\n" : text);
}

int write_csv(const CommonOpts& opts, const ExponentFit& fit) {
    if (opts.csv_path.empty()) return 0;
    std::ofstream out(opts.csv_path);
    if (!out) {
        std::cerr << "cannot open CSV file: " << opts.csv_path << "\n";
        return 1;
    }
    out << render_fit_csv(fit);
    return 0;
}

const TameSequence& need_sequence(const Config& cfg) {
    if (!cfg.sequence) throw ConfigError("config needs a 'sequence' field");
    return *cfg.sequence;
}

int cmd_check_tame(const CommonOpts& opts, int jmax) {
    Config cfg = load_config(opts.config_path);
    const TameSequence& M = need_sequence(cfg);
    TameReport rep = check_tame(M, jmax);
    json j{{"ok", rep.ok},
           {"increasing", rep.increasing_ok},
           {"log_convex", rep.logconvex_ok},
           {"moderate_growth", rep.moderate_ok},
           {"A", rep.A},
           {"first_violation", rep.first_violation},
           {"violation", rep.violation}};
    int rc = emit_report(opts, M.describe() + "\n" + render_tame_text(rep), j);
    return rc != 0 ? rc : (rep.ok ? 0 : 2);
}

int cmd_check_nonqa(const CommonOpts& opts, int jmax) {
    Config cfg = load_config(opts.config_path);
    const TameSequence& M = need_sequence(cfg);
    NonQAReport rep = check_nonqa(M, jmax);
    json j{{"heuristic", rep.heuristic},
           {"partial_sum", rep.partial_sum},
           {"detail", rep.detail}};
    j["verdict"] = rep.verdict == QAVerdict::NonQuasianalytic ? "non-quasianalytic"
                   : rep.verdict == QAVerdict::Quasianalytic  ? "quasianalytic"
                                                              : "inconclusive";
    int rc = emit_report(opts, M.describe() + "\n" + render_nonqa_text(rep), j);
    if (rc != 0) return rc;
    return rep.verdict == QAVerdict::Quasianalytic ? 2 : 0;
}

int cmd_htheta(const CommonOpts& opts, int jmax) {
    Config cfg = load_config(opts.config_path);
    const TameSequence& M = need_sequence(cfg);
    if (!cfg.theta) throw ConfigError("htheta needs a 'theta' field");
    const AdmissibleFunction& th = *cfg.theta;

    auto adm = check_admissible(th, log_grid(1e-6, 0.3, 256));
    auto num = mtheta_numeric(M, th, jmax);

    std::ostringstream text;
    json j;
    text << "M = " << M.describe() << "\n";
    text << "theta: c=" << format_num(th.c) << " mu=" << format_num(th.mu)
         << " nu=" << format_num(th.nu) << "  admissible: " << (adm.ok ? "yes" : "NO") << "\n";
    j["admissible"] = adm.ok;
    j["s_bound"] = adm.s;
    if (M.is_gevrey_log()) {
        TameSequence closed = mtheta_closed(M, th);
        text << "closed form: " << closed.describe() << "\n";
        j["closed"] = closed.describe();
        auto cmp = compare_sequences(num.seq, closed, jmax);
        text << "numeric vs closed: max per-j ratio " << format_num(cmp.max_ratio) << " -> "
             << (cmp.equivalent ? "equivalent" : "NOT equivalent") << "\n";
        j["max_ratio"] = cmp.max_ratio;
        j["equivalent"] = cmp.equivalent;
    }
    json vals = json::array();
    text << "numeric M^(theta) (log values, j = 0.." << jmax << "):\n";
    for (int i = 0; i <= jmax; ++i) {
        vals.push_back(num.seq.log_at(i));
        text << "  j=" << i << "  log M_j = " << format_num(num.seq.log_at(i)) << "\n";
    }
    j["log_values"] = vals;
    if (!num.truncated_js.empty()) {
        text << "grid truncation at " << num.truncated_js.size() << " indices\n";
        j["truncated_indices"] = num.truncated_js;
    }
    return emit_report(opts, text.str(), j);
}

int cmd_primitive_check(const CommonOpts& opts) {
    Config cfg = load_config(opts.config_path);
    if (!cfg.f || !cfg.psi) throw ConfigError("primitive-check needs 'f' and 'psi'");
    Ideal I(cfg.psi->components);
    PrimitiveResult r = primitive_member(*cfg.f, I);
    std::ostringstream text;
    text << "f = " << cfg.f->str() << "\n";
    text << "primitive membership in <psi>: " << (r.member ? "yes" : "NO") << "\n";
    if (!r.member)
        text << "failing part: " << r.failed_part << ", witness remainder " << r.witness.str()
             << "\n";
    json j{{"member", r.member}, {"failed_part", r.failed_part}};
    if (!r.member) j["witness"] = r.witness.str();
    int rc = emit_report(opts, text.str(), j);
    return rc != 0 ? rc : (r.member ? 0 : 2);
}

int cmd_fitting(const CommonOpts& opts) {
    Config cfg = load_config(opts.config_path);
    if (!cfg.psi) throw ConfigError("fitting needs 'psi'");
    try {
        FittingResult res = cfg.f ? kf_pipeline(*cfg.psi, *cfg.f)
                                  : (cfg.phi ? fitting_ideal(*cfg.psi, *cfg.phi)
                                             : throw ConfigError("fitting needs 'f' or 'phi'"));
        json j;
        j["minors"] = json::array();
        for (const auto& m : res.minor_list) j["minors"].push_back(m.str());
        j["basis"] = json::array();
        for (const auto& b : res.ideal->basis()) j["basis"].push_back(b.str());
        j["unit_ideal"] = res.ideal->is_unit();
        j["lifts"] = json::array();
        for (const auto& h : res.lifts) j["lifts"].push_back(h.str());
        j["relations"] = json::array();
        for (const auto& k : res.relations) j["relations"].push_back(k.str());
        return emit_report(opts, render_fitting_text(res), j);
    } catch (const NotPrimitiveError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const NotInIdealError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const DegenerateIdealError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}

int cmd_loja_fit(const CommonOpts& opts) {
    Config cfg = load_config(opts.config_path);
    if (!cfg.g || !cfg.Y) throw ConfigError("loja-fit needs 'g' and 'Y'");
    VarietyDescriptor V{*cfg.g, cfg.branches};
    try {
        ExponentFit fit = fit_separation(V, *cfg.Y, cfg.plan);
        int rc = write_csv(opts, fit);
        if (rc != 0) return rc;
        auto round = round_rational(fit.s_hat);
        std::ostringstream text;
        text << "g = " << cfg.g->str() << "\n" << render_fit_text(fit);
        if (round.rounded)
            text << "rounded exponent: " << round.num << "/" << round.den << "\n";
        json j = render_fit_json(fit);
        j["g"] = cfg.g->str();
        if (round.rounded) {
            j["s_num"] = round.num;
            j["s_den"] = round.den;
        }
        return emit_report(opts, text.str(), j);
    } catch (const InsufficientDataError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}

int cmd_analyze(const CommonOpts& opts) {
    Config cfg = load_config(opts.config_path);
    DeterminacyReport rep = analyze(cfg.to_problem_spec());
    if (rep.has_fit) {
        int rc = write_csv(opts, rep.fit);
        if (rc != 0) return rc;
    }
    int rc = emit_report(opts, render_text(rep), render_json(rep));
    return rc != 0 ? rc : (rep.status == AnalyzeStatus::Ok ? 0 : 2);
}

int cmd_isolated(const CommonOpts& opts) {
    Config cfg = load_config(opts.config_path);
    if (!cfg.f || !cfg.gamma) throw ConfigError("isolated needs 'f' and 'gamma'");
    TameSequence M = cfg.sequence ? *cfg.sequence : TameSequence::gevrey_log(1, 0);
    DeterminacyReport rep = isolated_pipeline(*cfg.f, M, *cfg.gamma, cfg.plan, cfg.jmax);
    if (rep.has_fit) {
        int rc = write_csv(opts, rep.fit);
        if (rc != 0) return rc;
    }
    int rc = emit_report(opts, render_text(rep), render_json(rep));
    return rc != 0 ? rc : (rep.status == AnalyzeStatus::Ok ? 0 : 2);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fitting ideals, Lojasiewicz separation and Denjoy-Carleman determinacy classes "
                 "for polynomial germs with prescribed singular locus"};
    app.require_subcommand(1);

    CommonOpts tame_o, nonqa_o, htheta_o, prim_o, fit_o, loja_o, an_o, iso_o;
    int tame_jmax = 50, nonqa_jmax = 2000, htheta_jmax = 40;
    double bt_alpha = 1.0, bt_mu = 1.0;

    auto* tame = app.add_subcommand("check-tame", "verify tameness of a sequence");
    add_common(tame, tame_o);
    tame->add_option("--jmax", tame_jmax, "verification range");

    auto* nonqa = app.add_subcommand("check-nonqa", "non-quasianalyticity verdict");
    add_common(nonqa, nonqa_o);
    nonqa->add_option("--jmax", nonqa_jmax, "partial-sum range");

    auto* hth = app.add_subcommand("htheta", "numeric M^(theta) vs the closed form");
    add_common(hth, htheta_o);
    hth->add_option("--jmax", htheta_jmax, "output index range");

    auto* fit = app.add_subcommand("fitting", "Fitting ideal of (psi, f) or (psi, phi)");
    add_common(fit, fit_o);

    auto* prim = app.add_subcommand("primitive-check", "f in the primitive ideal of <psi>");
    add_common(prim, prim_o);

    auto* loja = app.add_subcommand("loja-fit", "fit the separation exponent for g and Y");
    add_common(loja, loja_o);

    auto* an = app.add_subcommand("analyze", "full determinacy pipeline");
    add_common(an, an_o);

    auto* iso = app.add_subcommand("isolated", "identity-psi pipeline with g = |x|^{2n} gamma");
    add_common(iso, iso_o);

    auto* bt = app.add_subcommand("beta-table", "closed-form exponent for the quartic geometry");
    bt->add_option("--alpha", bt_alpha, "Gevrey index of the perturbation class")->required();
    bt->add_option("--mu", bt_mu, "flatness-set exponent")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (tame->parsed()) return cmd_check_tame(tame_o, tame_jmax);
        if (nonqa->parsed()) return cmd_check_nonqa(nonqa_o, nonqa_jmax);
        if (hth->parsed()) return cmd_htheta(htheta_o, htheta_jmax);
        if (fit->parsed()) return cmd_fitting(fit_o);
        if (prim->parsed()) return cmd_primitive_check(prim_o);
        if (loja->parsed()) return cmd_loja_fit(loja_o);
        if (an->parsed()) return cmd_analyze(an_o);
        if (iso->parsed()) return cmd_isolated(iso_o);
        if (bt->parsed()) {
            std::cout << format_num(beta_table(bt_alpha, bt_mu)) << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "polynomial parse error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 1;
}
