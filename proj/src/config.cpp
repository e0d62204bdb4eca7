#include "detk/config.hpp"

#include "detk/parse.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace detk {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw ConfigError("config: " + msg); }

Polynomial poly_field(const json& j, const std::string& key, const VarList& vars) {
    if (!j.at(key).is_string()) bad("field '" + key + "' must be a polynomial string");
    return parse_poly(j.at(key).get<std::string>(), vars);
}

SetDescriptor parse_set(const json& j, const VarList& vars) {
    if (!j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty())
        bad("Y needs a non-empty 'pieces' array");
    SetDescriptor Y;
    for (const auto& pj : j["pieces"]) {
        std::string type = pj.at("type").get<std::string>();
        if (type == "origin") {
            Y.pieces.push_back(SetDescriptor::origin().pieces[0]);
        } else if (type == "subspace") {
            std::vector<int> vanish;
            for (const auto& v : pj.at("vanishing")) {
                if (v.is_string()) {
                    std::string name = v.get<std::string>();
                    auto it = std::find(vars->begin(), vars->end(), name);
                    if (it == vars->end()) bad("unknown variable in subspace: " + name);
                    vanish.push_back(static_cast<int>(it - vars->begin()));
                } else {
                    int idx = v.get<int>() - 1; // variables are 1-based in configs
                    if (idx < 0 || idx >= static_cast<int>(vars->size()))
                        bad("subspace index out of range");
                    vanish.push_back(idx);
                }
            }
            Y.pieces.push_back(SetDescriptor::subspace(std::move(vanish)).pieces[0]);
        } else if (type == "arc") {
            ArcPiece arc;
            for (const auto& cj : pj.at("components")) {
                ArcComponent c;
                c.c = cj.value("c", 0.0);
                c.mu = cj.value("mu", 1.0);
                c.logpow = cj.value("logpow", 0.0);
                std::string sign = cj.value("sign", "both");
                if (sign == "both")
                    c.sign_both = true;
                else if (sign == "plus")
                    c.sign_both = false;
                else if (sign == "minus") {
                    c.sign_both = false;
                    c.c = -c.c;
                } else
                    bad("arc sign must be both/plus/minus");
                arc.comps.push_back(c);
            }
            if (arc.comps.size() != vars->size())
                bad("arc needs one component per variable");
            arc.tmax = pj.value("tmax", 1.0);
            Y.pieces.push_back(SetDescriptor::arc(std::move(arc)).pieces[0]);
        } else {
            bad("unknown Y piece type: " + type);
        }
    }
    return Y;
}

TameSequence parse_sequence(const json& j) {
    std::string family = j.value("family", "gevrey_log");
    if (family == "gevrey_log")
        return TameSequence::gevrey_log(j.value("alpha", 0.0), j.value("beta", 0.0));
    if (family == "tabulated") {
        if (!j.contains("values")) bad("tabulated sequence needs 'values'");
        return TameSequence::tabulated(j["values"].get<std::vector<double>>());
    }
    bad("unknown sequence family: " + family);
}

AdmissibleFunction parse_theta(const json& j) {
    AdmissibleFunction th;
    th.c = j.value("c", 1.0);
    th.mu = j.value("mu", 1.0);
    th.nu = j.value("nu", 0.0);
    return th;
}

std::vector<BranchMap> parse_branches(const json& j, std::size_t n) {
    std::vector<BranchMap> out;
    for (const auto& bj : j) {
        BranchMap b;
        std::vector<std::string> pnames = bj.at("params").get<std::vector<std::string>>();
        b.params = make_vars(pnames);
        for (const auto& cj : bj.at("components")) {
            Polynomial re = parse_poly(cj.value("re", "0"), b.params);
            Polynomial im = parse_poly(cj.value("im", "0"), b.params);
            b.components.emplace_back(std::move(re), std::move(im));
        }
        if (b.components.size() != n) bad("branch needs one component per variable");
        b.box = bj.value("box", 1.0);
        out.push_back(std::move(b));
    }
    return out;
}

SamplePlan parse_plan(const json& j, SamplePlan plan) {
    if (j.contains("r_hi") || j.contains("r_lo") || j.contains("ratio")) {
        double hi = j.value("r_hi", std::pow(2.0, -4));
        double lo = j.value("r_lo", std::pow(2.0, -18));
        double ratio = j.value("ratio", std::pow(2.0, -0.25));
        plan.radii = SamplePlan::geometric_radii(hi, lo, ratio);
    }
    plan.directions = j.value("directions", plan.directions);
    plan.seed = j.value("seed", plan.seed);
    plan.include_axes = j.value("include_axes", plan.include_axes);
    plan.include_axis_fans = j.value("include_axis_fans", plan.include_axis_fans);
    plan.fit_log_correction = j.value("fit_log_correction", plan.fit_log_correction);
    std::string method = j.value("method", "");
    if (method == "penalty")
        plan.dist.method = DistMethod::Penalty;
    else if (method == "parametrized")
        plan.dist.method = DistMethod::Parametrized;
    else if (method == "grid")
        plan.dist.method = DistMethod::Grid;
    else if (!method.empty())
        bad("unknown distance method: " + method);
    plan.dist.seed = j.value("dist_seed", plan.dist.seed);
    return plan;
}

} // namespace

Config parse_config(const json& doc) {
    Config cfg;
    if (!doc.contains("variables")) bad("missing 'variables'");
    cfg.vars = make_vars(doc["variables"].get<std::vector<std::string>>());

    if (doc.contains("f")) cfg.f = poly_field(doc, "f", cfg.vars);
    if (doc.contains("g")) cfg.g = poly_field(doc, "g", cfg.vars);
    if (doc.contains("gamma")) cfg.gamma = poly_field(doc, "gamma", cfg.vars);
    if (doc.contains("psi")) {
        std::vector<Polynomial> comps;
        for (const auto& s : doc["psi"]) comps.push_back(parse_poly(s.get<std::string>(), cfg.vars));
        cfg.psi = MapGerm(std::move(comps));
    }
    if (doc.contains("phi")) {
        std::vector<Polynomial> comps;
        for (const auto& s : doc["phi"]) comps.push_back(parse_poly(s.get<std::string>(), cfg.vars));
        cfg.phi = MapGerm(std::move(comps));
    }
    if (doc.contains("Y")) cfg.Y = parse_set(doc["Y"], cfg.vars);
    if (doc.contains("sequence")) cfg.sequence = parse_sequence(doc["sequence"]);
    if (doc.contains("theta")) cfg.theta = parse_theta(doc["theta"]);
    if (doc.contains("branches")) cfg.branches = parse_branches(doc["branches"], cfg.vars->size());
    if (doc.contains("plan")) cfg.plan = parse_plan(doc["plan"], cfg.plan);
    cfg.jmax = doc.value("jmax", 60);

    if (doc.contains("strategy")) {
        const auto& sj = doc["strategy"];
        std::string kind = sj.is_string() ? sj.get<std::string>()
                                          : sj.value("kind", "lowest-degree-minor");
        if (kind == "lowest-degree-minor")
            cfg.strategy.kind = GStrategy::Kind::LowestDegreeMinor;
        else if (kind == "all-minors-best-fit")
            cfg.strategy.kind = GStrategy::Kind::AllMinorsBestFit;
        else if (kind == "user-supplied") {
            cfg.strategy.kind = GStrategy::Kind::UserSupplied;
            if (!sj.is_object() || !sj.contains("g"))
                bad("user-supplied strategy needs a 'g' polynomial");
            cfg.strategy.user_g = parse_poly(sj["g"].get<std::string>(), cfg.vars);
        } else
            bad("unknown strategy: " + kind);
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

ProblemSpec Config::to_problem_spec() const {
    if (!f) bad("analyze needs 'f'");
    if (!psi) bad("analyze needs 'psi'");
    if (!Y) bad("analyze needs 'Y'");
    ProblemSpec spec;
    spec.vars = vars;
    spec.f = *f;
    spec.psi = *psi;
    spec.Y = *Y;
    if (sequence) spec.M = *sequence;
    spec.strategy = strategy;
    spec.plan = plan;
    spec.branches = branches;
    spec.jmax = jmax;
    return spec;
}

} // namespace detk
