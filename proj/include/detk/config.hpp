#pragma once

#include "detk/analyze.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace detk {

// Typed view of a JSON config document. Polynomials are grammar strings
// over `variables`; only the fields a given subcommand needs are required.
struct Config {
    VarList vars;
    std::optional<Polynomial> f;
    std::optional<MapGerm> psi;
    std::optional<MapGerm> phi;      // explicit phi for the fitting command
    std::optional<Polynomial> g;     // loja-fit target
    std::optional<Polynomial> gamma; // isolated pipeline
    std::optional<SetDescriptor> Y;
    std::optional<TameSequence> sequence;
    std::optional<AdmissibleFunction> theta;
    GStrategy strategy;
    std::vector<BranchMap> branches;
    SamplePlan plan = SamplePlan::defaults();
    int jmax = 60;

    ProblemSpec to_problem_spec() const;
};

Config load_config(const std::string& path);
Config parse_config(const nlohmann::json& doc);

} // namespace detk
