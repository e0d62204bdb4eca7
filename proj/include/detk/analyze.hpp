#pragma once

#include "detk/fitting.hpp"
#include "detk/separation.hpp"

#include <memory>

namespace detk {

struct GStrategy {
    enum class Kind { LowestDegreeMinor, UserSupplied, AllMinorsBestFit };
    Kind kind = Kind::LowestDegreeMinor;
    std::optional<Polynomial> user_g;

    std::string name() const;
};

struct ProblemSpec {
    VarList vars;
    Polynomial f;
    MapGerm psi;
    SetDescriptor Y;
    TameSequence M = TameSequence::gevrey_log(1, 0);
    GStrategy strategy;
    SamplePlan plan = SamplePlan::defaults();
    std::vector<BranchMap> branches; // optional parametrization of Z_g
    int jmax = 60;
};

enum class AnalyzeStatus {
    Ok,
    NotPrimitive,
    SequenceRejected, // M not tame or not non-quasianalytic
    DegenerateIdeal,
    GNotInIdeal, // chosen/user g fails membership in K_f
    InsufficientData,
    SeparationUnverified,
};

std::string to_string(AnalyzeStatus s);

struct RationalRounding {
    bool rounded = false;
    long num = 0, den = 1;
    double value = 0.0; // rounded value when rounded, raw input otherwise
};

// Nearest p/q with q <= max_den when within `window`; smaller q wins ties.
RationalRounding round_rational(double s, int max_den = 12, double window = 0.05);

struct DeterminacyReport {
    AnalyzeStatus status = AnalyzeStatus::Ok;
    std::string failure_detail;

    // hypothesis checks
    bool f_in_psi = false;
    bool grad_in_psi = false;
    std::string primitive_witness;
    TameReport tame;
    NonQAReport nonqa;
    bool dol_ok = false;
    int dol_checked = 0;

    // fitting data
    std::shared_ptr<FittingResult> fitting;
    bool kf_is_unit = false;
    std::string chosen_g;
    std::string strategy_name;
    std::vector<std::string> g_certificate; // cofactors over the K generators

    // separation data
    bool has_fit = false;
    ExponentFit fit;
    RationalRounding s_round;
    bool has_theta = false;
    AdmissibleFunction theta;
    bool has_verify = false;
    VerifyReport verify;

    // classes
    std::string m_desc;
    bool has_target = false;
    TameSequence target = TameSequence::gevrey_log(0, 0);
    std::string target_desc;

    std::vector<std::string> warnings;
    std::string conclusion; // empty unless every check passed
};

// Full pipeline: hypothesis checks, K_f, g selection, separation fit with
// rational rounding, fresh-sample verification, target class M^(theta).
DeterminacyReport analyze(const ProblemSpec& spec);

// Closed-form target exponent for the quartic-germ geometry: 2a for
// mu <= 1, 2a/mu for 1 < mu <= 2, a for mu > 2.
double beta_table(double alpha, double mu);

// Identity-psi specialization: checks gamma in <grad f>, forms
// g = |x|^{2n} gamma, fits the separation from Y = {0} and reports the
// power-law target class.
DeterminacyReport isolated_pipeline(const Polynomial& f, const TameSequence& M,
                                    const Polynomial& gamma, const SamplePlan& plan,
                                    int jmax = 60);

} // namespace detk
