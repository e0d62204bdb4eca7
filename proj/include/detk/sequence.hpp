#pragma once

#include "detk/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace detk {

// M_j = j!^alpha * log(e+j)^(beta*j)
struct GevreyLogFamily {
    double alpha = 0.0;
    double beta = 0.0;
};

// Tame sequence: increasing, log-convex, moderate growth, M_0 = 1. Either
// a closed Gevrey-log family or a finite table of values. All arithmetic
// is done on natural logs of M_j; j!^alpha overflows doubles near j = 170.
class TameSequence {
public:
    static TameSequence gevrey_log(double alpha, double beta);
    static TameSequence tabulated(const std::vector<double>& values);
    static TameSequence tabulated_log(std::vector<double> log_values);

    bool is_gevrey_log() const { return family_.has_value(); }
    const GevreyLogFamily& family() const;

    double log_at(int j) const; // log M_j
    // largest j with a defined value (a large sentinel for closed families)
    int max_j() const;
    std::string describe() const;

private:
    std::optional<GevreyLogFamily> family_;
    std::vector<double> log_values_;
};

struct TameReport {
    bool ok = false;
    bool increasing_ok = false;
    bool logconvex_ok = false;
    bool moderate_ok = false;
    double A = 0.0;          // smallest power of two satisfying moderate growth
    int first_violation = -1; // j of the first violated condition, -1 if none
    std::string violation;
};

// Verifies normalization/monotonicity and log-convexity for j <= jmax and
// searches the smallest A in {2^k} with M_{j+k} <= A^{j+k} M_j M_k.
TameReport check_tame(const TameSequence& M, int jmax);

enum class QAVerdict { NonQuasianalytic, Quasianalytic, Inconclusive };

struct NonQAReport {
    QAVerdict verdict = QAVerdict::Inconclusive;
    bool heuristic = false; // tabulated sequences cannot certify a tail property
    double partial_sum = 0.0;
    std::vector<std::pair<int, double>> checkpoints; // (j, partial sum) at powers of ten
    std::string detail;
};

// Partial sums of sum M_j / ((j+1) M_{j+1}); closed-form rule for the
// Gevrey-log family, tail-decay heuristic for tables.
NonQAReport check_nonqa(const TameSequence& M, int jmax);

struct HValue {
    double value = 1.0;
    double log_value = 0.0;
    int argmin = 0;
    bool truncated = false; // the minimizing j hit jmax
};

// h_M(t) = min_{0<=j<=jmax} t^j M_j, evaluated in log space.
HValue h_eval(const TameSequence& M, double t, int jmax);

struct HsqResult {
    bool found = false;
    double B = 0.0;
};

// Smallest B in {2^k, k <= 20} with h_M(t) <= h_M(Bt)^2 on the grid.
HsqResult find_hsq_constant(const TameSequence& M, const std::vector<double>& grid,
                            int jmax = 1'000'000'000);

// theta(t) = c * t^mu * log(1+1/t)^(-nu)
struct AdmissibleFunction {
    double c = 1.0;
    double mu = 1.0;
    double nu = 0.0;

    double operator()(double t) const;
    double log_value(double t) const;
    // monotone bisection on [1e-12, 1], 1e-12 relative tolerance
    double inverse(double tau) const;
};

struct AdmissibleReport {
    bool ok = false;
    double s = 0.0; // theta(t)/t^s decreasing holds with s = mu+nu+1
    std::string violation;
};

AdmissibleReport check_admissible(const AdmissibleFunction& theta,
                                  const std::vector<double>& grid);

// Closed transform on the family: (alpha, beta) -> (alpha*mu, beta*mu+nu).
TameSequence mtheta_closed(const TameSequence& M, const AdmissibleFunction& theta);

struct MthetaParams {
    int grid_count = 512;
    double t_lo = 1e-8;
    double t_hi = 1.0;
    int h_jmax = 1'000'000'000; // truncation bound for inner h evaluations
};

struct MthetaNumericResult {
    TameSequence seq;              // tabulated, M_0 normalized to 1
    std::vector<int> truncated_js; // j whose sup hit the grid boundary
};

// M^(theta)_j = sup over grid tau of tau^(-j) h_M(theta^{-1}(tau)).
MthetaNumericResult mtheta_numeric(const TameSequence& M, const AdmissibleFunction& theta,
                                   int jmax, const MthetaParams& params = {});

struct CompareReport {
    std::vector<double> ratios; // r_j = max(M1_j/M2_j, M2_j/M1_j)^(1/j), j >= 1
    double max_ratio = 1.0;
    bool equivalent = false;
    std::string detail;
};

// Equivalence up to C^j: bounded per-j ratios with no tail growth trend.
CompareReport compare_sequences(const TameSequence& M1, const TameSequence& M2, int jmax);

// count log-spaced values in [lo, hi]
std::vector<double> log_grid(double lo, double hi, int count);

} // namespace detk
