#pragma once

#include "detk/sequence.hpp"
#include "detk/variety.hpp"

#include <optional>
#include <vector>

namespace detk {

// Sampling plan for the separation fit: points x = r*u over a geometric
// radius ladder and a deterministic direction set (low-discrepancy ring or
// sphere, the coordinate axes, and small fans around each axis, where the
// envelope tends to be attained).
struct SamplePlan {
    std::vector<double> radii;
    int directions = 64;
    unsigned seed = 42;
    bool include_axes = true;
    bool include_axis_fans = true;
    bool fit_log_correction = false;
    DistOptions dist;

    static std::vector<double> geometric_radii(double r_hi, double r_lo, double ratio);
    static SamplePlan defaults();
};

std::vector<std::vector<double>> sample_directions(std::size_t dim, const SamplePlan& plan);

struct ExponentFit {
    double s_hat = 0.0;    // fitted exponent, clamped to >= 1
    double raw_slope = 0.0; // unclamped least-squares slope
    double c_hat = 0.0;    // constant of theta(t) = c_hat * t^s_hat
    std::optional<double> nu_hat;
    double residual = 0.0; // rms residual of the final fit (natural logs)
    bool clamped = false;
    int bins_used = 0;
    // (log10 r, log10 d) of every kept sample and of the bin minima
    std::vector<std::pair<double, double>> samples;
    std::vector<std::pair<double, double>> envelope;
};

// Lower-envelope regression on (r, d) pairs: bin by log10 r (10 bins per
// decade), take the per-bin minimum of d, keep the dominant contiguous run
// of bins, least-squares in log-log with one upper-outlier trim pass.
// Throws InsufficientDataError below 5 usable bins.
ExponentFit fit_envelope(const std::vector<std::pair<double, double>>& rd_pairs,
                         bool fit_log_correction);

ExponentFit fit_separation(const VarietyDescriptor& V, const SetDescriptor& Y,
                           const SamplePlan& plan);

struct VerifyReport {
    bool ok = false;
    double worst_margin = 0.0; // min over samples of log d - log theta(r)
    std::vector<double> worst_point;
    double worst_r = 0.0, worst_d = 0.0;
    int checked = 0;
};

// Checks dist(x, Z_g) >= theta(dist(x, Y)) on fresh samples.
VerifyReport verify_separation(const VarietyDescriptor& V, const SetDescriptor& Y,
                               const AdmissibleFunction& theta, const SamplePlan& plan);

} // namespace detk
