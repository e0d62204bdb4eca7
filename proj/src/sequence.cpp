#include "detk/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace detk {

namespace {
constexpr double kTol = 1e-9;
constexpr int kClosedMaxJ = 2'000'000'000;

std::string fmt(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}
} // namespace

TameSequence TameSequence::gevrey_log(double alpha, double beta) {
    if (alpha < 0 || beta < 0) throw Error("gevrey_log parameters must be non-negative");
    TameSequence s;
    s.family_ = GevreyLogFamily{alpha, beta};
    return s;
}

TameSequence TameSequence::tabulated(const std::vector<double>& values) {
    if (values.empty()) throw Error("tabulated sequence needs values");
    TameSequence s;
    s.log_values_.reserve(values.size());
    for (double v : values) {
        if (!(v > 0)) throw Error("tabulated sequence values must be positive");
        s.log_values_.push_back(std::log(v));
    }
    return s;
}

TameSequence TameSequence::tabulated_log(std::vector<double> log_values) {
    if (log_values.empty()) throw Error("tabulated sequence needs values");
    TameSequence s;
    s.log_values_ = std::move(log_values);
    return s;
}

const GevreyLogFamily& TameSequence::family() const {
    if (!family_) throw Error("sequence is tabulated, not a Gevrey-log family");
    return *family_;
}

double TameSequence::log_at(int j) const {
    if (j < 0) throw IndexError("sequence index must be non-negative");
    if (family_) {
        return family_->alpha * std::lgamma(j + 1.0) +
               family_->beta * j * std::log(std::log(std::exp(1.0) + j));
    }
    if (j >= static_cast<int>(log_values_.size()))
        throw IndexError("tabulated sequence has no value at j=" + std::to_string(j));
    return log_values_[j];
}

int TameSequence::max_j() const {
    return family_ ? kClosedMaxJ : static_cast<int>(log_values_.size()) - 1;
}

std::string TameSequence::describe() const {
    std::ostringstream out;
    if (family_)
        out << "gevrey_log(alpha=" << family_->alpha << ", beta=" << family_->beta << ")";
    else
        out << "tabulated(" << log_values_.size() << " values)";
    return out.str();
}

TameReport check_tame(const TameSequence& M, int jmax) {
    if (jmax < 2) throw Error("check_tame needs jmax >= 2");
    jmax = std::min(jmax, M.max_j());
    TameReport rep;
    rep.increasing_ok = true;
    rep.logconvex_ok = true;

    if (std::abs(M.log_at(0)) > kTol) {
        rep.increasing_ok = false;
        rep.first_violation = 0;
        rep.violation = "M_0 = " + fmt(std::exp(M.log_at(0))) + ", expected 1";
        return rep;
    }
    for (int j = 0; j + 1 <= jmax && rep.increasing_ok; ++j) {
        if (M.log_at(j + 1) < M.log_at(j) - kTol) {
            rep.increasing_ok = false;
            rep.first_violation = j + 1;
            rep.violation = "not increasing at j=" + std::to_string(j + 1);
        }
    }
    if (!rep.increasing_ok) return rep;

    for (int j = 0; j + 2 <= jmax && rep.logconvex_ok; ++j) {
        double r0 = M.log_at(j + 1) - M.log_at(j);
        double r1 = M.log_at(j + 2) - M.log_at(j + 1);
        if (r1 < r0 - kTol) {
            rep.logconvex_ok = false;
            rep.first_violation = j;
            rep.violation = "M_{j+1}/M_j not increasing at j=" + std::to_string(j);
        }
    }
    if (!rep.logconvex_ok) return rep;

    for (int k = 0; k <= 40; ++k) {
        double logA = k * std::log(2.0);
        bool ok = true;
        for (int j = 0; j <= jmax && ok; ++j)
            for (int l = 0; j + l <= jmax; ++l) {
                if (M.log_at(j + l) > (j + l) * logA + M.log_at(j) + M.log_at(l) + kTol) {
                    ok = false;
                    break;
                }
            }
        if (ok) {
            rep.moderate_ok = true;
            rep.A = std::pow(2.0, k);
            break;
        }
    }
    if (!rep.moderate_ok) {
        rep.violation = "no moderate-growth constant A <= 2^40 on the range";
        return rep;
    }
    rep.ok = true;
    return rep;
}

NonQAReport check_nonqa(const TameSequence& M, int jmax) {
    if (jmax < 10) throw Error("check_nonqa needs jmax >= 10");
    jmax = std::min(jmax, M.max_j() - 1);
    NonQAReport rep;

    double sum = 0.0;
    int next_cp = 10;
    std::vector<double> log_terms;
    log_terms.reserve(jmax + 1);
    for (int j = 0; j <= jmax; ++j) {
        double lt = M.log_at(j) - std::log(j + 1.0) - M.log_at(j + 1);
        log_terms.push_back(lt);
        sum += std::exp(lt);
        if (j + 1 == next_cp) {
            rep.checkpoints.emplace_back(j + 1, sum);
            next_cp *= 10;
        }
    }
    rep.partial_sum = sum;

    if (M.is_gevrey_log()) {
        const auto& fam = M.family();
        bool nonqa = fam.alpha > 0 || (fam.alpha == 0 && fam.beta > 1);
        rep.verdict = nonqa ? QAVerdict::NonQuasianalytic : QAVerdict::Quasianalytic;
        rep.heuristic = false;
        rep.detail = "closed-form rule for the Gevrey-log family";
        return rep;
    }

    // heuristic for finite tables: slope of log term_j against log j on the
    // tail; decay faster than 1/j suggests convergence
    rep.heuristic = true;
    int lo = jmax / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int j = std::max(lo, 1); j <= jmax; ++j) {
        double x = std::log(static_cast<double>(j));
        double y = log_terms[j];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    double denom = cnt * sxx - sx * sx;
    double slope = denom != 0 ? (cnt * sxy - sx * sy) / denom : 0.0;
    rep.detail = "tail decay exponent estimate " + fmt(-slope) + " (heuristic)";
    if (-slope > 1.1)
        rep.verdict = QAVerdict::NonQuasianalytic;
    else if (-slope < 0.9)
        rep.verdict = QAVerdict::Quasianalytic;
    else
        rep.verdict = QAVerdict::Inconclusive;
    return rep;
}

HValue h_eval(const TameSequence& M, double t, int jmax) {
    if (!(t > 0)) throw Error("h_eval needs t > 0");
    jmax = std::min(jmax, M.max_j());
    double logt = std::log(t);
    HValue best;
    if (M.is_gevrey_log()) {
        // log-convex family: j*log t + log M_j has increasing increments
        // log t + (log M_{j+1} - log M_j), so the minimum sits at the first
        // j whose increment is non-negative; binary search instead of a
        // scan so jmax can be large enough for very small t.
        auto incr = [&](int j) { return logt + M.log_at(j + 1) - M.log_at(j); };
        int arg;
        if (incr(0) >= 0)
            arg = 0;
        else if (incr(jmax - 1) < 0)
            arg = jmax;
        else {
            int lo = 0, hi = jmax - 1; // incr(lo) < 0 <= incr(hi)
            while (hi - lo > 1) {
                int mid = lo + (hi - lo) / 2;
                (incr(mid) < 0 ? lo : hi) = mid;
            }
            arg = hi;
        }
        best.argmin = arg;
        best.log_value = arg == 0 ? 0.0 : arg * logt + M.log_at(arg);
    } else {
        best.log_value = 0.0; // j = 0 term: M_0 = 1
        best.argmin = 0;
        for (int j = 1; j <= jmax; ++j) {
            double v = j * logt + M.log_at(j);
            if (v < best.log_value) {
                best.log_value = v;
                best.argmin = j;
            }
        }
    }
    best.value = std::exp(best.log_value);
    best.truncated = (best.argmin == jmax);
    return best;
}

HsqResult find_hsq_constant(const TameSequence& M, const std::vector<double>& grid, int jmax) {
    for (int k = 0; k <= 20; ++k) {
        double B = std::pow(2.0, k);
        bool ok = true;
        for (double t : grid) {
            double lhs = h_eval(M, t, jmax).log_value;
            double rhs = 2.0 * h_eval(M, B * t, jmax).log_value;
            if (lhs > rhs + kTol) {
                ok = false;
                break;
            }
        }
        if (ok) return {true, B};
    }
    return {false, 0.0};
}

double AdmissibleFunction::operator()(double t) const { return std::exp(log_value(t)); }

double AdmissibleFunction::log_value(double t) const {
    if (!(t > 0)) throw Error("theta needs t > 0");
    return std::log(c) + mu * std::log(t) - nu * std::log(std::log1p(1.0 / t));
}

double AdmissibleFunction::inverse(double tau) const {
    if (!(tau > 0)) throw Error("theta inverse needs tau > 0");
    double lo = 1e-12, hi = 1.0;
    double ltau = std::log(tau);
    if (log_value(lo) >= ltau) return lo;
    if (log_value(hi) <= ltau) return hi;
    // bisect on log t to the stated relative tolerance
    double llo = std::log(lo), lhi = std::log(hi);
    while (lhi - llo > 1e-12) {
        double mid = 0.5 * (llo + lhi);
        if (log_value(std::exp(mid)) < ltau)
            llo = mid;
        else
            lhi = mid;
    }
    return std::exp(0.5 * (llo + lhi));
}

AdmissibleReport check_admissible(const AdmissibleFunction& theta,
                                  const std::vector<double>& grid) {
    AdmissibleReport rep;
    rep.s = theta.mu + theta.nu + 1.0;
    std::vector<double> g = grid;
    std::sort(g.begin(), g.end());
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        double a = theta.log_value(g[i]) - std::log(g[i]);
        double b = theta.log_value(g[i + 1]) - std::log(g[i + 1]);
        if (b < a - kTol) {
            rep.violation = "theta(t)/t not increasing near t=" + fmt(g[i]);
            return rep;
        }
    }
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        double a = theta.log_value(g[i]) - rep.s * std::log(g[i]);
        double b = theta.log_value(g[i + 1]) - rep.s * std::log(g[i + 1]);
        if (b > a + kTol) {
            rep.violation = "theta(t)/t^s not decreasing near t=" + fmt(g[i]);
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

TameSequence mtheta_closed(const TameSequence& M, const AdmissibleFunction& theta) {
    const auto& fam = M.family();
    return TameSequence::gevrey_log(fam.alpha * theta.mu, fam.beta * theta.mu + theta.nu);
}

MthetaNumericResult mtheta_numeric(const TameSequence& M, const AdmissibleFunction& theta,
                                   int jmax, const MthetaParams& params) {
    std::vector<double> taus =
        log_grid(theta(params.t_lo), theta(params.t_hi), params.grid_count);
    std::vector<double> log_taus, log_hs;
    log_taus.reserve(taus.size());
    log_hs.reserve(taus.size());
    for (double tau : taus) {
        double t = theta.inverse(tau);
        log_taus.push_back(std::log(tau));
        log_hs.push_back(h_eval(M, t, params.h_jmax).log_value);
    }
    MthetaNumericResult res;
    std::vector<double> logs(jmax + 1, 0.0);
    for (int j = 1; j <= jmax; ++j) {
        double best = -std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t k = 0; k < taus.size(); ++k) {
            double v = -j * log_taus[k] + log_hs[k];
            if (v > best) {
                best = v;
                arg = k;
            }
        }
        logs[j] = best;
        if (arg == 0 || arg + 1 == taus.size()) res.truncated_js.push_back(j);
    }
    res.seq = TameSequence::tabulated_log(std::move(logs));
    return res;
}

CompareReport compare_sequences(const TameSequence& M1, const TameSequence& M2, int jmax) {
    jmax = std::min({jmax, M1.max_j(), M2.max_j()});
    if (jmax < 4) throw Error("compare_sequences needs both sequences up to j >= 4");
    CompareReport rep;
    for (int j = 1; j <= jmax; ++j) {
        double r = std::exp(std::abs(M1.log_at(j) - M2.log_at(j)) / j);
        rep.ratios.push_back(r);
        rep.max_ratio = std::max(rep.max_ratio, r);
    }
    double mid = 1.0, end = 1.0;
    for (int j = jmax / 4; j < jmax / 2; ++j) mid = std::max(mid, rep.ratios[j]);
    for (int j = (3 * jmax) / 4; j < jmax; ++j) end = std::max(end, rep.ratios[j]);
    double trend = end / mid;
    rep.equivalent = rep.max_ratio <= 1024.0 && trend <= 1.5;
    std::ostringstream d;
    d << "max ratio " << rep.max_ratio << ", tail trend " << trend;
    rep.detail = d.str();
    return rep;
}

std::vector<double> log_grid(double lo, double hi, int count) {
    if (!(lo > 0) || !(hi > lo) || count < 2) throw Error("bad log grid parameters");
    std::vector<double> g;
    g.reserve(count);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
        g.push_back(std::exp(llo + (lhi - llo) * i / (count - 1)));
    return g;
}

} // namespace detk
