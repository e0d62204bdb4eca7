#include "detk/variety.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace detk {

namespace {

using Complex = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Flat double-coefficient copy of a polynomial for the hot sampling loops;
// exact arithmetic stays in Polynomial, estimates live here.
struct CompiledPoly {
    struct Term {
        Complex coeff;
        std::vector<int> exp;
    };
    std::vector<Term> terms;

    static CompiledPoly from(const Polynomial& p, Complex scale = {1.0, 0.0}) {
        CompiledPoly c;
        for (const auto& [m, r] : p.terms()) c.terms.push_back({scale * to_double(r), m.exp});
        return c;
    }

    // re + i*im merged term-wise
    static CompiledPoly from_pair(const Polynomial& re, const Polynomial& im) {
        CompiledPoly c = from(re);
        CompiledPoly ci = from(im, Complex(0, 1));
        for (auto& t : ci.terms) {
            bool merged = false;
            for (auto& s : c.terms)
                if (s.exp == t.exp) {
                    s.coeff += t.coeff;
                    merged = true;
                    break;
                }
            if (!merged) c.terms.push_back(std::move(t));
        }
        return c;
    }

    Complex eval(const std::vector<Complex>& z) const {
        Complex acc(0, 0);
        for (const auto& t : terms) {
            Complex v = t.coeff;
            for (std::size_t i = 0; i < t.exp.size(); ++i)
                for (int k = 0; k < t.exp[i]; ++k) v *= z[i];
            acc += v;
        }
        return acc;
    }
};

double norm2(const std::vector<Complex>& a, const std::vector<double>& x) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double dr = a[i].real() - x[i], di = a[i].imag();
        s += dr * dr + di * di;
    }
    return s;
}

} // namespace

ComplexPoint BranchMap::eval(const std::vector<Complex>& w) const {
    ComplexPoint p;
    p.z.reserve(components.size());
    ComplexPoint wp(w);
    for (const auto& [re, im] : components)
        p.z.push_back(evaluate(re, wp) + Complex(0, 1) * evaluate(im, wp));
    return p;
}

namespace {

// ---- penalty method -------------------------------------------------

struct PenaltyProblem {
    CompiledPoly g;
    std::vector<CompiledPoly> dg;
    const std::vector<double>* x;
    double rho = 0.0;

    double value(const std::vector<Complex>& z) const {
        return norm2(z, *x) + rho * std::norm(g.eval(z));
    }

    void grad(const std::vector<Complex>& z, std::vector<double>& out) const {
        std::size_t n = z.size();
        out.assign(2 * n, 0.0);
        Complex gv = g.eval(z);
        for (std::size_t i = 0; i < n; ++i) {
            Complex w = std::conj(gv) * dg[i].eval(z);
            out[2 * i] = 2 * (z[i].real() - (*x)[i]) + 2 * rho * w.real();
            out[2 * i + 1] = 2 * z[i].imag() - 2 * rho * w.imag();
        }
    }
};

void descend(const PenaltyProblem& prob, std::vector<Complex>& z, int max_iters) {
    std::vector<double> g;
    double f = prob.value(z);
    for (int it = 0; it < max_iters; ++it) {
        prob.grad(z, g);
        double gn2 = 0;
        for (double v : g) gn2 += v * v;
        if (gn2 <= 1e-24 * (1 + f * f)) break;
        double step = 1.0 / (1.0 + std::sqrt(gn2));
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<Complex> trial = z;
            for (std::size_t i = 0; i < z.size(); ++i)
                trial[i] += Complex(-step * g[2 * i], -step * g[2 * i + 1]);
            double ft = prob.value(trial);
            if (ft <= f - 1e-4 * step * gn2) {
                z = std::move(trial);
                f = ft;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
}

// First-order steps toward the zero set: z -= conj(grad) g / |grad|^2.
// Converges linearly with ratio (1 - 1/m) at a root of multiplicity m, so
// the stop rule is the geometric step length, not |g| (which scales like
// dist^m and would spuriously accept far-off points at small scales).
// Returns the last step length as a residual-distance proxy.
double newton_project(const CompiledPoly& g, const std::vector<CompiledPoly>& dg,
                      std::vector<Complex>& z, int iters) {
    double last_step = 0.0;
    std::vector<Complex> grads(z.size());
    for (int it = 0; it < iters; ++it) {
        Complex gv = g.eval(z);
        if (gv == Complex(0, 0)) return 0.0;
        double gn2 = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            grads[i] = dg[i].eval(z);
            gn2 += std::norm(grads[i]);
        }
        double zn = 0;
        for (const auto& zi : z) zn += std::norm(zi);
        zn = std::sqrt(zn);
        if (gn2 < 1e-120) return std::abs(gv) < 1e-60 ? 0.0 : 1e30;
        double step = std::abs(gv) / std::sqrt(gn2);
        if (step > 1e3 * (1.0 + zn)) return step; // diverging, give up
        for (std::size_t i = 0; i < z.size(); ++i) z[i] -= std::conj(grads[i]) * gv / gn2;
        last_step = step;
        if (step <= 1e-16 * (1.0 + zn)) return step;
    }
    return last_step;
}

// Projected descent for min ||z-x|| subject to g(z) = 0: slide along the
// tangent space of the hypersurface (real codimension 2) and re-project.
// The normal direction comes from grad g slightly off the zero set, which
// stays meaningful for germs with repeated factors.
void tangential_polish(const CompiledPoly& g, const std::vector<CompiledPoly>& dg,
                       const std::vector<double>& x, std::vector<Complex>& z, int iters) {
    std::size_t n = z.size();
    auto dist = [&](const std::vector<Complex>& p) { return std::sqrt(norm2(p, x)); };
    double eta = 1.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<double> n1(2 * n), n2(2 * n), v(2 * n);
        double gn2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex gi = dg[i].eval(z);
            gn2 += std::norm(gi);
            n1[2 * i] = gi.real();
            n1[2 * i + 1] = -gi.imag();
            n2[2 * i] = gi.imag();
            n2[2 * i + 1] = gi.real();
            v[2 * i] = z[i].real() - x[i];
            v[2 * i + 1] = z[i].imag();
        }
        if (gn2 < 1e-30) return;
        double nn = std::sqrt(gn2);
        double d1 = 0, d2 = 0, vn = 0;
        for (std::size_t i = 0; i < 2 * n; ++i) {
            n1[i] /= nn;
            n2[i] /= nn;
            d1 += v[i] * n1[i];
            d2 += v[i] * n2[i];
            vn += v[i] * v[i];
        }
        std::vector<double> t(2 * n);
        double tn2 = 0;
        for (std::size_t i = 0; i < 2 * n; ++i) {
            t[i] = v[i] - d1 * n1[i] - d2 * n2[i];
            tn2 += t[i] * t[i];
        }
        if (tn2 <= 1e-28 * (1 + vn)) return;
        double d_old = dist(z);
        bool moved = false;
        for (int bt = 0; bt < 40; ++bt) {
            std::vector<Complex> trial = z;
            for (std::size_t i = 0; i < n; ++i)
                trial[i] -= Complex(eta * t[2 * i], eta * t[2 * i + 1]);
            newton_project(g, dg, trial, 60);
            if (dist(trial) < d_old - 1e-16) {
                z = std::move(trial);
                moved = true;
                eta = std::min(eta * 1.5, 1.0);
                break;
            }
            eta *= 0.5;
        }
        if (!moved) return;
    }
}

DistResult dist_penalty(const std::vector<double>& x, const VarietyDescriptor& V,
                        const DistOptions& opts) {
    std::size_t n = x.size();
    PenaltyProblem prob;
    prob.g = CompiledPoly::from(V.g);
    for (std::size_t i = 0; i < n; ++i) prob.dg.push_back(CompiledPoly::from(derive(V.g, i)));
    prob.x = &x;

    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    scale = std::max(scale, 1e-3);

    std::vector<std::vector<Complex>> starts;
    std::vector<Complex> x0(n);
    for (std::size_t i = 0; i < n; ++i) x0[i] = Complex(x[i], 0);
    starts.push_back(x0);
    for (std::size_t i = 0; i < n; ++i) {
        for (double sgn : {1.0, -1.0}) {
            auto s = x0;
            s[i] += Complex(0.3 * sgn * scale, 0.4 * sgn * scale);
            starts.push_back(std::move(s));
        }
    }
    std::mt19937_64 rng(opts.seed);
    auto unif = [&rng]() { return (double)(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    for (int k = 0; k < opts.starts; ++k) {
        auto s = x0;
        for (std::size_t i = 0; i < n; ++i) s[i] += Complex(unif() * scale, unif() * scale);
        starts.push_back(std::move(s));
    }

    std::vector<Complex> best_z;
    double best_d = kInf;
    double best_geo = kInf;
    auto consider = [&](const std::vector<Complex>& z, double geo) {
        // a candidate whose projection stalled far from the zero set only
        // bounds the distance up to its residual step; charge it for that
        double d = std::sqrt(norm2(z, x)) + geo;
        if (d < best_d) {
            best_d = d;
            best_geo = geo;
            best_z = z;
        }
    };
    for (auto& z : starts) {
        for (double rho = opts.rho_min; rho <= opts.rho_max * 1.0001; rho *= 10.0) {
            prob.rho = rho;
            descend(prob, z, 200);
        }
        double geo = newton_project(prob.g, prob.dg, z, 300);
        tangential_polish(prob.g, prob.dg, x, z, 200);
        consider(z, geo);
    }
    // continuation candidates skip the ladder and go straight to the
    // projection + slide phase
    for (const auto& ws : opts.warm_starts) {
        if (ws.dim() != n) continue;
        std::vector<Complex> z = ws.z;
        double geo = newton_project(prob.g, prob.dg, z, 300);
        tangential_polish(prob.g, prob.dg, x, z, 200);
        consider(z, geo);
    }

    // Real starts stay real under both the penalty flow and the Newton
    // projection (the real subspace is invariant), which misses nearest
    // points with genuinely complex coordinates. Kick the best iterate off
    // the real slice and re-polish until no kick improves it. Kicks along
    // a single coordinate can stay inside an invariant coordinate slice of
    // a symmetric germ, so mixed complex directions are included.
    std::vector<std::vector<Complex>> kick_dirs;
    for (std::size_t k = 0; k < n; ++k) {
        for (double sgn : {1.0, -1.0}) {
            std::vector<Complex> dir(n, Complex(0, 0));
            dir[k] = Complex(0, sgn);
            kick_dirs.push_back(std::move(dir));
        }
    }
    for (int extra = 0; extra < 2 * static_cast<int>(n); ++extra) {
        std::vector<Complex> dir(n);
        double nn = 0;
        for (auto& c : dir) {
            c = Complex(unif(), unif());
            nn += std::norm(c);
        }
        nn = std::sqrt(nn);
        for (auto& c : dir) c /= nn;
        kick_dirs.push_back(std::move(dir));
    }
    for (int round = 0; round < 4; ++round) {
        bool improved = false;
        double d = best_d;
        for (const auto& dir : kick_dirs) {
            for (double frac : {0.7, 0.2, 0.04, 0.008}) {
                std::vector<Complex> trial = best_z;
                for (std::size_t i = 0; i < n; ++i)
                    trial[i] += dir[i] * (frac * std::max(d, 1e-9));
                double geo = newton_project(prob.g, prob.dg, trial, 300);
                tangential_polish(prob.g, prob.dg, x, trial, 200);
                double td = std::sqrt(norm2(trial, x)) + geo;
                if (td < best_d * (1.0 - 1e-12)) {
                    best_d = td;
                    best_geo = geo;
                    best_z = std::move(trial);
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }

    DistResult best;
    best.dist = best_d;
    best.witness = ComplexPoint(best_z);
    best.residual = std::abs(prob.g.eval(best_z));
    best.converged = best_geo <= 1e-6 * (1e-3 + best_d + scale);
    return best;
}

// ---- parametrized method --------------------------------------------

struct BranchProblem {
    const BranchMap* branch = nullptr;
    std::vector<CompiledPoly> comp;            // combined re + i*im per coordinate
    std::vector<std::vector<CompiledPoly>> dcomp; // [coord][param]
    CompiledPoly g;
    const std::vector<double>* x = nullptr;
    // scratch buffers: one problem instance per dist_to_variety call, so
    // reuse is safe while keeping the sampling loop allocation-free
    mutable std::vector<Complex> w_scratch;

    void to_params(const std::vector<double>& u) const {
        std::size_t k = branch->nparams();
        w_scratch.resize(k);
        for (std::size_t j = 0; j < k; ++j) w_scratch[j] = Complex(u[2 * j], u[2 * j + 1]);
    }

    void point(const std::vector<double>& u, std::vector<Complex>& z) const {
        to_params(u);
        z.resize(comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i) z[i] = comp[i].eval(w_scratch);
    }

    double value(const std::vector<double>& u) const {
        to_params(u);
        double s = 0;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            Complex zi = comp[i].eval(w_scratch);
            double dr = zi.real() - (*x)[i], di = zi.imag();
            s += dr * dr + di * di;
        }
        return s;
    }

    void grad(const std::vector<double>& u, std::vector<double>& out) const {
        std::size_t k = branch->nparams();
        to_params(u);
        out.assign(2 * k, 0.0);
        for (std::size_t i = 0; i < comp.size(); ++i) {
            Complex delta = comp[i].eval(w_scratch) - Complex((*x)[i], 0);
            for (std::size_t j = 0; j < k; ++j) {
                Complex wd = std::conj(delta) * dcomp[i][j].eval(w_scratch);
                out[2 * j] += 2 * wd.real();
                out[2 * j + 1] -= 2 * wd.imag();
            }
        }
    }
};

// Standard Nelder-Mead; robust on the curved valleys the branch maps
// produce (for example product-type couplings between parameters).
void nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                 std::vector<double>& x, double step, int max_iters) {
    std::size_t n = x.size();
    std::vector<std::vector<double>> simplex(n + 1, x);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    for (int it = 0; it < max_iters; ++it) {
        // order: lo = best, hi = worst, sh = second worst
        std::size_t lo = 0, hi = 0, sh = 0;
        for (std::size_t i = 1; i <= n; ++i) {
            if (fv[i] < fv[lo]) lo = i;
            if (fv[i] > fv[hi]) hi = i;
        }
        sh = lo;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != hi && fv[i] > fv[sh]) sh = i;
        if (fv[hi] - fv[lo] <= 1e-18 * (1.0 + std::abs(fv[lo]))) break;

        centroid.assign(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == hi) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / n;
        }
        auto blend = [&](std::vector<double>& out, double t) {
            for (std::size_t d = 0; d < n; ++d)
                out[d] = centroid[d] + t * (simplex[hi][d] - centroid[d]);
        };
        blend(xr, -1.0);
        double fr = f(xr);
        if (fr < fv[lo]) {
            blend(xe, -2.0);
            double fe = f(xe);
            if (fe < fr) {
                simplex[hi] = xe;
                fv[hi] = fe;
            } else {
                simplex[hi] = xr;
                fv[hi] = fr;
            }
        } else if (fr < fv[sh]) {
            simplex[hi] = xr;
            fv[hi] = fr;
        } else {
            blend(xc, fr < fv[hi] ? -0.5 : 0.5);
            double fc = f(xc);
            if (fc < std::min(fr, fv[hi])) {
                simplex[hi] = xc;
                fv[hi] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == lo) continue;
                    for (std::size_t d = 0; d < n; ++d)
                        simplex[i][d] = simplex[lo][d] + 0.5 * (simplex[i][d] - simplex[lo][d]);
                    fv[i] = f(simplex[i]);
                }
            }
        }
    }
    std::size_t lo = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[lo]) lo = i;
    x = simplex[lo];
}

void descend_branch(const BranchProblem& prob, std::vector<double>& u, int max_iters) {
    std::vector<double> g, trial(u.size());
    double f = prob.value(u);
    for (int it = 0; it < max_iters; ++it) {
        prob.grad(u, g);
        double gn2 = 0;
        for (double v : g) gn2 += v * v;
        if (gn2 <= 1e-28 * (1 + f * f)) break;
        double step = 1.0 / (1.0 + std::sqrt(gn2));
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < u.size(); ++i) trial[i] = u[i] - step * g[i];
            double ft = prob.value(trial);
            if (ft <= f - 1e-4 * step * gn2) {
                u.swap(trial);
                f = ft;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
}

DistResult dist_parametrized(const std::vector<double>& x, const VarietyDescriptor& V,
                             const DistOptions& opts) {
    DistResult best;
    for (const auto& br : V.branches) {
        std::size_t k = br.nparams();
        std::size_t dim = 2 * k;
        BranchProblem prob;
        prob.branch = &br;
        prob.x = &x;
        prob.g = CompiledPoly::from(V.g);
        for (const auto& [re, im] : br.components) {
            prob.comp.push_back(CompiledPoly::from_pair(re, im));
            std::vector<CompiledPoly> row;
            for (std::size_t j = 0; j < k; ++j)
                row.push_back(CompiledPoly::from_pair(derive(re, j), derive(im, j)));
            prob.dcomp.push_back(std::move(row));
        }

        int per_dim = opts.coarse_per_dim;
        if (per_dim <= 0) per_dim = dim <= 2 ? 17 : (dim <= 4 ? 9 : 5);
        double h = 2.0 * br.box / (per_dim - 1);

        auto worse = [](const auto& a, const auto& b) { return a.first < b.first; };
        std::vector<std::pair<double, std::vector<double>>> top;
        std::vector<double> u(dim, -br.box);
        std::vector<int> idx(dim, 0);
        for (;;) {
            double f = prob.value(u);
            top.emplace_back(f, u);
            std::push_heap(top.begin(), top.end(), worse);
            if (static_cast<int>(top.size()) > opts.refine_starts) {
                std::pop_heap(top.begin(), top.end(), worse);
                top.pop_back();
            }
            std::size_t d = 0;
            for (; d < dim; ++d) {
                if (++idx[d] < per_dim) {
                    u[d] = -br.box + idx[d] * h;
                    break;
                }
                idx[d] = 0;
                u[d] = -br.box;
            }
            if (d == dim) break;
        }

        auto value_fn = [&](const std::vector<double>& v) { return prob.value(v); };
        for (auto& [f0, start] : top) {
            std::vector<double> cur = start;
            nelder_mead(value_fn, cur, h, 200 + 120 * static_cast<int>(dim));
            descend_branch(prob, cur, 150);
            nelder_mead(value_fn, cur, 1e-4, 150 + 60 * static_cast<int>(dim));
            std::vector<Complex> z;
            prob.point(cur, z);
            double d = std::sqrt(norm2(z, x));
            if (d < best.dist) {
                best.dist = d;
                best.witness = ComplexPoint(z);
                best.residual = std::abs(prob.g.eval(z));
            }
        }
    }
    best.converged = true;
    return best;
}

// ---- grid oracle -----------------------------------------------------

DistResult dist_grid(const std::vector<double>& x, const VarietyDescriptor& V,
                     const DistOptions& opts) {
    std::size_t n = x.size();
    CompiledPoly g = CompiledPoly::from(V.g);
    std::vector<CompiledPoly> dg;
    for (std::size_t i = 0; i < n; ++i) dg.push_back(CompiledPoly::from(derive(V.g, i)));
    double xn = 0;
    for (double v : x) xn += v * v;
    xn = std::sqrt(xn);
    double R = opts.grid_radius > 0 ? opts.grid_radius : std::max(0.25, 2.0 * xn);
    int per_dim = opts.grid_per_dim > 0 ? opts.grid_per_dim : (n <= 2 ? 13 : 7);

    DistResult best;
    std::vector<int> idx(2 * n, 0);
    std::vector<Complex> z(n);
    std::vector<double> zero(n, 0.0);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) {
            double re = x[i] - R + 2.0 * R * idx[2 * i] / (per_dim - 1);
            double im = -R + 2.0 * R * idx[2 * i + 1] / (per_dim - 1);
            z[i] = Complex(re, im);
        }
        std::vector<Complex> w = z;
        double geo = newton_project(g, dg, w, 120);
        if (geo <= 1e-9 * (1.0 + std::sqrt(norm2(w, zero)))) {
            double d = std::sqrt(norm2(w, x));
            if (d < best.dist) {
                best.dist = d;
                best.witness = ComplexPoint(w);
                best.residual = std::abs(g.eval(w));
            }
        }
        std::size_t d = 0;
        for (; d < 2 * n; ++d) {
            if (++idx[d] < per_dim) break;
            idx[d] = 0;
        }
        if (d == 2 * n) break;
    }
    best.converged = best.dist < kInf;
    return best;
}

} // namespace

DistResult dist_to_variety(const std::vector<double>& x, const VarietyDescriptor& V,
                           const DistOptions& opts) {
    if (V.g.is_zero()) {
        DistResult r;
        r.dist = 0.0;
        r.witness = ComplexPoint::real(x);
        return r;
    }
    if (V.g.is_constant()) return DistResult{}; // empty zero set: dist = +inf
    switch (opts.method) {
        case DistMethod::Penalty: return dist_penalty(x, V, opts);
        case DistMethod::Parametrized:
            if (V.branches.empty()) return dist_penalty(x, V, opts);
            return dist_parametrized(x, V, opts);
        case DistMethod::Grid: return dist_grid(x, V, opts);
    }
    throw Error("unreachable");
}

SetDescriptor SetDescriptor::origin() {
    SetPiece p;
    p.kind = SetPiece::Kind::Origin;
    return SetDescriptor{{p}};
}

SetDescriptor SetDescriptor::subspace(std::vector<int> vanishing) {
    SetPiece p;
    p.kind = SetPiece::Kind::Subspace;
    p.vanishing = std::move(vanishing);
    return SetDescriptor{{p}};
}

SetDescriptor SetDescriptor::arc(ArcPiece a) {
    for (const auto& c : a.comps)
        if (c.c != 0.0 && !(c.mu > 0))
            throw Error("arc components need mu > 0 so the arc reaches the origin");
    SetPiece p;
    p.kind = SetPiece::Kind::Arc;
    p.arc = std::move(a);
    return SetDescriptor{{p}};
}

namespace {

double arc_component(const ArcComponent& c, double sign, double t) {
    if (c.c == 0.0 || t == 0.0) return 0.0;
    double v = c.c * std::pow(t, c.mu);
    if (c.logpow != 0.0) v *= std::pow(std::log1p(1.0 / t), c.logpow);
    return sign * v;
}

double arc_dist2(const ArcPiece& arc, const std::vector<double>& signs,
                 const std::vector<double>& x, double t) {
    double s = 0;
    for (std::size_t i = 0; i < arc.comps.size(); ++i) {
        double d = x[i] - arc_component(arc.comps[i], signs[i], t);
        s += d * d;
    }
    return s;
}

double dist_to_arc(const std::vector<double>& x, const ArcPiece& arc) {
    std::vector<std::size_t> flip;
    for (std::size_t i = 0; i < arc.comps.size(); ++i)
        if (arc.comps[i].sign_both && arc.comps[i].c != 0.0) flip.push_back(i);
    double best = kInf;
    for (std::size_t mask = 0; mask < (std::size_t(1) << flip.size()); ++mask) {
        std::vector<double> signs(arc.comps.size(), 1.0);
        for (std::size_t b = 0; b < flip.size(); ++b)
            if (mask & (std::size_t(1) << b)) signs[flip[b]] = -1.0;
        auto f = [&](double t) { return arc_dist2(arc, signs, x, std::max(t, 0.0)); };
        // coarse log scan plus endpoints, then golden refinement around the
        // best coarse point
        double bt = 0.0, bv = f(0.0);
        const int steps = 60;
        for (int k = 0; k <= steps; ++k) {
            double t = arc.tmax * std::pow(10.0, -9.0 * (1.0 - (double)k / steps));
            double v = f(t);
            if (v < bv) {
                bv = v;
                bt = t;
            }
        }
        double lo = bt / 3.0;
        double hi = bt == 0.0 ? arc.tmax * 1e-8 : std::min(arc.tmax, bt * 3.0);
        double t_ref = golden_min(f, lo, hi, 80);
        best = std::min({best, bv, f(t_ref)});
    }
    return std::sqrt(best);
}

} // namespace

double dist_to_set(const std::vector<double>& x, const SetDescriptor& Y) {
    if (Y.pieces.empty()) throw Error("set descriptor has no pieces");
    double best = kInf;
    for (const auto& p : Y.pieces) {
        double d = kInf;
        switch (p.kind) {
            case SetPiece::Kind::Origin: {
                double s = 0;
                for (double v : x) s += v * v;
                d = std::sqrt(s);
                break;
            }
            case SetPiece::Kind::Subspace: {
                double s = 0;
                for (int i : p.vanishing) s += x[i] * x[i];
                d = std::sqrt(s);
                break;
            }
            case SetPiece::Kind::Arc: d = dist_to_arc(x, p.arc); break;
        }
        best = std::min(best, d);
    }
    return best;
}

double golden_min(const std::function<double(double)>& f, double a, double b, int iters) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < iters; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

} // namespace detk
