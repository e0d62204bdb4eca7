#include "detk/ideal.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace detk {

ModuleVector ModuleVector::operator+(const ModuleVector& o) const {
    ModuleVector r(*this);
    for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] = r.entries[i] + o.entries[i];
    return r;
}

ModuleVector ModuleVector::operator-(const ModuleVector& o) const {
    ModuleVector r(*this);
    for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] = r.entries[i] - o.entries[i];
    return r;
}

ModuleVector ModuleVector::scaled(const Polynomial& c) const {
    ModuleVector r(*this);
    for (auto& e : r.entries) e = e * c;
    return r;
}

std::string ModuleVector::str() const {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out << ", ";
        out << entries[i].str();
    }
    out << ")";
    return out.str();
}

DivisionResult divide_full(const Polynomial& p, const std::vector<Polynomial>& divisors) {
    DivisionResult res;
    res.quotients.assign(divisors.size(), Polynomial::zero(p.vars()));
    res.remainder = Polynomial::zero(p.vars());
    Polynomial work = p;
    Monomial neg; // scratch
    while (!work.is_zero()) {
        const Monomial& lm = work.leading_monomial();
        const Rational& lc = work.leading_coeff();
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            const Polynomial& d = divisors[i];
            if (d.is_zero()) continue;
            if (!d.leading_monomial().divides(lm)) continue;
            Monomial q = lm.quotient(d.leading_monomial());
            Rational c = lc / d.leading_coeff();
            res.quotients[i].add_term(q, c);
            // work -= c * x^q * d
            work.add_scaled(d, -c, q);
            reduced = true;
            break;
        }
        if (!reduced) {
            res.remainder.add_term(lm, lc);
            work.add_term(lm, -lc);
        }
    }
    return res;
}

namespace {

struct TrackedPoly {
    Polynomial poly;
    ModuleVector rep; // poly = sum rep_j * gens_j
};

void make_monic(TrackedPoly& t) {
    Rational lc = t.poly.leading_coeff();
    if (lc == 1) return;
    Rational inv = Rational(1) / lc;
    t.poly = t.poly * inv;
    for (auto& e : t.rep.entries) e = e * inv;
}

// Divide p (with representation rep_p) by the tracked items, updating the
// representation so the remainder's rep stays exact.
Polynomial reduce_tracked(const Polynomial& p, const ModuleVector& rep_p,
                          const std::vector<TrackedPoly>& basis, ModuleVector& rep_out) {
    std::vector<Polynomial> divisors;
    divisors.reserve(basis.size());
    for (const auto& b : basis) divisors.push_back(b.poly);
    DivisionResult d = divide_full(p, divisors);
    rep_out = rep_p;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (d.quotients[k].is_zero()) continue;
        rep_out = rep_out - basis[k].rep.scaled(d.quotients[k]);
    }
    return d.remainder;
}

} // namespace

GroebnerBasis buchberger_tracked(const std::vector<Polynomial>& gens) {
    if (gens.empty()) throw Error("empty generator list");
    VarList vars;
    for (const auto& g : gens)
        if (g.vars()) {
            vars = g.vars();
            break;
        }
    std::size_t m = gens.size();

    std::vector<TrackedPoly> basis;
    for (std::size_t j = 0; j < m; ++j) {
        if (gens[j].is_zero()) continue;
        TrackedPoly t;
        t.poly = gens[j];
        t.rep = ModuleVector::zero(vars, m);
        t.rep.entries[j] = Polynomial::constant(vars, 1);
        make_monic(t);
        basis.push_back(std::move(t));
    }
    if (basis.empty()) throw Error("all generators are zero");

    // pair queue keyed by (lcm degree, i, j): normal selection strategy
    using PairKey = std::tuple<int, std::size_t, std::size_t>;
    std::set<PairKey> pairs;
    auto push_pairs_for = [&](std::size_t jnew) {
        for (std::size_t i = 0; i < jnew; ++i) {
            Monomial l = Monomial::lcm(basis[i].poly.leading_monomial(),
                                       basis[jnew].poly.leading_monomial());
            pairs.emplace(l.degree(), i, jnew);
        }
    };
    for (std::size_t j = 1; j < basis.size(); ++j) push_pairs_for(j);

    while (!pairs.empty()) {
        auto [deg, i, j] = *pairs.begin();
        pairs.erase(pairs.begin());
        const Monomial& lmi = basis[i].poly.leading_monomial();
        const Monomial& lmj = basis[j].poly.leading_monomial();
        Monomial l = Monomial::lcm(lmi, lmj);
        // product criterion: coprime leading monomials reduce to zero
        if (l.degree() == lmi.degree() + lmj.degree() && l == lmi * lmj) continue;
        Monomial ui = l.quotient(lmi), uj = l.quotient(lmj);
        Polynomial s = Polynomial::zero(vars);
        s.add_scaled(basis[i].poly, Rational(1), ui);
        s.add_scaled(basis[j].poly, Rational(-1), uj);
        ModuleVector rep_s =
            basis[i].rep.scaled(Polynomial::term(vars, ui, 1)) -
            basis[j].rep.scaled(Polynomial::term(vars, uj, 1));
        ModuleVector rep_r = ModuleVector::zero(vars, m);
        Polynomial r = reduce_tracked(s, rep_s, basis, rep_r);
        if (r.is_zero()) continue;
        TrackedPoly t{std::move(r), std::move(rep_r)};
        make_monic(t);
        basis.push_back(std::move(t));
        push_pairs_for(basis.size() - 1);
    }

    // minimalize: drop elements whose leading monomial is divisible by
    // another's
    std::vector<std::size_t> order(basis.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return GrevlexLess{}(basis[a].poly.leading_monomial(), basis[b].poly.leading_monomial());
    });
    std::vector<TrackedPoly> minimal;
    for (std::size_t k : order) {
        const Monomial& lm = basis[k].poly.leading_monomial();
        bool redundant = false;
        for (const auto& kept : minimal)
            if (kept.poly.leading_monomial().divides(lm)) {
                redundant = true;
                break;
            }
        if (!redundant) minimal.push_back(basis[k]);
    }

    // tail-reduce each element against the others until stable
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < minimal.size(); ++k) {
            std::vector<TrackedPoly> others;
            for (std::size_t l = 0; l < minimal.size(); ++l)
                if (l != k) others.push_back(minimal[l]);
            ModuleVector rep_r = ModuleVector::zero(vars, m);
            Polynomial r = reduce_tracked(minimal[k].poly, minimal[k].rep, others, rep_r);
            if (r != minimal[k].poly) {
                minimal[k].poly = std::move(r);
                minimal[k].rep = std::move(rep_r);
                make_monic(minimal[k]);
                changed = true;
            }
        }
    }

    // canonical output order: descending leading monomial
    std::reverse(minimal.begin(), minimal.end());

    GroebnerBasis gb;
    for (auto& t : minimal) {
        gb.elements.push_back(std::move(t.poly));
        gb.from_gens.push_back(std::move(t.rep));
    }

    // express each original generator over the final basis
    for (std::size_t j = 0; j < m; ++j) {
        DivisionResult d = divide_full(gens[j], gb.elements);
        if (!d.remainder.is_zero())
            throw Error("internal: generator does not reduce to zero over its own basis");
        gb.gens_from.push_back(ModuleVector(std::move(d.quotients)));
    }
    return gb;
}

std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens) {
    return buchberger_tracked(gens).elements;
}

Ideal::Ideal(std::vector<Polynomial> gens) : gens_(std::move(gens)) {
    if (gens_.empty()) throw Error("ideal needs at least one generator");
    gb_ = buchberger_tracked(gens_);
    for (const auto& g : gens_)
        if (g.vars()) {
            vars_ = g.vars();
            break;
        }
}

bool Ideal::is_unit() const {
    return gb_.elements.size() == 1 && gb_.elements[0].is_constant();
}

Polynomial normal_form(const Polynomial& p, const Ideal& I) {
    return divide_full(p, I.basis()).remainder;
}

MemberResult ideal_member(const Polynomial& p, const Ideal& I) {
    DivisionResult d = divide_full(p, I.basis());
    MemberResult res;
    if (!d.remainder.is_zero()) {
        res.member = false;
        res.cert.remainder = std::move(d.remainder);
        return res;
    }
    std::size_t m = I.generators().size();
    ModuleVector cof = ModuleVector::zero(p.vars() ? p.vars() : I.vars(), m);
    const auto& A = I.groebner().from_gens;
    for (std::size_t k = 0; k < I.basis().size(); ++k) {
        if (d.quotients[k].is_zero()) continue;
        cof = cof + A[k].scaled(d.quotients[k]);
    }
    res.member = true;
    res.cert.cofactors = std::move(cof);
    res.cert.remainder = Polynomial::zero(p.vars());
    return res;
}

std::vector<ModuleVector> syzygies(const std::vector<Polynomial>& gens) {
    GroebnerBasis gb = buchberger_tracked(gens);
    std::size_t m = gens.size();
    std::size_t s = gb.elements.size();
    VarList vars;
    for (const auto& g : gens)
        if (g.vars()) {
            vars = g.vars();
            break;
        }

    std::vector<ModuleVector> out;
    auto push_unique = [&](ModuleVector v) {
        if (v.is_zero()) return;
        for (const auto& w : out)
            if (w == v) return;
        out.push_back(std::move(v));
    };

    // Schreyer relations of the basis, mapped back to the generators.
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) {
            Monomial l = Monomial::lcm(gb.elements[i].leading_monomial(),
                                       gb.elements[j].leading_monomial());
            Monomial ui = l.quotient(gb.elements[i].leading_monomial());
            Monomial uj = l.quotient(gb.elements[j].leading_monomial());
            Polynomial sp = Polynomial::zero(vars);
            sp.add_scaled(gb.elements[i], Rational(1), ui);
            sp.add_scaled(gb.elements[j], Rational(-1), uj);
            DivisionResult d = divide_full(sp, gb.elements);
            if (!d.remainder.is_zero())
                throw Error("internal: S-polynomial of a Groebner basis did not reduce to zero");
            // sigma = ui*e_i - uj*e_j - q over the basis; map through A
            ModuleVector syzF = gb.from_gens[i].scaled(Polynomial::term(vars, ui, 1)) -
                                gb.from_gens[j].scaled(Polynomial::term(vars, uj, 1));
            for (std::size_t k = 0; k < s; ++k) {
                if (d.quotients[k].is_zero()) continue;
                syzF = syzF - gb.from_gens[k].scaled(d.quotients[k]);
            }
            push_unique(std::move(syzF));
        }
    }

    // rows of I - B*A
    for (std::size_t j = 0; j < m; ++j) {
        ModuleVector v = ModuleVector::zero(vars, m);
        v.entries[j] = Polynomial::constant(vars, 1);
        for (std::size_t k = 0; k < s; ++k) {
            if (gb.gens_from[j].entries[k].is_zero()) continue;
            v = v - gb.from_gens[k].scaled(gb.gens_from[j].entries[k]);
        }
        push_unique(std::move(v));
    }
    return out;
}

SubsetResult ideal_subset(const Ideal& I, const Ideal& J) {
    for (const auto& g : I.generators()) {
        if (!normal_form(g, J).is_zero()) return {false, g};
    }
    return {true, std::nullopt};
}

bool ideal_equal(const Ideal& I, const Ideal& J) {
    return ideal_subset(I, J).subset && ideal_subset(J, I).subset;
}

namespace {

Polynomial extend_vars(const Polynomial& p, const VarList& bigvars, std::size_t extra) {
    Polynomial q(bigvars);
    for (const auto& [mo, c] : p.terms()) {
        Monomial m(mo.exp);
        m.exp.resize(mo.exp.size() + extra, 0);
        q.add_term(m, c);
    }
    return q;
}

} // namespace

bool module_member(const ModuleVector& v, const std::vector<ModuleVector>& mod_gens) {
    if (v.is_zero()) return true;
    if (mod_gens.empty()) return false;
    std::size_t p = v.size();
    VarList vars;
    for (const auto& e : v.entries)
        if (e.vars()) {
            vars = e.vars();
            break;
        }
    if (!vars)
        for (const auto& g : mod_gens)
            for (const auto& e : g.entries)
                if (e.vars()) {
                    vars = e.vars();
                    break;
                }
    std::vector<std::string> names = *vars;
    for (std::size_t i = 0; i < p; ++i) names.push_back("_tag" + std::to_string(i + 1));
    VarList bigvars = make_vars(std::move(names));
    std::size_t n = vars->size();

    auto tag = [&](std::size_t i) { return Polynomial::variable(bigvars, n + i); };

    std::vector<Polynomial> jgens;
    for (const auto& g : mod_gens) {
        Polynomial w = Polynomial::zero(bigvars);
        for (std::size_t i = 0; i < p; ++i) w = w + extend_vars(g.entries[i], bigvars, p) * tag(i);
        if (!w.is_zero()) jgens.push_back(std::move(w));
    }
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) jgens.push_back(tag(i) * tag(j));

    Polynomial target = Polynomial::zero(bigvars);
    for (std::size_t i = 0; i < p; ++i) target = target + extend_vars(v.entries[i], bigvars, p) * tag(i);

    Ideal J(jgens);
    return normal_form(target, J).is_zero();
}

} // namespace detk
