#include "detk/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace detk {

Polynomial Polynomial::constant(const VarList& vars, const Rational& c) {
    Polynomial p(vars);
    if (c != 0) p.terms_.emplace(Monomial(vars->size()), c);
    return p;
}

Polynomial Polynomial::variable(const VarList& vars, std::size_t i) {
    if (i >= vars->size()) throw IndexError("variable index out of range");
    Monomial m(vars->size());
    m.exp[i] = 1;
    Polynomial p(vars);
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

Polynomial Polynomial::term(const VarList& vars, Monomial m, const Rational& c) {
    Polynomial p(vars);
    if (c != 0) p.terms_.emplace(std::move(m), c);
    return p;
}

void Polynomial::check_compatible(const Polynomial& o) const {
    if (vars_ == o.vars_) return;
    if (vars_ && o.vars_ && *vars_ == *o.vars_) return;
    throw VariableMismatchError("polynomials over different variable lists");
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

Rational Polynomial::constant_term() const {
    if (terms_.empty()) return Rational(0);
    const auto& first = *terms_.begin();
    return first.first.is_constant() ? first.second : Rational(0);
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Polynomial::add_scaled(const Polynomial& o, const Rational& c, const Monomial& m) {
    check_compatible(o);
    if (c == 0) return;
    for (const auto& [mo, co] : o.terms_) add_term(mo * m, co * c);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(vars_ ? vars_ : o.vars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(vars_);
    if (c == 0) return r;
    for (const auto& [m, co] : terms_) r.terms_.emplace(m, co * c);
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (vars_ && o.vars_ && !(vars_ == o.vars_ || *vars_ == *o.vars_)) return false;
    return terms_ == o.terms_;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial r = Polynomial::constant(vars_, 1);
    Polynomial base(*this);
    while (k > 0) {
        if (k & 1u) r = r * base;
        base = (k >>= 1) ? base * base : base;
    }
    return r;
}

Polynomial derive(const Polynomial& p, std::size_t i) {
    if (i >= p.nvars()) throw IndexError("derivative index out of range");
    Polynomial r(p.vars());
    for (const auto& [m, c] : p.terms()) {
        if (m.exp[i] == 0) continue;
        Monomial dm = m;
        dm.exp[i] -= 1;
        r.add_term(dm, c * m.exp[i]);
    }
    return r;
}

namespace {

using Term = Polynomial::TermMap::value_type;

// Horner recursion on the last active variable: group terms by its
// exponent and evaluate each group with the variable removed.
std::complex<double> eval_rec(const std::vector<const Term*>& terms, std::size_t var,
                              const ComplexPoint& z) {
    if (terms.empty()) return {0.0, 0.0};
    if (var == 0) {
        // only constants remain
        double s = 0;
        for (const Term* t : terms) s += to_double(t->second);
        return {s, 0.0};
    }
    std::size_t vi = var - 1;
    std::map<int, std::vector<const Term*>> groups;
    for (const Term* t : terms) groups[t->first.exp[vi]].push_back(t);
    // Horner from the highest exponent downward.
    std::complex<double> acc{0.0, 0.0};
    int prev_exp = -1;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        if (prev_exp >= 0) {
            int gap = prev_exp - it->first;
            for (int k = 0; k < gap; ++k) acc *= z.z[vi];
        }
        acc += eval_rec(it->second, vi, z);
        prev_exp = it->first;
    }
    for (int k = 0; k < prev_exp; ++k) acc *= z.z[vi];
    return acc;
}

} // namespace

std::complex<double> evaluate(const Polynomial& p, const ComplexPoint& z) {
    if (z.dim() != p.nvars()) throw IndexError("point dimension does not match variable count");
    std::vector<const Term*> ts;
    ts.reserve(p.terms().size());
    for (const auto& t : p.terms()) ts.push_back(&t);
    return eval_rec(ts, p.nvars(), z);
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // descending grevlex: leading term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        bool printed_coeff = false;
        if (a != 1 || m.is_constant()) {
            out << a.str();
            printed_coeff = true;
        }
        bool first_var = true;
        for (std::size_t i = 0; i < m.exp.size(); ++i) {
            if (m.exp[i] == 0) continue;
            if (printed_coeff || !first_var) out << "*";
            out << (*vars_)[i];
            if (m.exp[i] > 1) out << "^" << m.exp[i];
            first_var = false;
        }
        first = false;
    }
    return out.str();
}

Polynomial poly_arith(PolyOp op, const Polynomial& a, const Polynomial& b, unsigned exponent) {
    switch (op) {
        case PolyOp::Add: return a + b;
        case PolyOp::Sub: return a - b;
        case PolyOp::Mul: return a * b;
        case PolyOp::Pow: return a.pow(exponent);
    }
    throw Error("unreachable");
}

} // namespace detk
