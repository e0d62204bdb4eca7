#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace detk {

// Exponent vector of a power product. Length always equals the ambient
// variable count of the polynomial that owns it.
struct Monomial {
    std::vector<int> exp;

    Monomial() = default;
    explicit Monomial(std::size_t n) : exp(n, 0) {}
    explicit Monomial(std::vector<int> e) : exp(std::move(e)) {}

    int degree() const { return std::accumulate(exp.begin(), exp.end(), 0); }
    std::size_t nvars() const { return exp.size(); }
    bool is_constant() const {
        for (int e : exp)
            if (e != 0) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return exp == o.exp; }

    Monomial operator*(const Monomial& o) const {
        Monomial r(exp);
        for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] += o.exp[i];
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < exp.size(); ++i)
            if (exp[i] > o.exp[i]) return false;
        return true;
    }

    // this / o, caller guarantees divisibility
    Monomial quotient(const Monomial& o) const {
        Monomial r(exp);
        for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] -= o.exp[i];
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a.exp);
        for (std::size_t i = 0; i < a.exp.size(); ++i)
            if (b.exp[i] > r.exp[i]) r.exp[i] = b.exp[i];
        return r;
    }
};

// Graded reverse lexicographic order: compare total degree first; on ties
// the monomial with the smaller exponent in the last differing variable
// is the larger one.
struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        for (std::size_t i = a.exp.size(); i-- > 0;) {
            if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
        }
        return false;
    }
};

} // namespace detk
