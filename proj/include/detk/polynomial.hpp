#pragma once

#include "detk/errors.hpp"
#include "detk/monomial.hpp"
#include "detk/rational.hpp"

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace detk {

// Shared, immutable list of variable names. Polynomials over the same
// VarList are compatible; operations on mismatched lists throw.
using VarList = std::shared_ptr<const std::vector<std::string>>;

inline VarList make_vars(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

// A point of C^n used when evaluating polynomials numerically.
struct ComplexPoint {
    std::vector<std::complex<double>> z;

    ComplexPoint() = default;
    explicit ComplexPoint(std::vector<std::complex<double>> c) : z(std::move(c)) {}
    ComplexPoint(std::initializer_list<std::complex<double>> c) : z(c) {}
    static ComplexPoint real(const std::vector<double>& x) {
        ComplexPoint p;
        p.z.reserve(x.size());
        for (double v : x) p.z.emplace_back(v, 0.0);
        return p;
    }
    std::size_t dim() const { return z.size(); }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept in ascending grevlex order; no zero coefficients and no
// duplicate monomials are ever stored, so equality is structural.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrevlexLess>;

    Polynomial() = default;
    explicit Polynomial(VarList vars) : vars_(std::move(vars)) {}

    static Polynomial zero(const VarList& vars) { return Polynomial(vars); }
    static Polynomial constant(const VarList& vars, const Rational& c);
    // The monomial x_i (0-based index).
    static Polynomial variable(const VarList& vars, std::size_t i);
    static Polynomial term(const VarList& vars, Monomial m, const Rational& c);

    const VarList& vars() const { return vars_; }
    std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
    }
    int total_degree() const; // -1 for the zero polynomial

    // Leading data w.r.t. grevlex; precondition: nonzero.
    const Monomial& leading_monomial() const { return std::prev(terms_.end())->first; }
    const Rational& leading_coeff() const { return std::prev(terms_.end())->second; }

    Rational constant_term() const;
    Rational coeff(const Monomial& m) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(unsigned k) const;

    // Multiply by c * m in place.
    void add_scaled(const Polynomial& o, const Rational& c, const Monomial& m);
    void add_term(const Monomial& m, const Rational& c);

    std::string str() const;

    friend Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

private:
    VarList vars_;
    TermMap terms_;

    void check_compatible(const Polynomial& o) const;
};

// Formal partial derivative with respect to variable index i (0-based).
Polynomial derive(const Polynomial& p, std::size_t i);

// Numeric evaluation at a complex point, nested Horner over the last
// variable. Exact coefficients are converted to nearest doubles; overflow
// propagates as infinities rather than throwing.
std::complex<double> evaluate(const Polynomial& p, const ComplexPoint& z);

enum class PolyOp { Add, Sub, Mul, Pow };

// Dispatcher used by the CLI; `exponent` only applies to Pow.
Polynomial poly_arith(PolyOp op, const Polynomial& a, const Polynomial& b, unsigned exponent = 0);

} // namespace detk
