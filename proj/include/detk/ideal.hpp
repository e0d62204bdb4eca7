#pragma once

#include "detk/polynomial.hpp"

#include <optional>
#include <vector>

namespace detk {

// Element of the free module O^p over the polynomial ring.
struct ModuleVector {
    std::vector<Polynomial> entries;

    ModuleVector() = default;
    explicit ModuleVector(std::vector<Polynomial> e) : entries(std::move(e)) {}
    static ModuleVector zero(const VarList& vars, std::size_t p) {
        return ModuleVector(std::vector<Polynomial>(p, Polynomial::zero(vars)));
    }

    std::size_t size() const { return entries.size(); }
    bool is_zero() const {
        for (const auto& e : entries)
            if (!e.is_zero()) return false;
        return true;
    }
    bool operator==(const ModuleVector& o) const { return entries == o.entries; }

    ModuleVector operator+(const ModuleVector& o) const;
    ModuleVector operator-(const ModuleVector& o) const;
    ModuleVector scaled(const Polynomial& c) const;
    std::string str() const;
};

// p = sum_i cofactors_i * gen_i + remainder, exactly.
struct Certificate {
    ModuleVector cofactors;
    Polynomial remainder;
};

struct MemberResult {
    bool member = false;
    Certificate cert; // remainder is the witness when !member
};

struct DivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};

// Full multivariate division: p = sum quotients_i * divisors_i + remainder,
// no monomial of the remainder divisible by any divisor's leading monomial.
// Divisors are tried first-to-last; the result is deterministic.
DivisionResult divide_full(const Polynomial& p, const std::vector<Polynomial>& divisors);

// Reduced Groebner basis with transformation data relative to the original
// generator list: elements[k] = sum_j from_gens[k][j] * gens[j], and
// gens[j] = sum_k gens_from[j][k] * elements[k].
struct GroebnerBasis {
    std::vector<Polynomial> elements;
    std::vector<ModuleVector> from_gens;
    std::vector<ModuleVector> gens_from;
};

GroebnerBasis buchberger_tracked(const std::vector<Polynomial>& gens);

// Reduced basis only (monic, pairwise reduced, sorted by leading monomial).
std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens);

// Generator list plus cached Groebner data. The basis is computed on
// construction; instances are immutable afterwards and safe to share.
class Ideal {
public:
    explicit Ideal(std::vector<Polynomial> gens);

    const std::vector<Polynomial>& generators() const { return gens_; }
    const std::vector<Polynomial>& basis() const { return gb_.elements; }
    const GroebnerBasis& groebner() const { return gb_; }
    const VarList& vars() const { return vars_; }
    bool is_unit() const;

private:
    std::vector<Polynomial> gens_;
    GroebnerBasis gb_;
    VarList vars_;
};

Polynomial normal_form(const Polynomial& p, const Ideal& I);

// Membership with explicit cofactors over the original generators.
MemberResult ideal_member(const Polynomial& p, const Ideal& I);

// Generators of the syzygy module of `gens`: Schreyer relations of the
// tracked basis mapped back through the transformation matrices, plus the
// rows of I - B*A. Every returned k satisfies sum k_i * gens_i = 0 exactly.
std::vector<ModuleVector> syzygies(const std::vector<Polynomial>& gens);

struct SubsetResult {
    bool subset = false;
    std::optional<Polynomial> witness; // failing generator of I when !subset
};

SubsetResult ideal_subset(const Ideal& I, const Ideal& J);
bool ideal_equal(const Ideal& I, const Ideal& J);

// Membership of v in the submodule of O^p generated by `mod_gens`,
// decided by ideal membership after adjoining one tag variable per
// component (quadratic tag products quotiented away).
bool module_member(const ModuleVector& v, const std::vector<ModuleVector>& mod_gens);

} // namespace detk
