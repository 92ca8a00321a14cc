#pragma once

#include <string>

#include "gf2.hpp"
#include "laurent.hpp"

namespace ssd4 {

/// Canonical representative of an Artin--Schreier class of k((z)): the coset
/// of f under y |-> y^2 - y, with k treated as the limit of its finite
/// approximations (every term of non-negative exponent is killable). The
/// canonical form keeps only strictly negative odd exponents; classes with
/// equal canonical forms define isomorphic C2-extensions.
class ASClass {
public:
    static ASClass zero(Var var, FieldRef field);
    // Canonical reduction: drop exponents >= 0, then fold each term c*x^-2m
    // into sqrt(c)*x^-m until every exponent is odd.
    static ASClass reduce(const LaurentPoly<FieldElem>& f, const FieldRef& field);

    const LaurentPoly<FieldElem>& representative() const noexcept { return rep_; }
    Var var() const noexcept { return rep_.var(); }
    const FieldRef& field() const noexcept { return field_; }

    bool is_zero() const noexcept { return rep_.is_zero(); }
    // 0 for the zero class, otherwise odd.
    int pole_order() const { return is_zero() ? 0 : -rep_.min_exp(); }

    ASClass operator+(const ASClass& o) const;
    bool operator==(const ASClass& o) const;
    bool operator!=(const ASClass& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    ASClass(FieldRef field, LaurentPoly<FieldElem> rep)
        : field_(std::move(field)), rep_(std::move(rep)) {}
    FieldRef field_;
    LaurentPoly<FieldElem> rep_;
};

// Degree of different of the C2-extension w^2 - w = rep: pole order + 1.
// The zero class is split, not an extension; asking for its different is a
// caller bug and throws ZeroClass.
int different_degree(const ASClass& c);

// Genus of the one-point compactification of the extension (a C2-cover of the
// line totally branched over one point): (pole order - 1) / 2.
int genus_katz_gabber(const ASClass& c);

// Exhaustive oracle for class equality, independent of the reduction rules:
// searches q supported on [-support_bound, -1] such that f1 - f2 - (q^2 - q)
// has no negative terms (non-negative residue is always killable). Guarded by
// |field|^support_bound <= 10^6; throws SearchSpaceTooLarge beyond that.
bool class_equal_bruteforce(const LaurentPoly<FieldElem>& f1, const LaurentPoly<FieldElem>& f2,
                            int support_bound, const FieldRef& field);

} // namespace ssd4
