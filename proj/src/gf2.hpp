#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ssd4 {

class FieldSpec;
using FieldRef = std::shared_ptr<const FieldSpec>;

/// Description of GF(2^n) = GF(2)[a]/(modulus). Instances are canonical
/// per-degree singletons obtained through FieldSpec::get; the modulus table is
/// fixed so that the same n always denotes the same field representation.
class FieldSpec {
public:
    // Supported degrees: 1, 2, 3, 4, 8, 16, 32. Throws UnsupportedField otherwise.
    static FieldRef get(unsigned n);

    unsigned degree() const noexcept { return n_; }
    // Bit i is the coefficient of a^i; bit n (the leading 1) is included.
    std::uint64_t modulus() const noexcept { return modulus_; }
    std::uint64_t element_mask() const noexcept { return n_ == 64 ? ~0ull : ((1ull << n_) - 1); }
    std::string modulus_text() const; // e.g. "a^8+a^4+a^3+a^2+1"
    std::string name() const;         // "gf2" or "gf2_<n>"

    bool operator==(const FieldSpec& o) const noexcept { return n_ == o.n_; }

protected:
    FieldSpec(unsigned n, std::uint64_t modulus) : n_(n), modulus_(modulus) {}

private:
    unsigned n_;
    std::uint64_t modulus_;
};

// True iff f (bit i = coeff of x^i, degree = position of top bit) has no
// nontrivial divisor; checked by trial division over all lower-degree
// polynomials. Used to validate the modulus table at first use.
bool gf2_poly_irreducible(std::uint64_t f);

/// An element of GF(2^n) with value semantics. Arithmetic between elements of
/// different fields throws FieldMismatch; use embed() to move between a field
/// and its quadratic extension.
class FieldElem {
public:
    FieldElem() = default; // null element; only usable as assignment target
    FieldElem(FieldRef field, std::uint64_t bits);

    static FieldElem zero(const FieldRef& f) { return FieldElem(f, 0); }
    static FieldElem one(const FieldRef& f) { return FieldElem(f, 1); }
    static FieldElem gen(const FieldRef& f); // the class of a; equals 1 in GF(2)

    const FieldRef& field() const noexcept { return field_; }
    std::uint64_t bits() const noexcept { return bits_; }

    bool is_zero() const noexcept { return bits_ == 0; }
    bool is_one() const noexcept { return bits_ == 1; }
    bool in_gf2() const noexcept { return bits_ <= 1; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const { return *this + o; }
    FieldElem operator-() const { return *this; }
    FieldElem operator*(const FieldElem& o) const;
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    FieldElem squared() const { return *this * *this; }
    // The unique square root (Frobenius is bijective in characteristic 2).
    FieldElem sqrt() const;
    // Multiplicative inverse; throws NotAUnit on zero.
    FieldElem inverse() const;
    // Absolute trace down to GF(2), returned as 0 or 1.
    int trace() const;

    FieldElem one_like() const { return FieldElem(field_, 1); }

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    // Lexicographic on the coefficient vector (c0, c1, ...).
    bool lex_less(const FieldElem& o) const;

    std::string to_string() const; // "0", "1", "a", "a^3+a+1", ...

private:
    FieldRef field_;
    std::uint64_t bits_ = 0;
};

// Solves y^2 + y = alpha. Requires Tr(alpha) = 0; if the trace is 1 and
// auto_extend is set, the equation is solved in GF(2^{2n}) instead and the
// result lives there. Of the two roots {y, y+1} the one with constant
// coefficient 0 (the lexicographically smaller bit-vector) is returned.
FieldElem solve_artin_schreier(const FieldElem& alpha, bool auto_extend = false);

// Canonical embedding GF(2^n) -> GF(2^{2n}) (or the identity when the fields
// agree): the generator is sent to the lexicographically smallest root of the
// small modulus in the big field. Throws UnsupportedField when the target
// degree is not in the modulus table.
FieldElem embed(const FieldElem& x, const FieldRef& target);

// Deterministic sample for property tests: the element with bit pattern
// derived from the given index.
FieldElem elem_from_index(const FieldRef& f, std::uint64_t index);

} // namespace ssd4
