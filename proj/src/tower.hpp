#pragma once

#include "artin_schreier.hpp"

namespace ssd4 {

// The fixed tower k((t)) c k((v)) with v^-2 - v^-1 = t^-1. The generator of
// its Galois group acts on v-polynomials by v^-1 |-> v^-1 + 1.

// sigma on representatives. Only non-positive exponents of v are supported
// (the image of a positive power is not polynomial); throws
// PositiveExponentPresent otherwise. An involution on its domain.
LaurentPoly<FieldElem> conjugate(const LaurentPoly<FieldElem>& f);

// Class-level sigma; well defined because the reduction rules commute with
// substitution by v^-1 + 1.
ASClass conjugate_class(const ASClass& c);

// N(c) = c + sigma(c). Additive, sigma-fixed, and zero exactly on the
// sigma-fixed classes.
ASClass norm_class(const ASClass& c);

// The class of Q(t^-1) in k((v)): substitute t^-1 = v^-2 + v^-1 and reduce.
// Input must be a polynomial in t^-1 (non-positive exponents).
ASClass pullback_class(const LaurentPoly<FieldElem>& q_in_t, const FieldRef& field);

// psi_eta: the class of eta^2 t^-1 v^-1 = eta^2 v^-3 + eta^2 v^-2 in k((v)).
ASClass psi(const FieldElem& eta);

// True iff sigma(c) = c, i.e. the degree-4 extension of k((t)) below c is
// Galois. False means the Galois closure is the dihedral group of order 8.
bool is_galois_over_base(const ASClass& c);

// True iff the norm class has different degree 2 (pole order 1). Requires a
// non-Galois class; throws NotD4 on sigma-fixed input.
bool is_supersimple(const ASClass& c);

/// The classified shape of a supersimple class: c = psi_eta + [Q(t^-1)] with
/// Q supported on odd negative exponents only.
struct SupersimpleDescription {
    FieldElem eta;
    LaurentPoly<FieldElem> q{Var::t};

    // d: conventionally 1 when Q = 0 or deg Q <= 1.
    int degree() const { return q.is_zero() ? 1 : std::max(1, -q.min_exp()); }
    int m() const { return (degree() - 1) / 2; }
    bool small_case() const { return degree() <= 1; }

    ASClass cls() const; // psi(eta) + pullback(q)
    void validate() const;
};

struct ClassifyResult {
    SupersimpleDescription desc;
    bool used_eta_plus_one = false; // second classification branch succeeded
    bool field_extended = false;    // solved in GF(2^{2n}) under auto-extend
};

// Inverts the construction eta |-> psi_eta + [Q]: recovers (eta, Q) from a
// supersimple class by solving eta^2 + eta = (norm leading coefficient) and
// peeling the sigma-fixed remainder degree by degree. Exactly one of the two
// Artin--Schreier roots descends; the other differs by the order-4 character
// above psi_1 and is retried automatically.
ClassifyResult classify_supersimple(const ASClass& c, bool auto_extend = false);

// max(4, 2 deg Q), which equals the different degree of the composite class.
int different_of_composite(const SupersimpleDescription& desc);

} // namespace ssd4
