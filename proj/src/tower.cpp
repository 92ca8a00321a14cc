#include "tower.hpp"

#include <optional>

namespace ssd4 {

LaurentPoly<FieldElem> conjugate(const LaurentPoly<FieldElem>& f) {
    if (f.var() != Var::v)
        fail(Status::variable_mismatch, "conjugation acts on polynomials in v");
    if (!f.is_zero() && f.max_exp() > 0)
        fail(Status::positive_exponent_present,
             "conjugate of a positive power of v is not polynomial");
    LaurentPoly<FieldElem> out(Var::v);
    for (const auto& [e, c] : f.terms()) {
        // c * (v^-1 + 1)^(-e); binomial parity by Lucas: C(k,j) odd iff j & k == j.
        const int k = -e;
        for (int j = 0; j <= k; ++j)
            if ((j & k) == j) out.add_term(-j, c);
    }
    return out;
}

ASClass conjugate_class(const ASClass& c) {
    return ASClass::reduce(conjugate(c.representative()), c.field());
}

ASClass norm_class(const ASClass& c) {
    return ASClass::reduce(c.representative() + conjugate(c.representative()), c.field());
}

ASClass pullback_class(const LaurentPoly<FieldElem>& q_in_t, const FieldRef& field) {
    if (q_in_t.var() != Var::t)
        fail(Status::variable_mismatch, "pullback expects a polynomial in t");
    return ASClass::reduce(MixedPoly<FieldElem>::from_t_poly(q_in_t).expand_in_v(), field);
}

ASClass psi(const FieldElem& eta) {
    const FieldRef& f = eta.field();
    LaurentPoly<FieldElem> rep(Var::v);
    FieldElem e2 = eta.squared();
    rep.add_term(-3, e2);
    rep.add_term(-2, e2);
    return ASClass::reduce(rep, f);
}

bool is_galois_over_base(const ASClass& c) {
    if (c.is_zero()) fail(Status::zero_class, "the zero class defines no extension");
    if (c.var() != Var::v)
        fail(Status::variable_mismatch, "the Galois test applies to classes in v");
    return conjugate_class(c) == c;
}

bool is_supersimple(const ASClass& c) {
    if (is_galois_over_base(c))
        fail(Status::not_d4, "class is Galois over the base; no dihedral closure exists");
    return different_degree(norm_class(c)) == 2;
}

ASClass SupersimpleDescription::cls() const {
    return psi(eta) + pullback_class(q, eta.field());
}

void SupersimpleDescription::validate() const {
    if (eta.in_gf2())
        fail(eta.is_one() ? Status::eta_is_one : Status::invalid_argument,
             "eta must lie outside GF(2)");
    for (const auto& [e, c] : q.terms()) {
        if (e >= 0 || e % 2 == 0)
            fail(Status::invalid_argument, "Q must have odd negative exponents only");
    }
}

int different_of_composite(const SupersimpleDescription& desc) {
    return std::max(4, 2 * desc.degree());
}

namespace {

// One descent attempt for a fixed eta branch: peel g = c + psi_eta down to
// zero, reading off Q coefficient by coefficient. The substitution
// t^-1 = v^-2 + v^-1 is triangular in pole order: [c_d t^-d] has pole 2d - 1
// with leading coefficient c_d for odd d >= 3, and (sqrt(c_1) + c_1) v^-1 for
// d = 1. Returns nothing when the branch does not descend.
std::optional<LaurentPoly<FieldElem>> try_descend(const ASClass& c, const FieldElem& eta,
                                                  bool* needs_extension) {
    const FieldRef& field = eta.field();
    ASClass g = c + psi(eta);
    LaurentPoly<FieldElem> q(Var::t);
    while (!g.is_zero()) {
        const int p = g.pole_order();
        if (p % 4 == 1 && p > 1) {
            const int d = (p + 1) / 2;
            FieldElem cd = *g.representative().coeff(-p);
            q.add_term(-d, cd);
            g = g + pullback_class(LaurentPoly<FieldElem>::monomial(Var::t, -d, cd), field);
            if (g.pole_order() >= p) return std::nullopt; // not triangular: invalid input
        } else if (p == 1) {
            // Remaining alpha1 * v^-1 must be [c1 t^-1]; its leading
            // coefficient map is c1 |-> sqrt(c1) + c1, inverted through
            // x^2 + x = alpha1 with x = sqrt(c1).
            FieldElem alpha1 = *g.representative().coeff(-1);
            if (alpha1.trace() != 0) {
                if (needs_extension) *needs_extension = true;
                return std::nullopt;
            }
            FieldElem x = solve_artin_schreier(alpha1, false);
            FieldElem c1 = x.squared();
            if (!c1.is_zero()) q.add_term(-1, c1);
            ASClass expected = pullback_class(LaurentPoly<FieldElem>::monomial(Var::t, -1, c1), field);
            g = g + expected;
            if (!g.is_zero()) return std::nullopt;
        } else {
            return std::nullopt; // pole order 3 mod 4: a psi-shaped residue remains
        }
    }
    return q;
}

ClassifyResult classify_in_field(const ASClass& c, bool auto_extend, bool extended);

ClassifyResult classify_extended(const ASClass& c) {
    const FieldRef big = FieldSpec::get(2 * c.field()->degree());
    LaurentPoly<FieldElem> rep(c.var());
    for (const auto& [e, coeff] : c.representative().terms()) rep.add_term(e, embed(coeff, big));
    ClassifyResult r = classify_in_field(ASClass::reduce(rep, big), false, true);
    r.field_extended = true;
    return r;
}

ClassifyResult classify_in_field(const ASClass& c, bool auto_extend, bool extended) {
    if (!is_supersimple(c))
        fail(Status::descent_failed, "class is not supersimple (norm different degree != 2)");
    const FieldRef& field = c.field();

    // Norm = alpha * v^-1 with alpha != 0; eta solves eta^2 + eta = alpha.
    FieldElem alpha = *norm_class(c).representative().coeff(-1);
    if (alpha.trace() != 0) {
        if (auto_extend) return classify_extended(c);
        fail(Status::no_solution_in_field,
             "eta^2 + eta = " + alpha.to_string() + " has no root in GF(2^" +
                 std::to_string(field->degree()) + ")");
    }
    FieldElem eta = solve_artin_schreier(alpha, false);

    bool needs_extension = false;
    if (auto ql = try_descend(c, eta, &needs_extension)) {
        SupersimpleDescription d{eta, std::move(*ql)};
        d.validate();
        if (d.cls() != c) fail(Status::descent_failed, "re-substitution check failed"); // unreachable
        return ClassifyResult{std::move(d), false, extended};
    }
    FieldElem eta1 = eta + FieldElem::one(field);
    if (auto ql = try_descend(c, eta1, &needs_extension)) {
        SupersimpleDescription d{eta1, std::move(*ql)};
        d.validate();
        if (d.cls() != c) fail(Status::descent_failed, "re-substitution check failed"); // unreachable
        return ClassifyResult{std::move(d), true, extended};
    }
    if (needs_extension && auto_extend) return classify_extended(c);
    if (needs_extension)
        fail(Status::no_solution_in_field,
             "descent needs a square root chain outside GF(2^" +
                 std::to_string(field->degree()) + "); enable auto-extend");
    fail(Status::descent_failed, "neither eta branch descends; class is not of supersimple shape");
}

} // namespace

ClassifyResult classify_supersimple(const ASClass& c, bool auto_extend) {
    if (c.is_zero()) fail(Status::zero_class, "the zero class defines no extension");
    if (c.var() != Var::v)
        fail(Status::variable_mismatch, "classification applies to classes in v");
    return classify_in_field(c, auto_extend, false);
}

} // namespace ssd4
