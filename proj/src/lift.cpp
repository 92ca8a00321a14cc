#include "lift.hpp"

#include <sstream>

#include "parser.hpp"

namespace ssd4 {

namespace {

// ---------------------------------------------------------------------------
// Generic construction of the identity parts, instantiated with symbolic
// coefficients for the proof and with 2-adic numbers for certificates.

template <class C>
struct IdentityInputs {
    C one, s, beta, eta;
    std::optional<C> gamma;
    std::vector<C> q; // coefficient of t^-i at index i
    int m = 0;
    bool small = true;

    C num(int n) const {
        C acc = one - one; // zero
        C step = n >= 0 ? one : -one;
        for (int i = 0; i < (n >= 0 ? n : -n); ++i) acc = acc + step;
        return acc;
    }
};

template <class C>
MixedPoly<C> qprime_poly(const IdentityInputs<C>& in) {
    MixedPoly<C> r;
    for (size_t i = 0; i < in.q.size(); ++i) r.add_term(-static_cast<int>(i), 0, in.q[i]);
    return r;
}

template <class C>
std::vector<std::pair<std::string, MixedPoly<C>>> g_summands(const IdentityInputs<C>& in) {
    std::vector<std::pair<std::string, MixedPoly<C>>> out;
    out.emplace_back("1", MixedPoly<C>::constant(in.one));
    out.emplace_back("s*b*v^-1", MixedPoly<C>::monomial(0, -1, in.s * in.beta));
    if (!in.small)
        out.emplace_back("s*g*t^-m", MixedPoly<C>::monomial(-in.m, 0, in.s * *in.gamma));
    return out;
}

template <class C>
std::vector<std::pair<std::string, MixedPoly<C>>> f_summands(const IdentityInputs<C>& in) {
    const C two = in.num(2);
    const C b2 = in.beta * in.beta;
    const MixedPoly<C> qp = qprime_poly(in);
    std::vector<std::pair<std::string, MixedPoly<C>>> out;
    out.emplace_back("Q'", qp);
    out.emplace_back("-e*b^2*t^-1*v^-1", MixedPoly<C>::monomial(-1, -1, -(in.eta * b2)));
    out.emplace_back("-2*e*v^-1*Q'", qp * MixedPoly<C>::monomial(0, -1, -(two * in.eta)));
    if (!in.small) {
        const C g = *in.gamma;
        out.emplace_back("-e*g^2*t^-2m*v^-1",
                         MixedPoly<C>::monomial(-2 * in.m, -1, -(in.eta * g * g)));
        out.emplace_back("-s*e*g*t^-m*v^-1",
                         MixedPoly<C>::monomial(-in.m, -1, -(in.s * in.eta * g)));
        out.emplace_back("-g*b*t^-m*v^-1",
                         MixedPoly<C>::monomial(-in.m, -1, -(g * in.beta)));
    }
    return out;
}

// The middle factor 1 + 2 b^2 t^-1 [+ 2 g^2 t^-2m + 2 s g t^-m] + 4 Q'.
template <class C>
MixedPoly<C> mid_factor(const IdentityInputs<C>& in) {
    const C two = in.num(2);
    const C four = in.num(4);
    MixedPoly<C> r = MixedPoly<C>::constant(in.one);
    r.add_term(-1, 0, two * in.beta * in.beta);
    if (!in.small) {
        const C g = *in.gamma;
        r.add_term(-2 * in.m, 0, two * g * g);
        r.add_term(-in.m, 0, two * in.s * g);
    }
    return r + qprime_poly(in).scaled(four);
}

template <class C>
MixedPoly<C> one_minus_2ev(const IdentityInputs<C>& in) {
    MixedPoly<C> r = MixedPoly<C>::constant(in.one);
    r.add_term(0, -1, -(in.num(2) * in.eta));
    return r;
}

template <class C>
MixedPoly<C> sum_except(const std::vector<std::pair<std::string, MixedPoly<C>>>& parts,
                        size_t skip) {
    MixedPoly<C> acc;
    for (size_t i = 0; i < parts.size(); ++i)
        if (i != skip) acc = acc + parts[i].second;
    return acc;
}

constexpr size_t kNoSkip = static_cast<size_t>(-1);

// Residual of (1 - 2 e v^-1) * M - (G^2 + 4 F), expanded in v. Identically
// zero exactly when the identity holds for the given inputs.
template <class C>
LaurentPoly<C> identity_residual(const IdentityInputs<C>& in, size_t skip_f, size_t skip_g,
                                 size_t* coefficients_checked = nullptr) {
    const MixedPoly<C> G = sum_except(g_summands(in), skip_g);
    const MixedPoly<C> F = sum_except(f_summands(in), skip_f);
    const MixedPoly<C> lhs = one_minus_2ev(in) * mid_factor(in);
    const MixedPoly<C> rhs = G * G + F.scaled(in.num(4));
    LaurentPoly<C> le = lhs.expand_in_v();
    LaurentPoly<C> re = rhs.expand_in_v();
    if (coefficients_checked) {
        std::map<int, bool> exps;
        for (const auto& [e, c] : le.terms()) exps[e] = true;
        for (const auto& [e, c] : re.terms()) exps[e] = true;
        *coefficients_checked = exps.size();
    }
    return le - re;
}

IdentityInputs<SymElem> symbolic_inputs(bool small_case, int m) {
    IdentityInputs<SymElem> in;
    in.one = SymElem::integer(1);
    in.s = SymElem::variable(kSymS);
    in.beta = SymElem::variable(kSymBeta);
    in.eta = SymElem::variable(kSymEta);
    in.small = small_case;
    in.m = small_case ? 0 : m;
    if (!small_case) in.gamma = SymElem::variable(kSymGamma);
    const int count = small_case ? 2 : 2 * m; // deg <= 1, resp. deg < 2m
    for (int i = 0; i < count; ++i) in.q.push_back(SymElem::q_coeff(i));
    return in;
}

std::string sym_coeff_text(const SymElem& c) {
    return c.to_string();
}
bool sym_coeff_compound(const SymElem& c) {
    return c.term_count() > 1;
}

IdentityReport run_symbolic(bool small_case, int m, size_t skip_f, size_t skip_g,
                            std::string mutated) {
    if (!small_case && m < 1)
        fail(Status::invalid_argument, "the general identity requires m >= 1");
    IdentityInputs<SymElem> in = symbolic_inputs(small_case, m);
    IdentityReport rep;
    rep.small_case = small_case;
    rep.m = in.m;
    rep.mutated_term = std::move(mutated);
    LaurentPoly<SymElem> res = identity_residual(in, skip_f, skip_g, &rep.coefficients_checked);
    rep.holds = res.is_zero();
    rep.residual = rep.holds
                       ? "0"
                       : poly_to_string<SymElem>(res, &sym_coeff_text, &sym_coeff_compound);
    if (!rep.holds && skip_f == kNoSkip && skip_g == kNoSkip)
        fail(Status::identity_failed, "identity residual is nonzero: " + rep.residual);
    return rep;
}

} // namespace

IdentityReport verify_identity_small() {
    return run_symbolic(true, 0, kNoSkip, kNoSkip, "");
}

IdentityReport verify_identity_general(int m) {
    return run_symbolic(false, m, kNoSkip, kNoSkip, "");
}

std::vector<std::string> identity_term_names(bool small_case, MutTarget which) {
    IdentityInputs<SymElem> in = symbolic_inputs(small_case, small_case ? 0 : 1);
    std::vector<std::string> names;
    if (which == MutTarget::F)
        for (const auto& [name, part] : f_summands(in)) names.push_back(name);
    else
        for (const auto& [name, part] : g_summands(in)) names.push_back(name);
    return names;
}

IdentityReport verify_identity_mutated(bool small_case, int m, MutTarget which, size_t index) {
    const auto names = identity_term_names(small_case, which);
    if (index >= names.size()) fail(Status::invalid_argument, "mutation index out of range");
    size_t skip_f = which == MutTarget::F ? index : kNoSkip;
    size_t skip_g = which == MutTarget::G ? index : kNoSkip;
    return run_symbolic(small_case, m, skip_f, skip_g,
                        std::string(which == MutTarget::F ? "F: " : "G: ") + names[index]);
}

// ---------------------------------------------------------------------------
// Certificate construction.

namespace {

IdentityInputs<WittB> numeric_inputs(const LiftCertificate& cert) {
    IdentityInputs<WittB> in;
    in.one = WittB::from_int(cert.ring, 1);
    in.s = WittB::s(cert.ring);
    in.beta = WittB::beta(cert.ring);
    in.eta = WittB::scalar(cert.ring, cert.eta);
    in.small = cert.small_case;
    in.m = cert.m;
    if (cert.gamma) in.gamma = WittB::scalar(cert.ring, *cert.gamma);
    const int count = cert.small_case ? 2 : 2 * cert.m;
    for (int i = 0; i < count; ++i) {
        const WittB* c = cert.q_prime.coeff(-i);
        in.q.push_back(c ? *c : WittB::from_int(cert.ring, 0));
    }
    return in;
}

// Exact division of a v-polynomial (non-positive exponents) by 1 - c v^-1,
// working upward from the unit constant term. Returns the quotient and
// whether the division was exact (fully verified by multiplying back).
std::pair<LaurentPoly<WittB>, bool> divide_one_minus(const LaurentPoly<WittB>& a, const WittB& c) {
    LaurentPoly<WittB> quot(Var::v);
    if (a.is_zero()) return {quot, true};
    if (a.max_exp() > 0)
        fail(Status::positive_exponent_present, "division expects non-positive exponents");
    const int depth = -a.min_exp();
    WittB prev = c - c; // zero
    for (int k = 0; k < depth; ++k) {
        const WittB* ak = a.coeff(-k);
        WittB ck = ak ? *ak + c * prev : c * prev;
        quot.add_term(-k, ck);
        prev = ck;
    }
    LaurentPoly<WittB> divisor(Var::v);
    divisor.add_term(0, c.one_like());
    divisor.add_term(-1, -c);
    return {quot, divisor * quot == a};
}

// Rewrites a v-polynomial as a polynomial in t^-1 = v^-2 - v^-1, peeling the
// deepest term; fails when an odd v-degree survives (the input was not in
// the image of R[t^-1]).
LaurentPoly<WittB> unsubstitute_to_t(LaurentPoly<WittB> p) {
    LaurentPoly<WittB> h(Var::t);
    if (p.is_zero()) return h;
    if (p.max_exp() > 0)
        fail(Status::positive_exponent_present, "cannot rewrite positive powers of v in t");
    while (!p.is_zero()) {
        const int k = -p.min_exp();
        const WittB c = *p.coeff(-k);
        if (k % 2 != 0)
            fail(Status::identity_failed,
                 "quotient is not a polynomial in t^-1 (odd v-degree " + std::to_string(k) + ")");
        const int j = k / 2;
        h.add_term(-j, c);
        p = p - MixedPoly<WittB>::monomial(-j, 0, c).expand_in_v();
    }
    return h;
}

// Expected reduction of F per the lift identities: Q'-bar plus
// eta b^2 v^-1 t^-1 [+ eta g^2 t^-2m v^-1 + b g t^-m v^-1].
MixedPoly<FieldElem> expected_f_bar(const LiftCertificate& cert) {
    const FieldElem eta_bar = cert.eta.reduce_mod2();
    const FieldElem beta_bar = cert.ring->beta_bar;
    MixedPoly<FieldElem> r = MixedPoly<FieldElem>::from_t_poly(reduce_mod2(cert.q_prime));
    r.add_term(-1, -1, eta_bar * beta_bar * beta_bar);
    if (!cert.small_case) {
        const FieldElem gamma_bar = cert.gamma->reduce_mod2();
        r.add_term(-2 * cert.m, -1, eta_bar * gamma_bar * gamma_bar);
        r.add_term(-cert.m, -1, beta_bar * gamma_bar);
    }
    return r;
}

} // namespace

MixedPoly<FieldElem> reduce_mod2(const MixedPoly<WittB>& p) {
    MixedPoly<FieldElem> r;
    for (const auto& [k, c] : p.terms()) r.add_term(k.first, k.second, c.reduce_mod2());
    return r;
}

LaurentPoly<FieldElem> reduce_mod2(const LaurentPoly<WittB>& p) {
    LaurentPoly<FieldElem> r(p.var());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c.reduce_mod2());
    return r;
}

std::pair<int, int> genus_report(const LiftCertificate& cert) {
    LaurentPoly<WittB> fv = cert.f.expand_in_v();
    if (fv.is_zero()) fail(Status::even_degree_f, "F vanishes; no genus");
    const int pole = -fv.min_exp();
    if (pole <= 0 || pole % 2 == 0)
        fail(Status::even_degree_f, "v-degree of F is not odd positive");
    const int g2 = (pole - 1) / 2;
    return {g2, 2 * g2};
}

KummerReport kummer_analysis(const LiftCertificate& cert) {
    if (cert.h.is_zero()) fail(Status::invalid_argument, "certificate has no H");
    const LiftRing& ring = cert.ring;
    const WittB one = WittB::from_int(ring, 1);
    const WittB two = WittB::from_int(ring, 2);
    const WittB four = WittB::from_int(ring, 4);
    const WittB eta_b = WittB::scalar(ring, cert.eta);

    const int deg_h = -cert.h.min_exp();
    // Evaluate H at the conjugate point t^-1 = (1 - 2 eta) / (4 eta^2),
    // cleared of denominators by (4 eta^2)^deg_h.
    const WittB scale_num = one - two * eta_b; // numerator of t^-1
    const WittB scale_den = four * eta_b * eta_b;
    std::vector<WittB> num_pow{one}, den_pow{one};
    for (int i = 1; i <= deg_h; ++i) {
        num_pow.push_back(num_pow.back() * scale_num);
        den_pow.push_back(den_pow.back() * scale_den);
    }
    WittB h_scaled = WittB::from_int(ring, 0);
    for (const auto& [e, c] : cert.h.terms()) {
        const int j = -e;
        h_scaled = h_scaled + c * num_pow[static_cast<size_t>(j)] *
                                  den_pow[static_cast<size_t>(deg_h - j)];
    }
    // (1 - 2 eta v^-1) at the conjugate point equals 2 (1 - eta).
    const WittB witness_scaled = two * (one - eta_b) * h_scaled;

    KummerReport rep;
    rep.branch_locus = {"v = 0", "v = 2*eta",
                        "zeros of H (degree " + std::to_string(deg_h) + " in t^-1)"};
    rep.conjugate_point = "v = 2*eta/(2*eta - 1)";
    rep.witness_valuation = 2 - 2 * deg_h;
    if (!witness_scaled.divisible_by_pow2(2))
        fail(Status::not_a_unit, "scaled witness is not divisible by 4; inconclusive");
    const WittB unit = witness_scaled.shift_down(2);
    if (!unit.is_certified_unit())
        fail(Status::not_a_unit,
             "witness reduces to zero at stored precision; inconclusive (raise precision)");
    rep.witness_text = unit.to_string();
    rep.certified_nonzero = true;
    rep.branch_points_over_c2 = 2;
    return rep;
}

bool reduction_matches(const LiftCertificate& cert, const SupersimpleDescription& desc,
                       std::string* diff) {
    if (!(*cert.field == *desc.eta.field()))
        fail(Status::field_mismatch, "certificate and description fields differ");
    std::ostringstream why;

    const MixedPoly<FieldElem> g_bar = reduce_mod2(cert.g);
    const bool g_ok =
        g_bar == MixedPoly<FieldElem>::constant(FieldElem::one(cert.field));
    if (!g_ok) why << "G does not reduce to 1 (got " << to_text(g_bar) << ")\n";

    const FieldElem eta_bar = cert.eta.reduce_mod2();
    const MixedPoly<FieldElem> f_bar = reduce_mod2(cert.f);
    const ASClass cls_f = ASClass::reduce(f_bar.expand_in_v(), cert.field);

    // Intermediate form [eta^2 t^-1 v^-1 + Q' + eta gamma^2 t^-(2m+1)].
    MixedPoly<FieldElem> inter;
    inter.add_term(-1, -1, eta_bar.squared());
    inter = inter + MixedPoly<FieldElem>::from_t_poly(reduce_mod2(cert.q_prime));
    if (!cert.small_case) {
        const FieldElem gamma_bar = cert.gamma->reduce_mod2();
        inter.add_term(-(2 * cert.m + 1), 0, eta_bar * gamma_bar.squared());
    }
    const ASClass cls_inter = ASClass::reduce(inter.expand_in_v(), cert.field);
    const ASClass cls_desc = desc.cls();

    const bool f_ok = cls_f == cls_inter;
    const bool desc_ok = cls_inter == cls_desc;
    if (!f_ok || !desc_ok) {
        const MixedPoly<FieldElem> expect = expected_f_bar(cert);
        for (const auto& [k, c] : (f_bar - expect).terms())
            why << "F-bar differs at t^" << k.first << "*v^" << k.second << " by "
                << c.to_string() << "\n";
        if (!f_ok)
            why << "[F-bar] = " << cls_f.to_string() << " vs intermediate "
                << cls_inter.to_string() << "\n";
        if (!desc_ok)
            why << "intermediate class " << cls_inter.to_string() << " vs description "
                << cls_desc.to_string() << "\n";
    }
    if (diff) *diff = why.str();
    return g_ok && f_ok && desc_ok;
}

LiftCertificate construct_lift(const SupersimpleDescription& desc, unsigned precision) {
    desc.validate();
    const FieldRef& field = desc.eta.field();
    for (const auto& [e, c] : desc.q.terms())
        if (!(*c.field() == *field))
            fail(Status::field_mismatch, "Q coefficients live in a different field than eta");
    if (precision < 8 || precision > 64)
        fail(Status::invalid_argument, "precision must be between 8 and 64 bits");

    LiftCertificate cert;
    cert.field = field;
    cert.precision = precision;
    cert.eta_bar = desc.eta;
    cert.q_bar = desc.q;
    const int d = desc.degree();
    cert.small_case = d <= 1;
    cert.m = cert.small_case ? 0 : (d - 1) / 2;

    cert.eta = WittW::scalar(WittU::lift(desc.eta, precision));
    cert.ring = LiftRingCtx::make(cert.eta);

    LaurentPoly<FieldElem> q_prime_bar(Var::t);
    if (cert.small_case) {
        q_prime_bar = desc.q;
    } else {
        const FieldElem lead = *desc.q.coeff(-d);
        const FieldElem gamma_bar = (lead * desc.eta.inverse()).sqrt();
        cert.gamma = WittW::scalar(WittU::lift(gamma_bar, precision));
        for (const auto& [e, c] : desc.q.terms())
            if (e != -d) q_prime_bar.add_term(e, c);
    }
    cert.q_prime = LaurentPoly<WittB>(Var::t);
    for (const auto& [e, c] : q_prime_bar.terms())
        cert.q_prime.add_term(e, WittB::lift(cert.ring, c));

    const IdentityInputs<WittB> in = numeric_inputs(cert);
    cert.g = sum_except(g_summands(in), kNoSkip);
    cert.f = sum_except(f_summands(in), kNoSkip);

    // H by exact division of G^2 + 4F by (1 - 2 eta v^-1), then rewritten as
    // a polynomial in t^-1. Cross-checked against the identity's middle
    // factor.
    const MixedPoly<WittB> rhs = cert.g * cert.g + cert.f.scaled(in.num(4));
    const LaurentPoly<WittB> a = rhs.expand_in_v();
    auto [h_v, exact] = divide_one_minus(a, in.num(2) * in.eta);
    cert.h = unsubstitute_to_t(h_v);
    const LaurentPoly<WittB> mid = mid_factor(in).as_t_poly();
    cert.flags.h_division_exact = exact && cert.h == mid;

    cert.flags.identity_verified = identity_residual(in, kNoSkip, kNoSkip).is_zero();

    cert.flags.g_reduces_to_one =
        reduce_mod2(cert.g) == MixedPoly<FieldElem>::constant(FieldElem::one(field));
    cert.flags.reduction_matches = reduction_matches(cert, desc, nullptr);

    try {
        KummerReport kr = kummer_analysis(cert);
        cert.flags.non_galois_witness_unit = kr.certified_nonzero;
        cert.witness_valuation = kr.witness_valuation;
        cert.witness_certified = kr.certified_nonzero;
        cert.witness_text = kr.witness_text;
    } catch (const Error& e) {
        if (e.code() != Status::not_a_unit) throw;
        cert.flags.non_galois_witness_unit = false;
        cert.witness_certified = false;
        cert.witness_text = "";
    }

    const auto [g2, g3] = genus_report(cert);
    cert.g2 = g2;
    cert.g3 = g3;
    const LaurentPoly<FieldElem> f_bar_v = reduce_mod2(cert.f).expand_in_v();
    const int pole_bar = f_bar_v.is_zero() ? 0 : -f_bar_v.min_exp();
    // Hurwitz consistency 2 g3 - 2 = 2 (2 g2 - 2) + 2, the matching pole order
    // of the reduction, and the tie-back to the composite different degree.
    cert.flags.genus_consistent = (2 * g3 - 2 == 2 * (2 * g2 - 2) + 2) &&
                                  (pole_bar == 2 * g2 + 1) &&
                                  (2 * g2 + 2 == different_of_composite(desc));
    return cert;
}

VerifyReport verify_certificate(const LiftCertificate& cert) {
    VerifyReport rep;
    auto add = [&](std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    const IdentityInputs<WittB> in = numeric_inputs(cert);

    const MixedPoly<WittB> g_expect = sum_except(g_summands(in), kNoSkip);
    const MixedPoly<WittB> f_expect = sum_except(f_summands(in), kNoSkip);
    add("formula_match", cert.g == g_expect && cert.f == f_expect,
        "F and G agree with the construction formulas for (eta, gamma, m, Q')");

    const bool identity_ok = identity_residual(in, kNoSkip, kNoSkip).is_zero();
    add("identity_instance", identity_ok, "(1 - 2 eta v^-1) * M = G^2 + 4F at the stored values");

    const LaurentPoly<WittB> a = (cert.g * cert.g + cert.f.scaled(in.num(4))).expand_in_v();
    LaurentPoly<WittB> divisor(Var::v);
    divisor.add_term(0, in.one);
    divisor.add_term(-1, -(in.num(2) * in.eta));
    MixedPoly<WittB> h_mixed = MixedPoly<WittB>::from_t_poly(cert.h);
    const bool division_ok = divisor * h_mixed.expand_in_v() == a;
    add("h_division_exact", division_ok, "(1 - 2 eta v^-1) * H = G^2 + 4F");

    const bool g_reduce_ok =
        reduce_mod2(cert.g) == MixedPoly<FieldElem>::constant(FieldElem::one(cert.field));
    add("g_reduces_to_one", g_reduce_ok, "G is 1 modulo 2");

    std::string diff;
    const bool red_ok = reduction_matches(cert, cert.description(), &diff);
    add("reduction_matches", red_ok, red_ok ? "[F-bar] = class of description" : diff);

    bool witness_ok = false;
    std::string witness_detail;
    try {
        KummerReport kr = kummer_analysis(cert);
        witness_ok = kr.certified_nonzero;
        witness_detail = "certified unit, witness valuation " +
                         std::to_string(kr.witness_valuation);
    } catch (const Error& e) {
        witness_detail = e.what();
    }
    add("non_galois_witness_unit", witness_ok, witness_detail);

    bool genus_ok = false;
    std::string genus_detail;
    try {
        const auto [g2, g3] = genus_report(cert);
        const LaurentPoly<FieldElem> f_bar_v = reduce_mod2(cert.f).expand_in_v();
        const int pole_bar = f_bar_v.is_zero() ? 0 : -f_bar_v.min_exp();
        genus_ok = g2 == cert.g2 && g3 == cert.g3 &&
                   2 * g3 - 2 == 2 * (2 * g2 - 2) + 2 && pole_bar == 2 * g2 + 1 &&
                   2 * g2 + 2 == different_of_composite(cert.description());
        genus_detail = "g2 = " + std::to_string(g2) + ", g3 = " + std::to_string(g3);
    } catch (const Error& e) {
        genus_detail = e.what();
    }
    add("genus_consistent", genus_ok, genus_detail);

    const bool flags_ok = cert.flags.identity_verified == identity_ok &&
                          cert.flags.h_division_exact == division_ok &&
                          cert.flags.g_reduces_to_one == g_reduce_ok &&
                          cert.flags.reduction_matches == red_ok &&
                          cert.flags.non_galois_witness_unit == witness_ok &&
                          cert.flags.genus_consistent == genus_ok;
    add("flags_consistent", flags_ok, "stored flags equal the recomputed checks");

    rep.all_ok = true;
    for (const auto& c : rep.checks) rep.all_ok = rep.all_ok && c.ok;
    return rep;
}

} // namespace ssd4
