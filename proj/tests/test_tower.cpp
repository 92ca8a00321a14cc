#include <doctest.h>

#include <random>

#include "parser.hpp"
#include "tower.hpp"

using namespace ssd4;

namespace {

LaurentPoly<FieldElem> vpoly(const char* expr, const FieldRef& f) {
    ParsedPoly p = parse_poly(expr, f);
    if (p.shape == ParsedPoly::Shape::in_v) return p.tv.expand_in_v();
    return p.single.retagged(Var::v);
}

} // namespace

TEST_CASE("conjugation is the defining involution") {
    FieldRef f4 = FieldSpec::get(2);
    CHECK(to_text(conjugate(vpoly("v^-1", f4))) == "v^-1 + 1");
    // t^-1 = v^-2 + v^-1 is fixed under sigma.
    LaurentPoly<FieldElem> t_inv = vpoly("v^-2 + v^-1", f4);
    CHECK(conjugate(t_inv) == t_inv);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        LaurentPoly<FieldElem> p(Var::v);
        for (int t = 0; t < 4; ++t)
            p.add_term(-static_cast<int>(rng() % 10), elem_from_index(f4, rng()));
        CHECK(conjugate(conjugate(p)) == p);
    }
    CHECK_THROWS_AS((void)conjugate(vpoly("v^2", f4)), Error);
}

TEST_CASE("class-level conjugation is representative independent") {
    // reduce(sigma(f)) must agree for every f in the same class: check by
    // shifting representatives with explicit coboundaries q^2 - q.
    FieldRef f4 = FieldSpec::get(2);
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 200; ++i) {
        LaurentPoly<FieldElem> f(Var::v), q(Var::v);
        for (int t = 0; t < 3; ++t) {
            f.add_term(-static_cast<int>(rng() % 7), elem_from_index(f4, rng()));
            q.add_term(-static_cast<int>(rng() % 4), elem_from_index(f4, rng()));
        }
        LaurentPoly<FieldElem> shifted = f + q * q + q; // same class in char 2
        ASClass c1 = conjugate_class(ASClass::reduce(f, f4));
        ASClass via = ASClass::reduce(conjugate(shifted), f4);
        CHECK(c1 == via);
    }
}

TEST_CASE("psi family fundamentals") {
    FieldRef f8 = FieldSpec::get(8);
    FieldElem a = FieldElem::gen(f8);
    CHECK(psi(FieldElem::zero(f8)).is_zero());
    // psi_a reduces to a^2 v^-3 + a v^-1: pole order 3.
    ASClass pa = psi(a);
    CHECK(pa.pole_order() == 3);
    CHECK(*pa.representative().coeff(-3) == a.squared());
    CHECK(*pa.representative().coeff(-1) == a);
    // the paper's sum rule psi_{eta+1} = psi_eta + psi_1, all eta in GF(2^8)
    FieldElem one = FieldElem::one(f8);
    for (std::uint64_t i = 0; i < 256; ++i) {
        FieldElem eta = elem_from_index(f8, i);
        CHECK(psi(eta + one) == psi(eta) + psi(one));
    }
    // pole order 3 whenever eta != 0
    for (std::uint64_t i = 1; i < 256; ++i)
        CHECK(psi(elem_from_index(f8, i)).pole_order() == 3);
}

TEST_CASE("norm of psi is the pulled back base class") {
    FieldRef f8 = FieldSpec::get(8);
    for (std::uint64_t i = 0; i < 256; ++i) {
        FieldElem eta = elem_from_index(f8, i);
        LaurentPoly<FieldElem> base(Var::t);
        base.add_term(-1, eta.squared());
        CHECK(norm_class(psi(eta)) == pullback_class(base, f8));
        // reduced form: (eta + eta^2) v^-1
        FieldElem expect = eta + eta.squared();
        if (expect.is_zero()) {
            CHECK(norm_class(psi(eta)).is_zero());
        } else {
            CHECK(*norm_class(psi(eta)).representative().coeff(-1) == expect);
        }
    }
}

TEST_CASE("norm is additive and sigma-fixed") {
    FieldRef f4 = FieldSpec::get(2);
    std::mt19937_64 rng(5150);
    for (int i = 0; i < 150; ++i) {
        LaurentPoly<FieldElem> p1(Var::v), p2(Var::v);
        for (int t = 0; t < 3; ++t) {
            p1.add_term(-static_cast<int>(rng() % 8), elem_from_index(f4, rng()));
            p2.add_term(-static_cast<int>(rng() % 8), elem_from_index(f4, rng()));
        }
        ASClass c1 = ASClass::reduce(p1, f4), c2 = ASClass::reduce(p2, f4);
        CHECK(norm_class(c1 + c2) == norm_class(c1) + norm_class(c2));
        ASClass n = norm_class(c1);
        if (!n.is_zero()) CHECK(conjugate_class(n) == n);
        CHECK(norm_class(ASClass::zero(Var::v, f4)).is_zero());
    }
}

TEST_CASE("Galois trichotomy over GF(16), exhaustive") {
    FieldRef f16 = FieldSpec::get(4);
    FieldElem one = FieldElem::one(f16);
    for (std::uint64_t i = 0; i < 16; ++i) {
        FieldElem eta = elem_from_index(f16, i);
        ASClass p = psi(eta);
        if (eta.is_zero()) {
            CHECK(p.is_zero());
            CHECK_THROWS_AS((void)is_galois_over_base(p), Error);
        } else if (eta == one) {
            CHECK(is_galois_over_base(p)); // the C4 case
        } else {
            CHECK_FALSE(is_galois_over_base(p));
            CHECK(is_supersimple(p));
        }
    }
    // a class pulled back from the base is sigma-fixed
    LaurentPoly<FieldElem> q(Var::t);
    q.add_term(-3, FieldElem::gen(f16));
    CHECK(is_galois_over_base(pullback_class(q, f16)));
}

TEST_CASE("is_supersimple rejects Galois classes and sees pole-5 norms") {
    FieldRef f16 = FieldSpec::get(4);
    FieldElem a = FieldElem::gen(f16);
    CHECK_THROWS_AS((void)is_supersimple(psi(FieldElem::one(f16))), Error);
    // c = eta^2 v^-5: norm has pole order 3, so not supersimple.
    LaurentPoly<FieldElem> p(Var::v);
    p.add_term(-5, a.squared());
    p.add_term(-2, a.squared());
    ASClass c = ASClass::reduce(p, f16);
    if (!is_galois_over_base(c)) {
        CHECK(different_degree(norm_class(c)) != 2);
        CHECK_FALSE(is_supersimple(c));
    }
}

TEST_CASE("classification recovers constructed descriptions") {
    FieldRef f8 = FieldSpec::get(8);
    std::mt19937_64 rng(808);
    FieldElem one = FieldElem::one(f8);
    int corrected = 0;
    for (int trial = 0; trial < 200; ++trial) {
        FieldElem eta = elem_from_index(f8, rng());
        if (eta.in_gf2()) continue;
        LaurentPoly<FieldElem> q(Var::t);
        const int deg_choices[5] = {0, 3, 5, 7, 9};
        int d = deg_choices[rng() % 5];
        if (d > 0) {
            q.add_term(-d, elem_from_index(f8, rng() | 1)); // ensure leading nonzero
            for (int e = d - 2; e >= 1; e -= 2)
                if (rng() & 1) q.add_term(-e, elem_from_index(f8, rng()));
        }
        SupersimpleDescription in{eta, q};
        ClassifyResult out = classify_supersimple(in.cls());
        // Recovered description induces the same class; the eta branch may be
        // the documented eta + 1 correction.
        CHECK(out.desc.cls() == in.cls());
        CHECK((out.desc.eta == eta || out.desc.eta == eta + one));
        if (out.used_eta_plus_one) ++corrected;
        CHECK(different_of_composite(out.desc) == std::max(4, 2 * in.degree()));
    }
    CHECK(corrected > 0); // both branches exercised
}

TEST_CASE("classification of psi_eta returns Q = 0") {
    FieldRef f16 = FieldSpec::get(4);
    for (std::uint64_t i = 2; i < 16; ++i) {
        FieldElem eta = elem_from_index(f16, i);
        ClassifyResult r = classify_supersimple(psi(eta));
        CHECK(r.desc.q.is_zero());
        CHECK((r.desc.eta == eta || r.desc.eta == eta + FieldElem::one(f16)));
        CHECK(r.desc.cls() == psi(eta));
    }
}

TEST_CASE("classification failure paths") {
    FieldRef f16 = FieldSpec::get(4);
    CHECK_THROWS_AS((void)classify_supersimple(psi(FieldElem::one(f16))), Error); // NotD4
    // forward-construct over GF(4), then classify over GF(4): always fine
    FieldRef f4 = FieldSpec::get(2);
    FieldElem a = FieldElem::gen(f4);
    SupersimpleDescription d{a, LaurentPoly<FieldElem>(Var::t)};
    CHECK(classify_supersimple(d.cls()).desc.cls() == d.cls());
}

TEST_CASE("different_of_composite matches the direct computation") {
    FieldRef f8 = FieldSpec::get(8);
    std::mt19937_64 rng(11);
    for (int d : {1, 3, 5, 7, 9}) {
        for (int trial = 0; trial < 100; ++trial) {
            FieldElem eta = elem_from_index(f8, rng());
            if (eta.in_gf2()) continue;
            LaurentPoly<FieldElem> q(Var::t);
            if (d > 1) {
                q.add_term(-d, elem_from_index(f8, rng() | 1));
                for (int e = d - 2; e >= 1; e -= 2)
                    if (rng() & 1) q.add_term(-e, elem_from_index(f8, rng()));
            } else if (rng() & 1) {
                q.add_term(-1, elem_from_index(f8, rng() | 1));
            }
            SupersimpleDescription desc{eta, q};
            CHECK(different_of_composite(desc) == different_degree(desc.cls()));
        }
    }
}
