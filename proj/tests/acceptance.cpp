// Acceptance suite: one pass/fail line per criterion, exit nonzero if any
// fails. Everything runs at desk scale with fixed seeds.

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lift.hpp"
#include "parser.hpp"
#include "tower.hpp"

using namespace ssd4;

namespace {

struct Outcome {
    bool pass = true;
    long checks = 0;
    std::string note;

    void require(bool cond, const std::string& what) {
        ++checks;
        if (!cond && pass) {
            pass = false;
            note = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void run(int id, const std::string& label, Outcome (*fn)()) {
    auto start = Clock::now();
    Outcome out;
    try {
        out = fn();
    } catch (const std::exception& e) {
        out.pass = false;
        out.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("[%d] %s  %-52s  %7ld checks  %6.2f s%s%s\n", id, out.pass ? "PASS" : "FAIL",
                label.c_str(), out.checks, secs, out.note.empty() ? "" : "  -- ",
                out.note.c_str());
    std::fflush(stdout);
    if (!out.pass) ++g_failures;
}

// All polynomials over f with at most max_terms nonzero terms on [lo, hi].
std::vector<LaurentPoly<FieldElem>> small_polys(const FieldRef& f, int lo, int hi, int max_terms) {
    std::vector<LaurentPoly<FieldElem>> out{LaurentPoly<FieldElem>(Var::z)};
    std::vector<std::pair<LaurentPoly<FieldElem>, int>> frontier{{LaurentPoly<FieldElem>(Var::z), lo}};
    for (int depth = 0; depth < max_terms; ++depth) {
        std::vector<std::pair<LaurentPoly<FieldElem>, int>> next;
        for (const auto& [poly, start] : frontier) {
            for (int e = start; e <= hi; ++e) {
                for (std::uint64_t bits = 1; bits <= f->element_mask(); ++bits) {
                    LaurentPoly<FieldElem> p = poly;
                    p.add_term(e, FieldElem(f, bits));
                    out.push_back(p);
                    next.emplace_back(p, e + 1);
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

SupersimpleDescription random_description(const FieldRef& f, int degree, std::mt19937_64& rng) {
    FieldElem eta = FieldElem::zero(f);
    while (eta.in_gf2()) eta = elem_from_index(f, rng());
    LaurentPoly<FieldElem> q(Var::t);
    if (degree > 0) {
        FieldElem lead = FieldElem::zero(f);
        while (lead.is_zero()) lead = elem_from_index(f, rng());
        q.add_term(-degree, lead);
        for (int e = degree - 2; e >= 1; e -= 2)
            if (rng() & 1) q.add_term(-e, elem_from_index(f, rng()));
    }
    return {eta, q};
}

// 1. Symbolic identity verification, fully general.
Outcome criterion_identities() {
    Outcome out;
    IdentityReport small = verify_identity_small();
    out.require(small.holds && small.residual == "0", "small identity residual nonzero");
    for (int m = 1; m <= 4; ++m) {
        IdentityReport rep = verify_identity_general(m);
        out.require(rep.holds && rep.residual == "0",
                    "general identity failed at m = " + std::to_string(m));
    }
    return out;
}

// 2. Canonical reduction vs the brute-force coset oracle.
Outcome criterion_oracle() {
    Outcome out;
    // GF(2): exhaustive over all pairs with <= 3 terms on [-6, 3].
    FieldRef f2 = FieldSpec::get(1);
    auto polys = small_polys(f2, -6, 3, 3);
    for (size_t i = 0; i < polys.size(); ++i) {
        ASClass ci = ASClass::reduce(polys[i], f2);
        for (size_t j = i; j < polys.size(); ++j) {
            bool canonical = ci == ASClass::reduce(polys[j], f2);
            bool oracle = class_equal_bruteforce(polys[i], polys[j], 6, f2);
            if (canonical != oracle) {
                out.require(false, "GF(2) disagreement at pair (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")");
                return out;
            }
            ++out.checks;
        }
    }
    // GF(4): sampled pairs (the full pair space exceeds the oracle guard).
    FieldRef f4 = FieldSpec::get(2);
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 10000; ++trial) {
        LaurentPoly<FieldElem> p1(Var::z), p2(Var::z);
        for (int t = 0; t < 3; ++t) {
            p1.add_term(static_cast<int>(rng() % 10) - 6, elem_from_index(f4, rng()));
            p2.add_term(static_cast<int>(rng() % 10) - 6, elem_from_index(f4, rng()));
        }
        bool canonical = ASClass::reduce(p1, f4) == ASClass::reduce(p2, f4);
        bool oracle = class_equal_bruteforce(p1, p2, 6, f4);
        if (canonical != oracle) {
            out.require(false, "GF(4) disagreement at trial " + std::to_string(trial));
            return out;
        }
        ++out.checks;
    }
    return out;
}

// 3. psi_{eta+1} = psi_eta + psi_1 and norm(psi_eta) = [eta^2 t^-1], all of GF(2^8).
Outcome criterion_psi() {
    Outcome out;
    FieldRef f8 = FieldSpec::get(8);
    FieldElem one = FieldElem::one(f8);
    for (std::uint64_t i = 0; i < 256; ++i) {
        FieldElem eta = elem_from_index(f8, i);
        out.require(psi(eta + one) == psi(eta) + psi(one),
                    "psi sum rule fails at eta index " + std::to_string(i));
        LaurentPoly<FieldElem> base(Var::t);
        base.add_term(-1, eta.squared());
        out.require(norm_class(psi(eta)) == pullback_class(base, f8),
                    "norm of psi fails at eta index " + std::to_string(i));
    }
    return out;
}

// 4. different_of_composite = max(4, 2d) against the direct computation.
Outcome criterion_different() {
    Outcome out;
    FieldRef f8 = FieldSpec::get(8);
    std::mt19937_64 rng(44);
    for (int d : {1, 3, 5, 7, 9}) {
        for (int trial = 0; trial < 100; ++trial) {
            SupersimpleDescription desc = random_description(f8, d == 1 ? 0 : d, rng);
            if (d == 1 && (rng() & 1)) {
                FieldElem c = FieldElem::zero(f8);
                while (c.is_zero()) c = elem_from_index(f8, rng());
                desc.q.add_term(-1, c);
            }
            int expect = std::max(4, 2 * d);
            out.require(different_of_composite(desc) == expect,
                        "formula differs from max(4, 2d) at d = " + std::to_string(d));
            out.require(different_degree(desc.cls()) == expect,
                        "reduce-then-different differs at d = " + std::to_string(d));
        }
    }
    return out;
}

// 5. Galois trichotomy over GF(2^4), exhaustive.
Outcome criterion_trichotomy() {
    Outcome out;
    FieldRef f16 = FieldSpec::get(4);
    for (std::uint64_t i = 0; i < 16; ++i) {
        FieldElem eta = elem_from_index(f16, i);
        ASClass p = psi(eta);
        if (eta.is_zero()) {
            out.require(p.is_zero(), "psi_0 is not trivial");
        } else if (eta.is_one()) {
            out.require(is_galois_over_base(p), "psi_1 is not Galois");
        } else {
            out.require(!is_galois_over_base(p), "psi_eta unexpectedly Galois");
            out.require(is_supersimple(p), "psi_eta not supersimple");
        }
    }
    return out;
}

// 6. End-to-end: construct_lift on 200 random descriptions, full flags, and
// classification of the reduced F recovers the class.
Outcome criterion_end_to_end() {
    Outcome out;
    FieldRef f8 = FieldSpec::get(8);
    std::mt19937_64 rng(600613);
    const int degrees[5] = {0, 3, 5, 7, 9};
    for (int trial = 0; trial < 200; ++trial) {
        SupersimpleDescription desc = random_description(f8, degrees[trial % 5], rng);
        LiftCertificate cert = construct_lift(desc, 64);
        out.require(cert.flags.identity_verified, "identity flag false");
        out.require(cert.flags.h_division_exact, "H division not exact");
        out.require(cert.flags.non_galois_witness_unit, "witness not a certified unit");
        out.require(cert.flags.g_reduces_to_one, "G does not reduce to 1");
        out.require(cert.flags.reduction_matches, "reduction does not match");

        const ASClass f_bar_class = ASClass::reduce(reduce_mod2(cert.f).expand_in_v(), f8);
        ClassifyResult back = classify_supersimple(f_bar_class);
        out.require(back.desc.cls() == desc.cls(), "classification did not recover the class");
        FieldElem one = FieldElem::one(f8);
        out.require(back.desc.eta == desc.eta || back.desc.eta == desc.eta + one,
                    "recovered eta is not an eta/eta+1 branch");
        if (!out.pass) {
            out.note += " (trial " + std::to_string(trial) + ")";
            return out;
        }
    }
    return out;
}

// 7. Genus bookkeeping and the Hurwitz consistency identity.
Outcome criterion_genus() {
    Outcome out;
    FieldRef f8 = FieldSpec::get(8);
    std::mt19937_64 rng(700);
    const int degrees[5] = {0, 3, 5, 7, 9};
    for (int trial = 0; trial < 50; ++trial) {
        int d = degrees[trial % 5];
        SupersimpleDescription desc = random_description(f8, d, rng);
        LiftCertificate cert = construct_lift(desc, 64);
        auto [g2, g3] = genus_report(cert);
        int expect_g2 = d <= 1 ? 1 : d - 1; // pole 2g+1 with g = 2m, or 1
        out.require(g2 == expect_g2, "g2 mismatch at d = " + std::to_string(d));
        out.require(g3 == 2 * g2, "g3 is not 2 g2");
        out.require(2 * g3 - 2 == 2 * (2 * g2 - 2) + 2, "Hurwitz identity fails");
        out.require(cert.flags.genus_consistent, "genus flag false");
        out.require(2 * g2 + 2 == different_of_composite(desc),
                    "different degree does not tie back to the genus");
    }
    return out;
}

// 8. Mutation suite: every single-term deletion from F or G is killed.
Outcome criterion_mutations() {
    Outcome out;
    for (bool small : {true, false}) {
        for (MutTarget target : {MutTarget::F, MutTarget::G}) {
            const auto names = identity_term_names(small, target);
            for (size_t i = 0; i < names.size(); ++i) {
                for (int m : (small ? std::vector<int>{0} : std::vector<int>{1, 2, 3, 4})) {
                    IdentityReport rep = verify_identity_mutated(small, m, target, i);
                    out.require(!rep.holds && rep.residual != "0",
                                "mutation not killed: " + rep.mutated_term + " at m = " +
                                    std::to_string(m));
                }
            }
        }
    }
    return out;
}

} // namespace

int main() {
    std::printf("ssd4 acceptance suite\n");
    run(1, "symbolic identities (small case and m = 1..4)", &criterion_identities);
    run(2, "canonical reduction vs brute-force oracle", &criterion_oracle);
    run(3, "psi sum rule and norms, exhaustive over GF(2^8)", &criterion_psi);
    run(4, "composite different degree max(4, 2d)", &criterion_different);
    run(5, "Galois trichotomy, exhaustive over GF(2^4)", &criterion_trichotomy);
    run(6, "end-to-end lift certificates, 200 descriptions", &criterion_end_to_end);
    run(7, "genus bookkeeping and Hurwitz consistency", &criterion_genus);
    run(8, "mutation kill on the identity verifier", &criterion_mutations);
    if (g_failures == 0) {
        std::printf("all 8 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
