#include "artin_schreier.hpp"

#include <vector>

#include "parser.hpp"

namespace ssd4 {

ASClass ASClass::zero(Var var, FieldRef field) {
    return ASClass(std::move(field), LaurentPoly<FieldElem>(var));
}

ASClass ASClass::reduce(const LaurentPoly<FieldElem>& f, const FieldRef& field) {
    LaurentPoly<FieldElem> rep(f.var());
    for (const auto& [e, c] : f.terms())
        if (e < 0) rep.add_term(e, c);
    // Fold even exponents upward; each step moves weight strictly toward 0,
    // and the result is independent of the order the folds are applied in.
    while (!rep.is_zero()) {
        int even_exp = 0;
        bool found = false;
        for (const auto& [e, c] : rep.terms()) {
            if (e % 2 == 0) {
                even_exp = e;
                found = true;
                break;
            }
        }
        if (!found) break;
        FieldElem c = *rep.coeff(even_exp);
        rep.add_term(even_exp, c); // removes the term (char 2)
        rep.add_term(even_exp / 2, c.sqrt());
    }
    return ASClass(field, std::move(rep));
}

ASClass ASClass::operator+(const ASClass& o) const {
    if (!(*field_ == *o.field_))
        fail(Status::field_mismatch, "classes live over different fields");
    return reduce(rep_ + o.rep_, field_);
}

bool ASClass::operator==(const ASClass& o) const {
    return *field_ == *o.field_ && rep_ == o.rep_;
}

std::string ASClass::to_string() const {
    return to_text(rep_);
}

int different_degree(const ASClass& c) {
    if (c.is_zero())
        fail(Status::zero_class, "the zero class is split; its different is undefined");
    return c.pole_order() + 1;
}

int genus_katz_gabber(const ASClass& c) {
    if (c.is_zero())
        fail(Status::zero_class, "the zero class is split; it has no cover");
    return (c.pole_order() - 1) / 2;
}

bool class_equal_bruteforce(const LaurentPoly<FieldElem>& f1, const LaurentPoly<FieldElem>& f2,
                            int support_bound, const FieldRef& field) {
    if (f1.var() != f2.var())
        fail(Status::variable_mismatch, "oracle operands use different variables");
    if (support_bound < 1)
        fail(Status::invalid_argument, "support bound must be positive");
    const int b = support_bound;
    double space = 1.0;
    const double q = static_cast<double>(field->element_mask()) + 1.0;
    for (int i = 0; i < b; ++i) space *= q;
    if (space > 1e6)
        fail(Status::search_space_too_large,
             "oracle search space " + std::to_string(static_cast<long long>(space)) +
                 " exceeds 10^6");

    // diff[k] = coefficient of x^-(k+1) in f1 - f2 (char 2: same as the sum).
    std::vector<FieldElem> diff(static_cast<size_t>(2 * b), FieldElem::zero(field));
    bool deep_mismatch = false; // nonzero term q^2 - q can never reach
    auto note = [&](const LaurentPoly<FieldElem>& f) {
        for (const auto& [e, c] : f.terms()) {
            if (e >= 0) continue;
            if (-e > 2 * b) deep_mismatch = true;
            else diff[static_cast<size_t>(-e - 1)] += c;
        }
    };
    note(f1);
    note(f2);
    if (deep_mismatch) {
        LaurentPoly<FieldElem> sum = f1 + f2;
        for (const auto& [e, c] : sum.terms())
            if (e < -2 * b) return false;
        // deep terms cancelled exactly; proceed with the windowed search
    }

    // Candidate q has coefficients q[k] of x^-(k+1) for k in [0, b). Only the
    // negative part of q matters: the non-negative part of q^2 - q cannot
    // touch negative exponents.
    std::vector<std::uint64_t> idx(static_cast<size_t>(b), 0);
    const std::uint64_t qsize = field->element_mask() + 1;
    while (true) {
        bool ok = true;
        for (int e = -2 * b; e < 0 && ok; ++e) {
            FieldElem r = diff[static_cast<size_t>(-e - 1)];
            if (-e <= b) r += elem_from_index(field, idx[static_cast<size_t>(-e - 1)]);
            if (e % 2 == 0 && -e / 2 <= b)
                r += elem_from_index(field, idx[static_cast<size_t>(-e / 2 - 1)]).squared();
            ok = r.is_zero();
        }
        if (ok) return true;
        // odometer
        size_t pos = 0;
        while (pos < idx.size()) {
            if (++idx[pos] < qsize) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == idx.size()) return false;
    }
}

} // namespace ssd4
