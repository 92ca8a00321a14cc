#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "errors.hpp"

namespace ssd4 {

enum class Var : unsigned char { t, v, z };

inline char var_name(Var v) {
    switch (v) {
        case Var::t: return 't';
        case Var::v: return 'v';
        case Var::z: return 'z';
    }
    return '?';
}

// Guard against expression blow-up when expanding t^-d in terms of v.
inline constexpr int kMaxExpansionDegree = 4096;

/// Finite-support Laurent polynomial in a single tagged variable. Coefficients
/// must provide +, unary -, *, is_zero() and one_like(); zero coefficients are
/// never stored.
template <class C>
class LaurentPoly {
public:
    explicit LaurentPoly(Var var) : var_(var) {}

    Var var() const noexcept { return var_; }
    const std::map<int, C>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    size_t term_count() const noexcept { return terms_.size(); }

    int min_exp() const {
        if (is_zero()) fail(Status::invalid_argument, "zero polynomial has no exponents");
        return terms_.begin()->first;
    }
    int max_exp() const {
        if (is_zero()) fail(Status::invalid_argument, "zero polynomial has no exponents");
        return terms_.rbegin()->first;
    }

    const C* coeff(int exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? nullptr : &it->second;
    }

    void add_term(int exp, const C& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_.emplace(exp, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static LaurentPoly monomial(Var var, int exp, const C& c) {
        LaurentPoly p(var);
        p.add_term(exp, c);
        return p;
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        check_var(o);
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const {
        check_var(o);
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }

    LaurentPoly operator*(const LaurentPoly& o) const {
        check_var(o);
        LaurentPoly r(var_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }

    LaurentPoly scaled(const C& s) const {
        LaurentPoly r(var_);
        for (const auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }

    bool operator==(const LaurentPoly& o) const {
        if (var_ != o.var_ || terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [e, c] : terms_) {
            if (e != it->first || !(c == it->second)) return false;
            ++it;
        }
        return true;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly retagged(Var var) const {
        LaurentPoly r(var);
        r.terms_ = terms_;
        return r;
    }

private:
    void check_var(const LaurentPoly& o) const {
        if (var_ != o.var_)
            fail(Status::variable_mismatch, std::string("cannot combine polynomials in ") +
                                                var_name(var_) + " and " + var_name(o.var_));
    }

    Var var_;
    std::map<int, C> terms_;
};

/// Sparse polynomial in the two related variables t and v. This is a
/// presentation type: the tower relation t^-1 = v^-2 - v^-1 makes it
/// non-canonical, and computations go through expand_in_v().
template <class C>
class MixedPoly {
public:
    using Key = std::pair<int, int>; // (t exponent, v exponent)

    MixedPoly() = default;

    const std::map<Key, C>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(int t_exp, int v_exp, const C& c) {
        if (c.is_zero()) return;
        Key k{t_exp, v_exp};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static MixedPoly constant(const C& c) {
        MixedPoly p;
        p.add_term(0, 0, c);
        return p;
    }

    static MixedPoly monomial(int t_exp, int v_exp, const C& c) {
        MixedPoly p;
        p.add_term(t_exp, v_exp, c);
        return p;
    }

    static MixedPoly from_t_poly(const LaurentPoly<C>& p) {
        MixedPoly r;
        for (const auto& [e, c] : p.terms()) r.add_term(e, 0, c);
        return r;
    }

    MixedPoly operator+(const MixedPoly& o) const {
        MixedPoly r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
        return r;
    }

    MixedPoly operator-(const MixedPoly& o) const {
        MixedPoly r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, -c);
        return r;
    }

    MixedPoly operator*(const MixedPoly& o) const {
        MixedPoly r;
        for (const auto& [k1, c1] : terms_)
            for (const auto& [k2, c2] : o.terms_)
                r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
        return r;
    }

    MixedPoly scaled(const C& s) const {
        MixedPoly r;
        for (const auto& [k, c] : terms_) r.add_term(k.first, k.second, c * s);
        return r;
    }

    bool operator==(const MixedPoly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [k, c] : terms_) {
            if (k != it->first || !(c == it->second)) return false;
            ++it;
        }
        return true;
    }
    bool operator!=(const MixedPoly& o) const { return !(*this == o); }

    bool pure_in_t() const {
        for (const auto& [k, c] : terms_)
            if (k.second != 0) return false;
        return true;
    }
    bool uses_v() const { return !pure_in_t(); }

    LaurentPoly<C> as_t_poly() const {
        LaurentPoly<C> r(Var::t);
        for (const auto& [k, c] : terms_) {
            if (k.second != 0) fail(Status::invalid_argument, "polynomial is not pure in t");
            r.add_term(k.first, c);
        }
        return r;
    }

    // Substitutes t^-1 = v^-2 - v^-1 (the sign disappears in characteristic
    // 2). All t exponents must be non-positive: positive powers of t are not
    // polynomial in v.
    LaurentPoly<C> expand_in_v() const {
        LaurentPoly<C> out(Var::v);
        for (const auto& [k, c] : terms_) {
            int d = -k.first;
            if (d < 0)
                fail(Status::positive_exponent_present,
                     "positive power of t cannot be rewritten in v");
            if (d > kMaxExpansionDegree)
                fail(Status::invalid_argument, "t-degree too large to expand in v");
            LaurentPoly<C> pw(Var::v);
            pw.add_term(k.second, c);
            if (d > 0) {
                C one = c.one_like();
                LaurentPoly<C> base(Var::v);
                base.add_term(-2, one);
                base.add_term(-1, -one);
                for (int i = 0; i < d; ++i) pw = pw * base;
            }
            out = out + pw;
        }
        return out;
    }

private:
    std::map<Key, C> terms_;
};

// Canonical text rendering; terms in descending exponent order. Compound
// coefficients are parenthesized so the output re-parses to the same value.
template <class C>
std::string poly_to_string(const LaurentPoly<C>& p,
                           std::string (*coeff_text)(const C&), bool (*coeff_compound)(const C&)) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        const std::string ct = coeff_text(it->second);
        const int e = it->first;
        if (e == 0) {
            os << ct;
            continue;
        }
        if (ct != "1") os << (coeff_compound(it->second) ? "(" + ct + ")" : ct) << "*";
        os << var_name(p.var());
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

template <class C>
std::string mixed_to_string(const MixedPoly<C>& p,
                            std::string (*coeff_text)(const C&), bool (*coeff_compound)(const C&)) {
    if (p.is_zero()) return "0";
    // Descending by t exponent then v exponent.
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        const auto [te, ve] = it->first;
        const std::string ct = coeff_text(it->second);
        if (te == 0 && ve == 0) {
            os << ct;
            continue;
        }
        bool printed = false;
        if (ct != "1") {
            os << (coeff_compound(it->second) ? "(" + ct + ")" : ct);
            printed = true;
        }
        auto put_var = [&](char name, int e) {
            if (e == 0) return;
            if (printed) os << "*";
            printed = true;
            os << name;
            if (e != 1) os << "^" << e;
        };
        put_var('t', te);
        put_var('v', ve);
        if (!printed) os << "1";
    }
    return os.str();
}

} // namespace ssd4
