#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ssd4 {

// Generators of the symbolic lifting ring. s stands for sqrt(2), b for the
// root beta of b^2 + s*b + e = 0, e for eta, g for gamma, and q0, q1, ... for
// the coefficients of Q'. Indices >= kSymQ0 denote q_(i - kSymQ0).
inline constexpr int kSymS = 0;
inline constexpr int kSymBeta = 1;
inline constexpr int kSymEta = 2;
inline constexpr int kSymGamma = 3;
inline constexpr int kSymQ0 = 4;

std::string sym_var_name(int id);

/// Element of Z[s, b, e, g, q0, q1, ...] / (s^2 - 2, b^2 + s b + e), kept in
/// normal form: every monomial has s-degree <= 1 and b-degree <= 1. The two
/// rewrite rules terminate (each application lowers (deg_b, deg_s)
/// lexicographically) and commute, so normal forms are canonical and equality
/// is syntactic equality of the term maps.
class SymElem {
public:
    // Monomial: sorted (generator id, exponent > 0) pairs.
    using Monomial = std::vector<std::pair<int, int>>;

    SymElem() = default; // zero

    static SymElem integer(long long n);
    static SymElem variable(int id);
    static SymElem q_coeff(int i) { return variable(kSymQ0 + i); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_integer(long long n) const;
    size_t term_count() const noexcept { return terms_.size(); }

    SymElem operator+(const SymElem& o) const;
    SymElem operator-(const SymElem& o) const;
    SymElem operator-() const;
    SymElem operator*(const SymElem& o) const;
    SymElem one_like() const { return integer(1); }

    bool operator==(const SymElem& o) const { return terms_ == o.terms_; }
    bool operator!=(const SymElem& o) const { return !(*this == o); }

    // Canonical text: monomials in map order, e.g. "2*e*g^2 - s*b".
    std::string to_string() const;

private:
    void add_raw(const Monomial& m, long long c);
    void normalize();

    std::map<Monomial, long long> terms_;
};

} // namespace ssd4
