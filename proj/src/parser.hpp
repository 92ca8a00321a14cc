#pragma once

#include <string>
#include <string_view>

#include "gf2.hpp"
#include "laurent.hpp"

namespace ssd4 {

/// Result of parsing a polynomial expression. The variable z is a generic
/// local parameter and may not be mixed with the tower variables t and v;
/// expressions in t and v may be mixed freely (they denote elements of k((v))
/// through the relation v^-2 - v^-1 = t^-1).
struct ParsedPoly {
    enum class Shape { pure_z, pure_t, in_v };
    Shape shape = Shape::pure_z;
    LaurentPoly<FieldElem> single{Var::z}; // populated for pure_z / pure_t
    MixedPoly<FieldElem> tv;               // populated for in_v

    bool is_constant() const;
};

// Grammar (whitespace insignificant):
//   expr   := term ('+' term)*
//   term   := factor ('*' factor)*
//   factor := '(' expr ')' | 'a' power? | ('t'|'v'|'z') power? | digits
//   power  := '^' '-'? digits
// Coefficients are polynomials in the field generator a over GF(2); integer
// literals reduce mod 2. Errors carry the byte offset of the offending token.
ParsedPoly parse_poly(std::string_view text, const FieldRef& field);

// Canonical text for field-coefficient polynomials (descending exponents,
// compound coefficients parenthesized). Re-parses to the same value.
std::string to_text(const LaurentPoly<FieldElem>& p);
std::string to_text(const MixedPoly<FieldElem>& p);
std::string coeff_text(const FieldElem& c);

} // namespace ssd4
