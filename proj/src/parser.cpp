#include "parser.hpp"

#include <array>
#include <cctype>

namespace ssd4 {

namespace {

// A term under construction: field coefficient times t^et * v^ev * z^ez.
struct Monomial {
    FieldElem coeff;
    int et = 0, ev = 0, ez = 0;
};

class Parser {
public:
    Parser(std::string_view text, FieldRef field) : text_(text), field_(std::move(field)) {}

    std::map<std::array<int, 3>, FieldElem> run() {
        std::map<std::array<int, 3>, FieldElem> acc;
        parse_expr(acc, FieldElem::one(field_));
        skip_ws();
        if (pos_ != text_.size()) err("unexpected trailing input");
        return acc;
    }

private:
    [[noreturn]] void err(const std::string& what, size_t at = SIZE_MAX) {
        size_t p = at == SIZE_MAX ? pos_ : at;
        fail(Status::parse_error, what + " at position " + std::to_string(p),
             static_cast<long>(p));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    long parse_int(bool allow_sign) {
        skip_ws();
        size_t start = pos_;
        bool neg = false;
        if (allow_sign && pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            err("expected an integer", start);
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1000000000L) err("integer literal too large", start);
            ++pos_;
        }
        return neg ? -value : value;
    }

    // expr := term ('+' term)*; each term accumulates into acc scaled by the
    // ambient multiplier (handles distribution over parenthesized groups).
    void parse_expr(std::map<std::array<int, 3>, FieldElem>& acc, const FieldElem& scale,
                    int et = 0, int ev = 0, int ez = 0) {
        do {
            parse_term(acc, scale, et, ev, ez);
        } while (eat('+'));
    }

    void parse_term(std::map<std::array<int, 3>, FieldElem>& acc, const FieldElem& scale,
                    int et, int ev, int ez) {
        Monomial m{scale, et, ev, ez};
        // Collected parenthesized factors multiply in at the end.
        std::vector<std::map<std::array<int, 3>, FieldElem>> groups;
        do {
            parse_factor(m, groups);
        } while (eat('*'));
        std::map<std::array<int, 3>, FieldElem> result;
        add_into(result, {m.et, m.ev, m.ez}, m.coeff);
        for (const auto& g : groups) {
            std::map<std::array<int, 3>, FieldElem> next;
            for (const auto& [k1, c1] : result)
                for (const auto& [k2, c2] : g)
                    add_into(next, {k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]}, c1 * c2);
            result = std::move(next);
        }
        for (const auto& [k, c] : result) add_into(acc, k, c);
    }

    void parse_factor(Monomial& m, std::vector<std::map<std::array<int, 3>, FieldElem>>& groups) {
        skip_ws();
        size_t start = pos_;
        if (pos_ >= text_.size()) err("expected a factor");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            std::map<std::array<int, 3>, FieldElem> inner;
            parse_expr(inner, FieldElem::one(field_));
            if (!eat(')')) err("expected ')'");
            groups.push_back(std::move(inner));
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long value = parse_int(false);
            if (value % 2 == 0) m.coeff = FieldElem::zero(field_);
            return;
        }
        if (c == 'a' || c == 't' || c == 'v' || c == 'z') {
            ++pos_;
            long exp = 1;
            if (eat('^')) exp = parse_int(true);
            if (exp < -100000 || exp > 100000) err("exponent out of range", start);
            switch (c) {
                case 'a': {
                    if (exp < 0) err("negative power of the field generator", start);
                    FieldElem p = FieldElem::one(field_);
                    FieldElem g = FieldElem::gen(field_);
                    for (long i = 0; i < exp; ++i) p *= g;
                    m.coeff *= p;
                    return;
                }
                case 't': m.et += static_cast<int>(exp); return;
                case 'v': m.ev += static_cast<int>(exp); return;
                case 'z': m.ez += static_cast<int>(exp); return;
            }
        }
        err(std::string("unexpected character '") + c + "'", start);
    }

    static void add_into(std::map<std::array<int, 3>, FieldElem>& acc,
                         const std::array<int, 3>& key, const FieldElem& c) {
        if (c.is_zero()) return;
        auto it = acc.find(key);
        if (it == acc.end()) {
            acc.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) acc.erase(it);
        }
    }

    std::string_view text_;
    FieldRef field_;
    size_t pos_ = 0;
};

} // namespace

bool ParsedPoly::is_constant() const {
    if (shape == Shape::in_v) {
        for (const auto& [k, c] : tv.terms())
            if (k != MixedPoly<FieldElem>::Key{0, 0}) return false;
        return true;
    }
    for (const auto& [e, c] : single.terms())
        if (e != 0) return false;
    return true;
}

ParsedPoly parse_poly(std::string_view text, const FieldRef& field) {
    auto raw = Parser(text, field).run();

    bool uses_z = false, uses_t = false, uses_v = false;
    for (const auto& [k, c] : raw) {
        uses_t |= k[0] != 0;
        uses_v |= k[1] != 0;
        uses_z |= k[2] != 0;
    }
    if (uses_z && (uses_t || uses_v))
        fail(Status::variable_mismatch, "z may not be mixed with the tower variables t and v");

    ParsedPoly out;
    if (uses_v) {
        out.shape = ParsedPoly::Shape::in_v;
        for (const auto& [k, c] : raw) out.tv.add_term(k[0], k[1], c);
        return out;
    }
    if (uses_t) {
        out.shape = ParsedPoly::Shape::pure_t;
        out.single = LaurentPoly<FieldElem>(Var::t);
        for (const auto& [k, c] : raw) out.single.add_term(k[0], c);
        return out;
    }
    out.shape = ParsedPoly::Shape::pure_z;
    out.single = LaurentPoly<FieldElem>(Var::z);
    for (const auto& [k, c] : raw) out.single.add_term(k[2], c);
    return out;
}

std::string coeff_text(const FieldElem& c) {
    return c.to_string();
}

namespace {
bool coeff_compound(const FieldElem& c) {
    return __builtin_popcountll(c.bits()) > 1;
}
} // namespace

std::string to_text(const LaurentPoly<FieldElem>& p) {
    return poly_to_string<FieldElem>(p, &coeff_text, &coeff_compound);
}

std::string to_text(const MixedPoly<FieldElem>& p) {
    return mixed_to_string<FieldElem>(p, &coeff_text, &coeff_compound);
}

} // namespace ssd4
