#include "gf2.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace ssd4 {

namespace {

// Fixed modulus table (bit i = coefficient of x^i, leading bit included).
// Degrees 1..8 are the Conway polynomials; 16 and 32 are the standard
// primitive polynomials x^16+x^5+x^3+x^2+1 and x^32+x^22+x^2+x+1.
struct ModulusEntry {
    unsigned n;
    std::uint64_t modulus;
};

constexpr std::array<ModulusEntry, 7> kModuli = {{
    {1, 0b11ull},
    {2, 0b111ull},
    {3, 0b1011ull},
    {4, 0b10011ull},
    {8, 0b100011101ull},
    {16, (1ull << 16) | (1ull << 5) | (1ull << 3) | (1ull << 2) | 1ull},
    {32, (1ull << 32) | (1ull << 22) | (1ull << 2) | (1ull << 1) | 1ull},
}};

int poly_degree(std::uint64_t f) {
    return f == 0 ? -1 : 63 - __builtin_clzll(f);
}

std::uint64_t poly_mod(std::uint64_t f, std::uint64_t g) {
    int dg = poly_degree(g);
    int df = poly_degree(f);
    while (df >= dg) {
        f ^= g << (df - dg);
        df = poly_degree(f);
    }
    return f;
}

const FieldSpec* find_spec(unsigned n); // below

} // namespace

bool gf2_poly_irreducible(std::uint64_t f) {
    int d = poly_degree(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    for (int e = 1; e <= d / 2; ++e) {
        for (std::uint64_t g = (1ull << e); g < (1ull << (e + 1)); ++g) {
            if (poly_mod(f, g) == 0) return false;
        }
    }
    return true;
}

namespace {

const FieldSpec* find_spec(unsigned n) {
    static std::unordered_map<unsigned, std::unique_ptr<FieldSpec>> table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(n);
    if (it != table.end()) return it->second.get();
    for (const auto& e : kModuli) {
        if (e.n == n) {
            if (!gf2_poly_irreducible(e.modulus))
                fail(Status::invalid_argument, "modulus table entry is reducible"); // unreachable
            struct Make : FieldSpec {
                Make(unsigned n, std::uint64_t m) : FieldSpec(n, m) {}
            };
            auto spec = std::unique_ptr<FieldSpec>(new Make(e.n, e.modulus));
            return table.emplace(n, std::move(spec)).first->second.get();
        }
    }
    fail(Status::unsupported_field,
         "unsupported field degree " + std::to_string(n) + " (supported: 1,2,3,4,8,16,32)");
}

// Shared-ptr aliasing so FieldRef comparisons are pointer comparisons.
FieldRef make_ref(const FieldSpec* spec) {
    return FieldRef(FieldRef(), spec);
}

} // namespace

FieldRef FieldSpec::get(unsigned n) {
    return make_ref(find_spec(n));
}

std::string FieldSpec::modulus_text() const {
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(n_); i >= 0; --i) {
        if (!(modulus_ >> i & 1)) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) os << "1";
        else if (i == 1) os << "a";
        else os << "a^" << i;
    }
    return os.str();
}

std::string FieldSpec::name() const {
    return n_ == 1 ? "gf2" : "gf2_" + std::to_string(n_);
}

FieldElem::FieldElem(FieldRef field, std::uint64_t bits) : field_(std::move(field)) {
    if (!field_) fail(Status::invalid_argument, "element requires a field");
    bits_ = bits & field_->element_mask();
}

FieldElem FieldElem::gen(const FieldRef& f) {
    // In GF(2) the generator polynomial a reduces to 1 (a = 1 mod a+1).
    return f->degree() == 1 ? one(f) : FieldElem(f, 2);
}

namespace {

void check_same_field(const FieldElem& x, const FieldElem& y) {
    if (!x.field() || !y.field())
        fail(Status::invalid_argument, "null field element in arithmetic");
    if (!(*x.field() == *y.field()))
        fail(Status::field_mismatch, "elements of GF(2^" + std::to_string(x.field()->degree()) +
                                         ") and GF(2^" + std::to_string(y.field()->degree()) +
                                         ") cannot be combined");
}

std::uint64_t field_mul_bits(std::uint64_t x, std::uint64_t y, unsigned n, std::uint64_t modulus) {
    std::uint64_t r = 0;
    while (y) {
        if (y & 1) r ^= x;
        y >>= 1;
        x <<= 1;
        if (x >> n & 1) x ^= modulus;
    }
    return r;
}

} // namespace

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same_field(*this, o);
    return FieldElem(field_, bits_ ^ o.bits_);
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same_field(*this, o);
    return FieldElem(field_, field_mul_bits(bits_, o.bits_, field_->degree(), field_->modulus()));
}

FieldElem FieldElem::sqrt() const {
    // x^(2^(n-1)) since squaring is a bijection of order n.
    FieldElem r = *this;
    for (unsigned i = 0; i + 1 < field_->degree(); ++i) r = r.squared();
    return r;
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) fail(Status::not_a_unit, "zero has no inverse");
    // x^(2^n - 2) by square and multiply.
    FieldElem acc = one(field_);
    FieldElem sq = *this;
    for (unsigned i = 1; i < field_->degree(); ++i) {
        sq = sq.squared();
        acc = acc * sq;
    }
    return acc;
}

int FieldElem::trace() const {
    FieldElem t = *this;
    FieldElem acc = *this;
    for (unsigned i = 1; i < field_->degree(); ++i) {
        t = t.squared();
        acc = acc + t;
    }
    return acc.is_zero() ? 0 : 1;
}

bool FieldElem::operator==(const FieldElem& o) const {
    if (!field_ || !o.field_) return field_ == o.field_ && bits_ == o.bits_;
    return *field_ == *o.field_ && bits_ == o.bits_;
}

bool FieldElem::lex_less(const FieldElem& o) const {
    check_same_field(*this, o);
    std::uint64_t diff = bits_ ^ o.bits_;
    if (diff == 0) return false;
    std::uint64_t lowest = diff & (~diff + 1);
    return (bits_ & lowest) == 0;
}

std::string FieldElem::to_string() const {
    if (bits_ == 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 63; i >= 0; --i) {
        if (!(bits_ >> i & 1)) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) os << "1";
        else if (i == 1) os << "a";
        else os << "a^" << i;
    }
    return os.str();
}

FieldElem elem_from_index(const FieldRef& f, std::uint64_t index) {
    return FieldElem(f, index & f->element_mask());
}

namespace {

// Dense polynomials over a FieldElem coefficient field, used only by the
// deterministic root finder behind embed().
using FPoly = std::vector<FieldElem>; // coeff of x^i at position i

void fp_trim(FPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

FPoly fp_mul(const FPoly& p, const FPoly& q, const FieldRef& f) {
    if (p.empty() || q.empty()) return {};
    FPoly r(p.size() + q.size() - 1, FieldElem::zero(f));
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    fp_trim(r);
    return r;
}

FPoly fp_mod(FPoly p, const FPoly& m, const FieldRef&) {
    fp_trim(p);
    FieldElem lead_inv = m.back().inverse();
    while (p.size() >= m.size()) {
        FieldElem c = p.back() * lead_inv;
        size_t shift = p.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) p[shift + i] += c * m[i];
        fp_trim(p);
    }
    return p;
}

FPoly fp_gcd(FPoly p, FPoly q, const FieldRef& f) {
    fp_trim(p);
    fp_trim(q);
    while (!q.empty()) {
        FPoly r = fp_mod(p, q, f);
        p = std::move(q);
        q = std::move(r);
    }
    if (!p.empty()) { // monic normalization
        FieldElem inv = p.back().inverse();
        for (auto& c : p) c *= inv;
    }
    return p;
}

// All roots of a squarefree polynomial that splits completely over f,
// via GF(2)-trace splitting with a deterministic multiplier walk.
std::vector<FieldElem> fp_roots(const FPoly& poly, const FieldRef& f) {
    std::vector<FieldElem> roots;
    std::vector<FPoly> work{poly};
    std::uint64_t walk = 1;
    while (!work.empty()) {
        FPoly p = std::move(work.back());
        work.pop_back();
        fp_trim(p);
        if (p.size() <= 1) continue;
        if (p.size() == 2) { // c0 + c1 x
            roots.push_back(p[0] * p[1].inverse()); // root = c0/c1 (char 2)
            continue;
        }
        // h = sum_{i<n} (r x)^(2^i) mod p splits p for most multipliers r.
        bool split = false;
        for (; !split; ++walk) {
            FieldElem r = elem_from_index(f, walk);
            if (r.is_zero()) continue;
            FPoly rx{FieldElem::zero(f), r};
            FPoly acc = rx;
            FPoly h = rx;
            for (unsigned i = 1; i < f->degree(); ++i) {
                acc = fp_mod(fp_mul(acc, acc, f), p, f);
                if (acc.size() > h.size()) h.resize(acc.size(), FieldElem::zero(f));
                for (size_t j = 0; j < acc.size(); ++j) h[j] += acc[j];
                fp_trim(h);
            }
            FPoly g = fp_gcd(p, h, f);
            if (g.size() > 1 && g.size() < p.size()) {
                // p = g * (p/g); push both halves
                FPoly rest = p;
                // polynomial division p / g
                FPoly quot(p.size() - g.size() + 1, FieldElem::zero(f));
                FieldElem ginv = g.back().inverse();
                while (rest.size() >= g.size()) {
                    FieldElem c = rest.back() * ginv;
                    size_t shift = rest.size() - g.size();
                    quot[shift] = c;
                    for (size_t i = 0; i < g.size(); ++i) rest[shift + i] += c * g[i];
                    fp_trim(rest);
                }
                work.push_back(std::move(g));
                work.push_back(std::move(quot));
                split = true;
            }
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const FieldElem& x, const FieldElem& y) { return x.lex_less(y); });
    return roots;
}

// Powers of the canonical image of the small generator inside the big field.
const std::vector<FieldElem>& embedding_powers(const FieldRef& from, const FieldRef& to) {
    static std::unordered_map<std::uint64_t, std::vector<FieldElem>> cache;
    static std::mutex mu;
    std::uint64_t key = (std::uint64_t(from->degree()) << 32) | to->degree();
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // Root of the small modulus inside the big field (smallest root for
    // determinism). Brute force at small sizes, trace splitting otherwise.
    FieldElem theta = FieldElem::zero(to);
    if (to->degree() <= 16) {
        bool found = false;
        for (std::uint64_t idx = 0; idx <= to->element_mask() && !found; ++idx) {
            FieldElem x = elem_from_index(to, idx);
            // evaluate small modulus at x
            FieldElem acc = FieldElem::zero(to);
            FieldElem pw = FieldElem::one(to);
            for (unsigned i = 0; i <= from->degree(); ++i) {
                if (from->modulus() >> i & 1) acc += pw;
                pw *= x;
            }
            if (acc.is_zero()) {
                theta = x;
                found = true;
            }
        }
        if (!found) fail(Status::invalid_argument, "no embedding root found"); // unreachable
    } else {
        FPoly m;
        for (unsigned i = 0; i <= from->degree(); ++i)
            m.push_back((from->modulus() >> i & 1) ? FieldElem::one(to) : FieldElem::zero(to));
        auto roots = fp_roots(m, to);
        if (roots.empty()) fail(Status::invalid_argument, "no embedding root found"); // unreachable
        theta = roots.front();
    }

    std::vector<FieldElem> powers;
    FieldElem pw = FieldElem::one(to);
    for (unsigned i = 0; i < from->degree(); ++i) {
        powers.push_back(pw);
        pw *= theta;
    }
    return cache.emplace(key, std::move(powers)).first->second;
}

} // namespace

FieldElem embed(const FieldElem& x, const FieldRef& target) {
    if (*x.field() == *target) return x;
    if (target->degree() != 2 * x.field()->degree())
        fail(Status::invalid_argument, "embed only supports the quadratic extension step");
    const auto& powers = embedding_powers(x.field(), target);
    FieldElem acc = FieldElem::zero(target);
    for (unsigned i = 0; i < x.field()->degree(); ++i)
        if (x.bits() >> i & 1) acc += powers[i];
    return acc;
}

FieldElem solve_artin_schreier(const FieldElem& alpha, bool auto_extend) {
    const FieldRef& f = alpha.field();
    if (alpha.trace() != 0) {
        if (!auto_extend)
            fail(Status::no_solution_in_field,
                 "y^2 + y = " + alpha.to_string() + " has no root in GF(2^" +
                     std::to_string(f->degree()) + ") (trace is 1); pass to GF(2^" +
                     std::to_string(2 * f->degree()) + ")");
        FieldRef big = FieldSpec::get(2 * f->degree());
        return solve_artin_schreier(embed(alpha, big), false);
    }
    unsigned n = f->degree();
    FieldElem root = FieldElem::zero(f);
    if (n % 2 == 1) {
        // Half-trace: sum of alpha^(2^(2i)).
        FieldElem t = alpha;
        root = alpha;
        for (unsigned i = 1; i <= (n - 1) / 2; ++i) {
            t = t.squared().squared();
            root += t;
        }
    } else {
        // With Tr(delta) = 1: y = sum_{i<n-1} (sum_{j>i} delta^(2^j)) alpha^(2^i).
        // Some basis monomial a^i has trace 1 (the trace form is nonzero).
        FieldElem delta = FieldElem::one(f);
        for (unsigned i = 0; i < n; ++i) {
            delta = FieldElem(f, 1ull << i);
            if (delta.trace() == 1) break;
            if (i + 1 == n)
                fail(Status::invalid_argument, "no trace-1 basis element"); // unreachable
        }
        std::vector<FieldElem> dpow; // delta^(2^j)
        FieldElem d = delta;
        for (unsigned j = 0; j < n; ++j) {
            dpow.push_back(d);
            d = d.squared();
        }
        FieldElem apow = alpha; // alpha^(2^i)
        for (unsigned i = 0; i + 1 < n; ++i) {
            FieldElem s = FieldElem::zero(f);
            for (unsigned j = i + 1; j < n; ++j) s += dpow[j];
            root += s * apow;
            apow = apow.squared();
        }
    }
    // Tie-break: of {root, root+1} return the one with constant coefficient 0.
    if (root.bits() & 1) root += FieldElem::one(f);
    return root;
}

const char* status_name(Status s) {
    switch (s) {
        case Status::ok: return "Ok";
        case Status::parse_error: return "ParseError";
        case Status::unsupported_field: return "UnsupportedField";
        case Status::field_mismatch: return "FieldMismatch";
        case Status::variable_mismatch: return "VariableMismatch";
        case Status::positive_exponent_present: return "PositiveExponentPresent";
        case Status::no_solution_in_field: return "NoSolutionInField";
        case Status::search_space_too_large: return "SearchSpaceTooLarge";
        case Status::zero_class: return "ZeroClass";
        case Status::not_d4: return "NotD4";
        case Status::descent_failed: return "DescentFailed";
        case Status::eta_is_one: return "EtaIsOne";
        case Status::identity_failed: return "IdentityFailed";
        case Status::not_a_unit: return "NotAUnit";
        case Status::even_degree_f: return "EvenDegreeF";
        case Status::precision_exhausted: return "PrecisionExhausted";
        case Status::invalid_argument: return "InvalidArgument";
        case Status::io_error: return "IoError";
    }
    return "Unknown";
}

} // namespace ssd4
