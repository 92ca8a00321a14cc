#include "symbolic.hpp"

#include <sstream>

namespace ssd4 {

std::string sym_var_name(int id) {
    switch (id) {
        case kSymS: return "s";
        case kSymBeta: return "b";
        case kSymEta: return "e";
        case kSymGamma: return "g";
        default: return "q" + std::to_string(id - kSymQ0);
    }
}

namespace {

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        fail(Status::invalid_argument, "symbolic coefficient overflow");
    return r;
}

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        fail(Status::invalid_argument, "symbolic coefficient overflow");
    return r;
}

int exponent_of(const SymElem::Monomial& m, int id) {
    for (const auto& [v, e] : m)
        if (v == id) return e;
    return 0;
}

SymElem::Monomial without(const SymElem::Monomial& m, int id, int drop) {
    SymElem::Monomial out;
    for (const auto& [v, e] : m) {
        if (v == id) {
            if (e - drop > 0) out.emplace_back(v, e - drop);
        } else {
            out.emplace_back(v, e);
        }
    }
    return out;
}

SymElem::Monomial with_extra(const SymElem::Monomial& m, int id, int extra) {
    SymElem::Monomial out;
    bool placed = false;
    for (const auto& [v, e] : m) {
        if (v == id) {
            out.emplace_back(v, e + extra);
            placed = true;
        } else {
            if (!placed && v > id) {
                out.emplace_back(id, extra);
                placed = true;
            }
            out.emplace_back(v, e);
        }
    }
    if (!placed) out.emplace_back(id, extra);
    return out;
}

} // namespace

SymElem SymElem::integer(long long n) {
    SymElem r;
    if (n != 0) r.terms_.emplace(Monomial{}, n);
    return r;
}

SymElem SymElem::variable(int id) {
    SymElem r;
    r.terms_.emplace(Monomial{{id, 1}}, 1);
    return r;
}

bool SymElem::is_integer(long long n) const {
    if (n == 0) return is_zero();
    return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == n;
}

void SymElem::add_raw(const Monomial& m, long long c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second = checked_add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

void SymElem::normalize() {
    // Worklist rewriting: s^2 -> 2, b^2 -> -s*b - e. Every step lowers
    // (deg_b, deg_s) lexicographically, so this terminates.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            const int es = exponent_of(it->first, kSymS);
            const int eb = exponent_of(it->first, kSymBeta);
            if (es < 2 && eb < 2) continue;
            Monomial m = it->first;
            long long c = it->second;
            terms_.erase(it);
            if (eb >= 2) {
                Monomial rest = without(m, kSymBeta, 2);
                // b^2 * rest = (-s*b - e) * rest
                add_raw(with_extra(with_extra(rest, kSymBeta, 1), kSymS, 1), checked_mul(c, -1));
                add_raw(with_extra(rest, kSymEta, 1), checked_mul(c, -1));
            } else {
                add_raw(without(m, kSymS, 2), checked_mul(c, 2));
            }
            changed = true;
            break;
        }
    }
}

SymElem SymElem::operator+(const SymElem& o) const {
    SymElem r = *this;
    for (const auto& [m, c] : o.terms_) r.add_raw(m, c);
    return r;
}

SymElem SymElem::operator-(const SymElem& o) const {
    SymElem r = *this;
    for (const auto& [m, c] : o.terms_) r.add_raw(m, checked_mul(c, -1));
    return r;
}

SymElem SymElem::operator-() const {
    SymElem r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, checked_mul(c, -1));
    return r;
}

SymElem SymElem::operator*(const SymElem& o) const {
    SymElem r;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            // merge sorted exponent vectors
            Monomial m;
            size_t i = 0, j = 0;
            while (i < m1.size() || j < m2.size()) {
                if (j == m2.size() || (i < m1.size() && m1[i].first < m2[j].first)) {
                    m.push_back(m1[i++]);
                } else if (i == m1.size() || m2[j].first < m1[i].first) {
                    m.push_back(m2[j++]);
                } else {
                    m.emplace_back(m1[i].first, m1[i].second + m2[j].second);
                    ++i;
                    ++j;
                }
            }
            r.add_raw(m, checked_mul(c1, c2));
        }
    }
    r.normalize();
    return r;
}

std::string SymElem::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        long long mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool printed = false;
        if (mag != 1 || m.empty()) {
            os << mag;
            printed = true;
        }
        for (const auto& [v, e] : m) {
            if (printed) os << "*";
            printed = true;
            os << sym_var_name(v);
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

} // namespace ssd4
