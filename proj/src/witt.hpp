#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gf2.hpp"

namespace ssd4 {

/// Element of the unramified layer Z/2^N [a] / (M(a)), where M is the field
/// modulus with its 0/1 coefficients read in Z/2^N. Reduction mod 2 is the
/// coefficient-wise bit map back to GF(2^n). `bits` is the 2-adic precision
/// the value is known to; mixed-precision operands degrade to the minimum.
class WittU {
public:
    WittU() = default;
    WittU(FieldRef field, unsigned bits); // zero
    static WittU lift(const FieldElem& x, unsigned bits);
    static WittU from_int(const FieldRef& f, unsigned bits, std::uint64_t n);

    const FieldRef& field() const noexcept { return field_; }
    unsigned bits() const noexcept { return bits_; }
    const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }

    bool is_zero() const;
    FieldElem reduce_mod2() const;

    WittU operator+(const WittU& o) const;
    WittU operator-(const WittU& o) const;
    WittU operator-() const;
    WittU operator*(const WittU& o) const;

    // Hensel-lifted inverse; requires the reduction to be nonzero, else
    // throws NotAUnit.
    WittU inverse() const;

    bool divisible_by_pow2(unsigned k) const;
    // Exact division by 2^k; precision drops by k. Throws NotAUnit when not
    // divisible and PrecisionExhausted when no certified bits would remain.
    WittU shift_down(unsigned k) const;

    bool operator==(const WittU& o) const;
    bool operator!=(const WittU& o) const { return !(*this == o); }

    std::string to_string() const; // integer-coefficient polynomial in a

private:
    std::uint64_t mask() const noexcept { return bits_ == 64 ? ~0ull : ((1ull << bits_) - 1); }
    void reduce_poly(std::vector<std::uint64_t>& c) const;

    FieldRef field_;
    unsigned bits_ = 0;
    std::vector<std::uint64_t> c_; // length n, masked to bits_
};

/// The ramified layer W = U[s]/(s^2 - 2); s plays the role of sqrt(2).
/// Reduction mod 2 kills s.
class WittW {
public:
    WittW() = default;
    WittW(WittU a, WittU b) : a_(std::move(a)), b_(std::move(b)) {}
    static WittW scalar(WittU a);
    static WittW zero(const FieldRef& f, unsigned bits);
    static WittW one(const FieldRef& f, unsigned bits);
    static WittW s(const FieldRef& f, unsigned bits);

    const WittU& a() const noexcept { return a_; } // coefficient of 1
    const WittU& b() const noexcept { return b_; } // coefficient of s
    unsigned bits() const { return std::min(a_.bits(), b_.bits()); }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    FieldElem reduce_mod2() const { return a_.reduce_mod2(); }

    WittW operator+(const WittW& o) const { return {a_ + o.a_, b_ + o.b_}; }
    WittW operator-(const WittW& o) const { return {a_ - o.a_, b_ - o.b_}; }
    WittW operator-() const { return {-a_, -b_}; }
    WittW operator*(const WittW& o) const;

    // (a + bs)^-1 = (a - bs) / (a^2 - 2 b^2); requires a (and hence the
    // norm) to be a unit.
    WittW inverse() const;

    bool divisible_by_pow2(unsigned k) const {
        return a_.divisible_by_pow2(k) && b_.divisible_by_pow2(k);
    }
    WittW shift_down(unsigned k) const { return {a_.shift_down(k), b_.shift_down(k)}; }

    bool operator==(const WittW& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const WittW& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    WittU a_, b_;
};

/// Ring context for the beta layer B = W[b]/(b^2 + s b + eta): the lift of
/// eta must be a unit of W. Reduction mod 2 sends b to the distinguished
/// square root of eta mod 2.
struct LiftRingCtx {
    FieldRef field;
    unsigned bits;
    WittW eta;
    FieldElem beta_bar; // sqrt of the reduction of eta

    static std::shared_ptr<const LiftRingCtx> make(const WittW& eta);
};
using LiftRing = std::shared_ptr<const LiftRingCtx>;

/// Element x + y*b of the beta layer.
class WittB {
public:
    WittB() = default;
    WittB(LiftRing ring, WittW x, WittW y);

    static WittB scalar(const LiftRing& r, WittW x);
    static WittB from_int(const LiftRing& r, std::uint64_t n);
    static WittB beta(const LiftRing& r);
    static WittB s(const LiftRing& r);
    static WittB lift(const LiftRing& r, const FieldElem& x);

    const LiftRing& ring() const noexcept { return ring_; }
    const WittW& x() const noexcept { return x_; }
    const WittW& y() const noexcept { return y_; }

    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
    FieldElem reduce_mod2() const;

    WittB operator+(const WittB& o) const;
    WittB operator-(const WittB& o) const;
    WittB operator-() const;
    WittB operator*(const WittB& o) const;
    WittB one_like() const { return from_int(ring_, 1); }

    WittB inverse() const; // via the conjugate x + y(-s - b) and the W-norm

    bool divisible_by_pow2(unsigned k) const {
        return x_.divisible_by_pow2(k) && y_.divisible_by_pow2(k);
    }
    WittB shift_down(unsigned k) const;
    bool is_certified_unit() const { return !reduce_mod2().is_zero(); }

    bool operator==(const WittB& o) const { return x_ == o.x_ && y_ == o.y_; }
    bool operator!=(const WittB& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    LiftRing ring_;
    WittW x_, y_;
};

} // namespace ssd4
