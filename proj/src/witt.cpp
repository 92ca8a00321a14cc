#include "witt.hpp"

#include <sstream>

namespace ssd4 {

namespace {

unsigned check_bits(unsigned bits) {
    if (bits < 1 || bits > 64)
        fail(Status::invalid_argument, "precision must be between 1 and 64 bits");
    return bits;
}

void check_compatible(const WittU& x, const WittU& y) {
    if (!x.field() || !y.field())
        fail(Status::invalid_argument, "null 2-adic element in arithmetic");
    if (!(*x.field() == *y.field()))
        fail(Status::field_mismatch, "2-adic elements over different residue fields");
}

} // namespace

WittU::WittU(FieldRef field, unsigned bits)
    : field_(std::move(field)), bits_(check_bits(bits)), c_(field_->degree(), 0) {}

WittU WittU::lift(const FieldElem& x, unsigned bits) {
    WittU r(x.field(), bits);
    for (unsigned i = 0; i < r.field_->degree(); ++i) r.c_[i] = (x.bits() >> i) & 1;
    return r;
}

WittU WittU::from_int(const FieldRef& f, unsigned bits, std::uint64_t n) {
    WittU r(f, bits);
    r.c_[0] = n & r.mask();
    return r;
}

bool WittU::is_zero() const {
    for (auto w : c_)
        if (w) return false;
    return true;
}

FieldElem WittU::reduce_mod2() const {
    std::uint64_t bits = 0;
    for (unsigned i = 0; i < field_->degree(); ++i) bits |= (c_[i] & 1) << i;
    return FieldElem(field_, bits);
}

WittU WittU::operator+(const WittU& o) const {
    check_compatible(*this, o);
    WittU r(field_, std::min(bits_, o.bits_));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = (c_[i] + o.c_[i]) & r.mask();
    return r;
}

WittU WittU::operator-(const WittU& o) const {
    check_compatible(*this, o);
    WittU r(field_, std::min(bits_, o.bits_));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = (c_[i] - o.c_[i]) & r.mask();
    return r;
}

WittU WittU::operator-() const {
    WittU r(field_, bits_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = (~c_[i] + 1) & r.mask();
    return r;
}

// Reduce a raw coefficient vector modulo the (monic, 0/1) lifted modulus.
void WittU::reduce_poly(std::vector<std::uint64_t>& c) const {
    const unsigned n = field_->degree();
    for (size_t i = c.size(); i-- > n;) {
        std::uint64_t top = c[i] & mask();
        if (!top) continue;
        c[i] = 0;
        for (unsigned j = 0; j < n; ++j)
            if (field_->modulus() >> j & 1) c[i - n + j] = (c[i - n + j] - top) & mask();
    }
    c.resize(n);
}

WittU WittU::operator*(const WittU& o) const {
    check_compatible(*this, o);
    WittU r(field_, std::min(bits_, o.bits_));
    std::vector<std::uint64_t> prod(2 * c_.size(), 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            prod[i + j] = (prod[i + j] + c_[i] * o.c_[j]) & r.mask();
    }
    r.reduce_poly(prod);
    r.c_ = std::move(prod);
    return r;
}

WittU WittU::inverse() const {
    FieldElem r0 = reduce_mod2();
    if (r0.is_zero()) fail(Status::not_a_unit, "2-adic element is not a unit");
    // Newton iteration y <- y (2 - x y), doubling correct bits from 1.
    WittU y = lift(r0.inverse(), bits_);
    WittU two = from_int(field_, bits_, 2);
    for (unsigned correct = 1; correct < bits_; correct *= 2) y = y * (two - *this * y);
    return y;
}

bool WittU::divisible_by_pow2(unsigned k) const {
    if (k >= bits_) fail(Status::precision_exhausted, "divisibility beyond stored precision");
    const std::uint64_t low = (1ull << k) - 1;
    for (auto w : c_)
        if (w & low) return false;
    return true;
}

WittU WittU::shift_down(unsigned k) const {
    if (k == 0) return *this;
    if (!divisible_by_pow2(k)) fail(Status::not_a_unit, "element is not divisible by 2^k");
    if (bits_ - k < 1) fail(Status::precision_exhausted, "no certified bits remain");
    WittU r(field_, bits_ - k);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = (c_[i] >> k) & r.mask();
    return r;
}

bool WittU::operator==(const WittU& o) const {
    if (!field_ || !o.field_) return c_ == o.c_;
    return *field_ == *o.field_ && bits_ == o.bits_ && c_ == o.c_;
}

std::string WittU::to_string() const {
    bool all_zero = is_zero();
    if (all_zero) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!first) os << " + ";
        first = false;
        if (c_[i] != 1 || i == 0) os << c_[i];
        if (i > 0) {
            if (c_[i] != 1) os << "*";
            os << "a";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

WittW WittW::scalar(WittU a) {
    WittU b(a.field(), a.bits());
    return WittW(std::move(a), std::move(b));
}

WittW WittW::zero(const FieldRef& f, unsigned bits) {
    return WittW(WittU(f, bits), WittU(f, bits));
}

WittW WittW::one(const FieldRef& f, unsigned bits) {
    return WittW(WittU::from_int(f, bits, 1), WittU(f, bits));
}

WittW WittW::s(const FieldRef& f, unsigned bits) {
    return WittW(WittU(f, bits), WittU::from_int(f, bits, 1));
}

WittW WittW::operator*(const WittW& o) const {
    // (a + b s)(c + d s) = ac + 2bd + (ad + bc) s
    WittU two = WittU::from_int(a_.field(), std::min(bits(), o.bits()), 2);
    return WittW(a_ * o.a_ + two * (b_ * o.b_), a_ * o.b_ + b_ * o.a_);
}

WittW WittW::inverse() const {
    WittU two = WittU::from_int(a_.field(), bits(), 2);
    WittU norm = a_ * a_ - two * (b_ * b_);
    WittU ninv = norm.inverse();
    return WittW(a_ * ninv, -(b_ * ninv));
}

std::string WittW::to_string() const {
    if (b_.is_zero()) return a_.to_string();
    std::string sb = "(" + b_.to_string() + ")*s";
    if (a_.is_zero()) return sb;
    return "(" + a_.to_string() + ") + " + sb;
}

std::shared_ptr<const LiftRingCtx> LiftRingCtx::make(const WittW& eta) {
    FieldElem eta_bar = eta.reduce_mod2();
    if (eta_bar.is_zero()) fail(Status::not_a_unit, "eta must be a unit for the beta layer");
    auto ctx = std::make_shared<LiftRingCtx>();
    ctx->field = eta.a().field();
    ctx->bits = eta.bits();
    ctx->eta = eta;
    ctx->beta_bar = eta_bar.sqrt();
    return ctx;
}

WittB::WittB(LiftRing ring, WittW x, WittW y)
    : ring_(std::move(ring)), x_(std::move(x)), y_(std::move(y)) {
    if (!ring_) fail(Status::invalid_argument, "beta-layer element requires a ring context");
}

WittB WittB::scalar(const LiftRing& r, WittW x) {
    return WittB(r, std::move(x), WittW::zero(r->field, r->bits));
}

WittB WittB::from_int(const LiftRing& r, std::uint64_t n) {
    return scalar(r, WittW::scalar(WittU::from_int(r->field, r->bits, n)));
}

WittB WittB::beta(const LiftRing& r) {
    return WittB(r, WittW::zero(r->field, r->bits), WittW::one(r->field, r->bits));
}

WittB WittB::s(const LiftRing& r) {
    return scalar(r, WittW::s(r->field, r->bits));
}

WittB WittB::lift(const LiftRing& r, const FieldElem& x) {
    return scalar(r, WittW::scalar(WittU::lift(x, r->bits)));
}

FieldElem WittB::reduce_mod2() const {
    return x_.reduce_mod2() + y_.reduce_mod2() * ring_->beta_bar;
}

namespace {
void check_ring(const WittB& a, const WittB& b) {
    if (a.ring() != b.ring()) {
        // Same mathematical ring is fine; contexts must agree on eta.
        if (!a.ring() || !b.ring() || a.ring()->eta != b.ring()->eta)
            fail(Status::field_mismatch, "beta-layer elements from different ring contexts");
    }
}
} // namespace

WittB WittB::operator+(const WittB& o) const {
    check_ring(*this, o);
    return WittB(ring_, x_ + o.x_, y_ + o.y_);
}

WittB WittB::operator-(const WittB& o) const {
    check_ring(*this, o);
    return WittB(ring_, x_ - o.x_, y_ - o.y_);
}

WittB WittB::operator-() const {
    return WittB(ring_, -x_, -y_);
}

WittB WittB::operator*(const WittB& o) const {
    check_ring(*this, o);
    // (x1 + y1 b)(x2 + y2 b) with b^2 = -s b - eta:
    //   = x1 x2 - eta y1 y2 + (x1 y2 + x2 y1 - s y1 y2) b
    WittW yy = y_ * o.y_;
    WittW xpart = x_ * o.x_ - ring_->eta * yy;
    WittW ypart = x_ * o.y_ + y_ * o.x_ - WittW::s(ring_->field, ring_->bits) * yy;
    return WittB(ring_, std::move(xpart), std::move(ypart));
}

WittB WittB::inverse() const {
    // Conjugate root: b' = -s - b; (x + y b)(x + y b') = x^2 - s x y + eta y^2.
    WittW norm = x_ * x_ - WittW::s(ring_->field, ring_->bits) * x_ * y_ + ring_->eta * y_ * y_;
    WittW ninv = norm.inverse();
    WittW cx = x_ - WittW::s(ring_->field, ring_->bits) * y_;
    return WittB(ring_, cx * ninv, -(y_ * ninv));
}

WittB WittB::shift_down(unsigned k) const {
    if (k == 0) return *this;
    WittB r(ring_, x_.shift_down(k), y_.shift_down(k));
    return r;
}

std::string WittB::to_string() const {
    if (y_.is_zero()) return x_.to_string();
    std::string yb = "(" + y_.to_string() + ")*b";
    if (x_.is_zero()) return yb;
    return "(" + x_.to_string() + ") + " + yb;
}

} // namespace ssd4
