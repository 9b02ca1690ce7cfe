#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

namespace mahler {

// Rigorous absolute error radius, stored as m * 2^e with a 16-bit mantissa
// (or exactly zero). All operations round the radius upward, so a value
// tagged with an ErrBound is guaranteed to lie within that distance of the
// exact quantity it approximates. The short mantissa keeps long accumulation
// chains tight: adding n equal radii grows the bound by ~log2(n) bits, not n.
class ErrBound {
public:
    ErrBound() : m_(0), e_(0) {}

    static ErrBound exact() { return ErrBound(); }
    // Radius exactly 2^e.
    static ErrBound pow2(long e) { return ErrBound(1, e); }

    bool is_zero() const { return m_ == 0; }

    // Smallest t with radius <= 2^t (only for nonzero bounds).
    long log2_upper() const {
        long t = e_;
        std::uint64_t m = m_;
        while (m > 1) {
            m = (m + 1) >> 1;
            ++t;
        }
        return t;
    }

    bool leq_pow2(long t) const { return is_zero() || log2_upper() <= t; }

    ErrBound operator+(const ErrBound& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        long e = std::max(e_, o.e_);
        return ErrBound(shifted_mantissa(e) + o.shifted_mantissa(e), e);
    }
    ErrBound& operator+=(const ErrBound& o) { return *this = *this + o; }

    // Radius scaled by 2^k (k may be negative).
    ErrBound times_pow2(long k) const {
        if (is_zero()) return *this;
        return ErrBound(m_, e_ + k);
    }

    // Product of two radii (used for the rho_x * rho_y cross term).
    ErrBound operator*(const ErrBound& o) const {
        if (is_zero() || o.is_zero()) return exact();
        return ErrBound(m_ * o.m_, e_ + o.e_);
    }

    static ErrBound max(const ErrBound& a, const ErrBound& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        long e = std::max(a.e_, b.e_);
        return ErrBound(std::max(a.shifted_mantissa(e), b.shifted_mantissa(e)), e);
    }

    bool operator<=(const ErrBound& o) const {
        if (is_zero()) return true;
        if (o.is_zero()) return false;
        // Exact comparison of m1*2^e1 vs m2*2^e2 (mantissas are < 2^16, so a
        // 16-bit shift already decides).
        if (e_ <= o.e_) {
            long d = o.e_ - e_;
            return d >= 16 || m_ <= (o.m_ << d);
        }
        long d = e_ - o.e_;
        return d < 16 && (m_ << d) <= o.m_;
    }

    double log2_approx() const;  // for reporting only
    std::string to_string() const;

private:
    ErrBound(std::uint64_t m, long e) : m_(m), e_(e) { normalize(); }

    void normalize() {
        if (m_ == 0) {
            e_ = 0;
            return;
        }
        while (m_ >= (1u << 16)) {
            m_ = (m_ + 1) >> 1;  // ceil: keep the bound valid
            ++e_;
        }
    }

    // Mantissa re-expressed at exponent e >= e_, rounded up.
    std::uint64_t shifted_mantissa(long e) const {
        long d = e - e_;
        if (d <= 0) return m_;
        if (d >= 63) return 1;  // m/2^d < 1, ceil to 1
        std::uint64_t down = m_ >> d;
        if (down << d != m_) ++down;
        return down == 0 ? 1 : down;
    }

    std::uint64_t m_;  // 0, or normalized to [1, 2^16)
    long e_;
};

}  // namespace mahler
