#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "pimsim/errors.hpp"

namespace pimsim {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("GaussInt addition overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("GaussInt subtraction overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("GaussInt multiplication overflow");
    return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
    return checked_sub(0, a);
}

}  // namespace detail

/// Exact Gaussian integer re + im*i over 64-bit storage.
///
/// Every arithmetic operation is checked; results that do not fit raise
/// OverflowError instead of wrapping.
struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    constexpr GaussInt() = default;
    constexpr GaussInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

    [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }
    [[nodiscard]] bool is_even() const { return (re & 1) == 0 && (im & 1) == 0; }

    /// |z|^2 as a 128-bit value; cannot overflow for any 64-bit components.
    [[nodiscard]] unsigned __int128 norm() const {
        const auto r = static_cast<__int128>(re);
        const auto i = static_cast<__int128>(im);
        return static_cast<unsigned __int128>(r * r) + static_cast<unsigned __int128>(i * i);
    }

    [[nodiscard]] GaussInt conj() const { return {re, detail::checked_neg(im)}; }

    /// Multiplication by i: (re, im) -> (-im, re).
    [[nodiscard]] GaussInt times_i() const { return {detail::checked_neg(im), re}; }

    /// Arithmetic right shift of both components. Caller guarantees divisibility
    /// when exactness matters.
    [[nodiscard]] GaussInt shr(unsigned bits) const { return {re >> bits, im >> bits}; }
    [[nodiscard]] GaussInt shl(unsigned bits) const;

    GaussInt& operator+=(const GaussInt& o) {
        re = detail::checked_add(re, o.re);
        im = detail::checked_add(im, o.im);
        return *this;
    }
    GaussInt& operator-=(const GaussInt& o) {
        re = detail::checked_sub(re, o.re);
        im = detail::checked_sub(im, o.im);
        return *this;
    }

    friend GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
    friend GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
    friend GaussInt operator-(const GaussInt& a) {
        return {detail::checked_neg(a.re), detail::checked_neg(a.im)};
    }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        using detail::checked_add;
        using detail::checked_mul;
        using detail::checked_sub;
        return {checked_sub(checked_mul(a.re, b.re), checked_mul(a.im, b.im)),
                checked_add(checked_mul(a.re, b.im), checked_mul(a.im, b.re))};
    }

    friend bool operator==(const GaussInt&, const GaussInt&) = default;
    friend auto operator<=>(const GaussInt&, const GaussInt&) = default;
};

std::ostream& operator<<(std::ostream& os, const GaussInt& z);

/// Non-negative dyadic rational num / 2^exp, kept in lowest terms.
struct DyadicRational {
    unsigned __int128 num = 0;
    unsigned exp = 0;

    static DyadicRational make(unsigned __int128 num, unsigned exp);

    [[nodiscard]] double to_double() const;
    /// "p/q" with q = 2^exp written out in decimal.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
};

std::string u128_to_string(unsigned __int128 v);

}  // namespace pimsim
