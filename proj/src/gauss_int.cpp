#include "pimsim/gauss_int.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace pimsim {

GaussInt GaussInt::shl(unsigned bits) const {
    if (bits == 0) return *this;
    if (bits >= 63) {
        if (is_zero()) return *this;
        throw OverflowError("GaussInt shift overflow");
    }
    const std::int64_t factor = std::int64_t{1} << bits;
    return {detail::checked_mul(re, factor), detail::checked_mul(im, factor)};
}

std::ostream& operator<<(std::ostream& os, const GaussInt& z) {
    return os << '(' << z.re << (z.im < 0 ? "" : "+") << z.im << "i)";
}

DyadicRational DyadicRational::make(unsigned __int128 num, unsigned exp) {
    if (num == 0) return {0, 0};
    while (exp > 0 && (num & 1) == 0) {
        num >>= 1;
        --exp;
    }
    return {num, exp};
}

double DyadicRational::to_double() const {
    return std::ldexp(static_cast<double>(num), -static_cast<int>(exp));
}

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::string DyadicRational::to_string() const {
    if (exp >= 128) throw OverflowError("dyadic denominator exceeds 128 bits");
    const unsigned __int128 den = static_cast<unsigned __int128>(1) << exp;
    return u128_to_string(num) + "/" + u128_to_string(den);
}

}  // namespace pimsim
