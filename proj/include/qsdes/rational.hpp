#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsdes {

using Int128 = __int128;
using UInt128 = unsigned __int128;

namespace detail {

inline UInt128 uabs128(Int128 v) {
    return v < 0 ? UInt128(-(v + 1)) + 1 : UInt128(v);
}

inline UInt128 gcd128(UInt128 a, UInt128 b) {
    while (b != 0) {
        UInt128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// 256-bit product of two 128-bit unsigned values, kept as four 64-bit words
// (little-endian). Only needed to compare cross products without overflow.
struct U256 {
    std::uint64_t w[4];
};

inline U256 mul128(UInt128 a, UInt128 b) {
    const std::uint64_t a0 = std::uint64_t(a), a1 = std::uint64_t(a >> 64);
    const std::uint64_t b0 = std::uint64_t(b), b1 = std::uint64_t(b >> 64);
    UInt128 p00 = UInt128(a0) * b0;
    UInt128 p01 = UInt128(a0) * b1;
    UInt128 p10 = UInt128(a1) * b0;
    UInt128 p11 = UInt128(a1) * b1;

    U256 r{};
    r.w[0] = std::uint64_t(p00);
    UInt128 mid = (p00 >> 64) + std::uint64_t(p01) + std::uint64_t(p10);
    r.w[1] = std::uint64_t(mid);
    UInt128 hi = (mid >> 64) + (p01 >> 64) + (p10 >> 64) + std::uint64_t(p11);
    r.w[2] = std::uint64_t(hi);
    r.w[3] = std::uint64_t((hi >> 64) + (p11 >> 64));
    return r;
}

inline int cmp256(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
        if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace detail

/// Exact rational on 128-bit integers. Always normalized: den > 0, gcd(num,den) = 1.
/// Comparisons are exact for any representable operands (256-bit cross products).
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Int128 n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(Int128 n, Int128 d) : num_(n), den_(d) { normalize(); }

    static Rational of(std::int64_t n, std::int64_t d) { return Rational(Int128(n), Int128(d)); }

    /// Exact rational equal to the given double (doubles are dyadic rationals).
    /// Throws if the value is not finite or needs more than 128 bits.
    static Rational from_double(double v) {
        if (!std::isfinite(v)) throw std::invalid_argument("Rational::from_double: not finite");
        if (v == 0.0) return Rational();
        int exp = 0;
        double mant = std::frexp(v, &exp);  // v = mant * 2^exp, |mant| in [0.5, 1)
        auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
        exp -= 53;
        if (exp >= 0) {
            if (exp > 60) throw std::invalid_argument("Rational::from_double: too large");
            return Rational(Int128(scaled) << exp, 1);
        }
        if (exp < -120) throw std::invalid_argument("Rational::from_double: too small");
        return Rational(Int128(scaled), Int128(1) << (-exp));
    }

    Int128 num() const { return num_; }
    Int128 den() const { return den_; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational abs() const { return num_ < 0 ? -*this : *this; }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(num_ * o.den_, den_ * o.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return cmp(o) < 0; }
    bool operator<=(const Rational& o) const { return cmp(o) <= 0; }
    bool operator>(const Rational& o) const { return cmp(o) > 0; }
    bool operator>=(const Rational& o) const { return cmp(o) >= 0; }

    double to_double() const {
        return double(static_cast<long double>(num_) / static_cast<long double>(den_));
    }

    /// Decimal string, exact when the expansion terminates within max_frac digits,
    /// otherwise rounded to max_frac digits (half away from zero).
    std::string to_decimal(int max_frac = 6) const {
        UInt128 n = detail::uabs128(num_);
        UInt128 d = UInt128(den_);
        std::string out = num_ < 0 ? "-" : "";
        out += u128_str(n / d);
        UInt128 rem = n % d;
        if (rem == 0) return out;
        std::string frac;
        for (int i = 0; i < max_frac && rem != 0; ++i) {
            rem *= 10;
            frac += char('0' + int(rem / d));
            rem %= d;
        }
        if (rem != 0 && 2 * rem >= d) {  // round the last kept digit
            int i = int(frac.size()) - 1;
            while (i >= 0 && frac[i] == '9') frac[i--] = '0';
            if (i >= 0) {
                frac[i]++;
            } else {
                // carry into the integer part
                out = (num_ < 0 ? "-" : "") + u128_str(n / d + 1);
            }
        }
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
        return out;
    }

    /// Fixed-point string with exactly `digits` fractional digits, rounded half away from zero.
    std::string to_fixed(int digits) const {
        UInt128 scale = 1;
        for (int i = 0; i < digits; ++i) scale *= 10;
        UInt128 n = detail::uabs128(num_) * scale;
        UInt128 d = UInt128(den_);
        UInt128 q = n / d;
        if (2 * (n % d) >= d) ++q;
        std::string s = u128_str(q);
        while (s.size() < std::size_t(digits) + 1) s.insert(s.begin(), '0');
        s.insert(s.size() - digits, digits > 0 ? "." : "");
        return (num_ < 0 && q != 0 ? "-" : "") + s;
    }

    static std::string u128_str(UInt128 v) {
        if (v == 0) return "0";
        std::string s;
        while (v != 0) {
            s += char('0' + int(v % 10));
            v /= 10;
        }
        return {s.rbegin(), s.rend()};
    }

    std::string num_str() const { return (num_ < 0 ? "-" : "") + u128_str(detail::uabs128(num_)); }
    std::string den_str() const { return u128_str(UInt128(den_)); }

private:
    int cmp(const Rational& o) const {
        if (num_ == o.num_ && den_ == o.den_) return 0;
        int sa = sign(), sb = o.sign();
        if (sa != sb) return sa < sb ? -1 : 1;
        // same nonzero sign: compare |a.num|*b.den vs |b.num|*a.den in 256 bits
        auto lhs = detail::mul128(detail::uabs128(num_), UInt128(o.den_));
        auto rhs = detail::mul128(detail::uabs128(o.num_), UInt128(den_));
        int c = detail::cmp256(lhs, rhs);
        return sa > 0 ? c : -c;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        UInt128 g = detail::gcd128(detail::uabs128(num_), UInt128(den_));
        if (g > 1) {
            num_ = (num_ < 0 ? -Int128(detail::uabs128(num_) / g) : Int128(detail::uabs128(num_) / g));
            den_ = Int128(UInt128(den_) / g);
        }
    }

    Int128 num_;
    Int128 den_;
};

}  // namespace qsdes
