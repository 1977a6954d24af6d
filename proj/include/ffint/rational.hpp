#pragma once

#include <cstdint>
#include <string>

#include "ffint/errors.hpp"

namespace ffint {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 i128_abs(i128 x) { return x < 0 ? -x : x; }

inline i128 i128_gcd(i128 a, i128 b) {
    a = i128_abs(a);
    b = i128_abs(b);
    while (b != 0) {
        i128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

inline std::string i128_str(i128 x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    u128 v = neg ? static_cast<u128>(-(x + 1)) + 1 : static_cast<u128>(x);
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
}

} // namespace detail

/// Exact rational with 128-bit numerator/denominator, always reduced with a
/// positive denominator. Big enough for the cycle-type probabilities used
/// here (denominators divide k! for k <= 33).
class Rational {
   public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    static Rational from_i128(detail::i128 n, detail::i128 d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        r.normalize();
        return r;
    }

    detail::i128 num() const { return num_; }
    detail::i128 den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_i128(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// "p/q"; plain "p" when the value is an integer.
    std::string str() const {
        if (den_ == 1) return detail::i128_str(num_);
        return detail::i128_str(num_) + "/" + detail::i128_str(den_);
    }

   private:
    void normalize() {
        if (den_ == 0) raise(ErrorCode::InternalError, "rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        detail::i128 g = detail::i128_gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        // magnitude guard: keep well inside 128 bits so sums cannot overflow
        const detail::i128 limit = detail::i128(1) << 120;
        if (detail::i128_abs(num_) > limit || den_ > limit)
            raise(ErrorCode::InternalError, "rational overflow");
    }

    detail::i128 num_;
    detail::i128 den_;
};

} // namespace ffint
