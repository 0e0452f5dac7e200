#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace awtp {

/// Exact rational arithmetic on 64-bit numerator/denominator. All bound
/// formulas are evaluated with this type; floating point never enters an
/// assertion. Intermediates use 128 bits and anything that cannot be reduced
/// back into 64 bits throws.
class Rational {
   public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) {
        if (d == 0) throw ParamError("rational with zero denominator");
        normalize();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    // "p", "-p", or "p/q"
    static Rational parse(const std::string& s) {
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw ParamError("cannot parse rational: " + s);
        }
    }

    Rational operator+(const Rational& o) const {
        return make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator*(const Rational& o) const { return make(i128(num_) * o.num_, i128(den_) * o.den_); }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw ParamError("rational division by zero");
        return make(i128(num_) * o.den_, i128(den_) * o.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return i128(num_) * o.den_ < i128(o.num_) * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    bool is_integer() const { return den_ == 1; }

    long long floor() const {
        if (num_ >= 0 || num_ % den_ == 0) return num_ / den_;
        return num_ / den_ - 1;
    }
    long long ceil() const {
        if (num_ <= 0 || num_ % den_ == 0) return num_ / den_;
        return num_ / den_ + 1;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

   private:
    using i128 = __int128;

    static Rational make(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr i128 lo = -i128(0x7fffffffffffffffLL), hi = i128(0x7fffffffffffffffLL);
        if (n < lo || n > hi || d > hi) throw ParamError("rational overflow");
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            const i128 t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }

    void normalize() {
        const Rational r = make(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    long long num_;
    long long den_;
};

}  // namespace awtp
