#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pfd {

/// Exact rational on 64-bit integers, always in lowest terms with a
/// positive denominator. All comparisons cross-multiply in 128 bits, so
/// they are exact for every value this project produces (edge and vertex
/// counts, thresholds).
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    /// Serialized as "p/q", denominator always present ("3/1", "-2/5").
    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses the "p/q" form emitted by str(). Throws std::invalid_argument.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
            throw std::invalid_argument("malformed rational: " + s);
        size_t pn = 0, pd = 0;
        long long n = std::stoll(s.substr(0, slash), &pn);
        long long d = std::stoll(s.substr(slash + 1), &pd);
        if (pn != slash || pd != s.size() - slash - 1)
            throw std::invalid_argument("malformed rational: " + s);
        return Rational(n, d);
    }

private:
    long long num_;
    long long den_;

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    static Rational from128(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        return Rational((long long)n, (long long)d);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }
};

}  // namespace pfd
