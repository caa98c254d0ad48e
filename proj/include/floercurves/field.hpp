// Exact coefficient fields: the two-element field F2 and the rationals.
// Everything downstream is templated on the field, so all arithmetic in the
// library is exact; no floating point appears anywhere.

#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace floer {

// The two-element field.
class F2 {
public:
    constexpr F2() : v_(0) {}
    constexpr explicit F2(long long n) : v_(static_cast<uint8_t>(((n % 2) + 2) % 2)) {}

    static constexpr F2 zero() { return F2(0); }
    static constexpr F2 one() { return F2(1); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    F2 operator+(F2 o) const { return F2(v_ ^ o.v_); }
    F2 operator-(F2 o) const { return F2(v_ ^ o.v_); }
    F2 operator-() const { return *this; }
    F2 operator*(F2 o) const { return F2(v_ & o.v_); }
    F2& operator+=(F2 o) { v_ ^= o.v_; return *this; }
    F2& operator-=(F2 o) { v_ ^= o.v_; return *this; }
    F2& operator*=(F2 o) { v_ &= o.v_; return *this; }

    F2 inverse() const {
        if (is_zero()) throw std::domain_error("F2: inverse of zero");
        return *this;
    }
    F2 operator/(F2 o) const { return *this * o.inverse(); }

    bool operator==(F2 o) const { return v_ == o.v_; }
    bool operator!=(F2 o) const { return v_ != o.v_; }
    bool operator<(F2 o) const { return v_ < o.v_; }

    std::string str() const { return v_ ? "1" : "0"; }
    friend std::ostream& operator<<(std::ostream& os, F2 x) { return os << x.str(); }

private:
    constexpr F2(int v, int) : v_(static_cast<uint8_t>(v)) {}
    uint8_t v_;
};

// Exact rationals on 64-bit numerator/denominator with overflow checks.
// Magnitudes in this library stay tiny (curve coefficients, small matrix
// inverses), so 64 bits with __int128 intermediates is plenty; overflow
// throws rather than silently wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return make(-num_, den_); }

    Rational operator+(const Rational& o) const {
        __int128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
        __int128 d = i128(den_) * o.den_;
        return from128(n, d);
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const {
        __int128 n = i128(num_) * o.num_;
        __int128 d = i128(den_) * o.den_;
        return from128(n, d);
    }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        __int128 n = i128(num_) * o.den_;
        __int128 d = i128(den_) * o.num_;
        return from128(n, d);
    }
    Rational inverse() const { return Rational(1) / *this; }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return i128(num_) * o.den_ < i128(o.num_) * den_;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

    // Parses "n" or "n/d"; throws on malformed input.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        }
    }

private:
    static __int128 i128(long long x) { return static_cast<__int128>(x); }

    static Rational make(long long n, long long d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: 64-bit overflow");
        return make(static_cast<long long>(n), static_cast<long long>(d));
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_, den_;
};

template <class K> struct field_name;
template <> struct field_name<F2> { static constexpr const char* value = "F2"; };
template <> struct field_name<Rational> { static constexpr const char* value = "Q"; };

} // namespace floer
