#pragma once

#include <cstdint>
#include <cmath>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qkd3 {

/// Exact rational number with a 64-bit canonical representation.
///
/// Invariants: den > 0 and gcd(|num|, den) == 1 at all times. Intermediate
/// products are carried in 128-bit arithmetic and narrowed back after
/// reduction; a result that does not fit 64 bits throws std::overflow_error
/// instead of wrapping. The magnitudes occurring in this project (overlap
/// probabilities of small integer vectors) stay far below that limit.
class Rational {
public:
    constexpr Rational() noexcept : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) noexcept : num_(n), den_(1) {}

    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        *this = reduce(static_cast<__int128>(n), static_cast<__int128>(d));
    }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_negative() const noexcept { return num_ < 0; }

    Rational operator-() const noexcept {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational operator+(const Rational& o) const {
        return reduce(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return reduce(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return reduce(i128(num_) * o.num_, i128(den_) * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return reduce(i128(num_) * o.den_, i128(den_) * o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const noexcept {
        return num_ == o.num_ && den_ == o.den_;
    }
    std::strong_ordering operator<=>(const Rational& o) const noexcept {
        __int128 lhs = i128(num_) * o.den_;
        __int128 rhs = i128(o.num_) * den_;
        return lhs <=> rhs;
    }

    Rational abs() const noexcept { return num_ < 0 ? -*this : *this; }

    /// The single exact-to-float boundary of the code base: everything is
    /// computed as Rational and converted here, never the other way around
    /// (from_double exists for diagnostics only).
    double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// Exact rational value of a finite double (m * 2^e decomposition).
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw std::domain_error("Rational: non-finite double");
        if (x == 0.0) return Rational();
        int exp = 0;
        double m = std::frexp(x, &exp);       // x = m * 2^exp, 0.5 <= |m| < 1
        auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
        exp -= 53;
        Rational r(mant);
        while (exp > 0) { r = r * Rational(2); --exp; }
        while (exp < 0) { r = r / Rational(2); ++exp; }
        return r;
    }

    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

private:
    static constexpr __int128 i128(std::int64_t v) noexcept { return v; }

    static Rational reduce(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: 64-bit overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline double to_float(const Rational& r) noexcept { return r.to_double(); }

}  // namespace qkd3
