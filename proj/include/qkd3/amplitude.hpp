#pragma once

#include "qkd3/rational.hpp"

namespace qkd3 {

/// Complex amplitude of the form re + im3 * sqrt(3) * i with rational
/// coefficients. This ring is closed under +, -, *, conjugation, and
/// contains the cube roots of unity (omega = -1/2 + (1/2)*sqrt(3)i), which
/// is all the state constructions in this project need. The squared
/// modulus re^2 + 3*im3^2 is again rational, so every overlap probability
/// stays exact.
struct ExactAmp {
    Rational re;    // coefficient of 1
    Rational im3;   // coefficient of sqrt(3)*i

    constexpr ExactAmp() = default;
    ExactAmp(Rational r, Rational i = Rational()) : re(r), im3(i) {}
    ExactAmp(std::int64_t r) : re(r), im3() {}

    bool is_zero() const noexcept { return re.is_zero() && im3.is_zero(); }

    ExactAmp operator+(const ExactAmp& o) const { return {re + o.re, im3 + o.im3}; }
    ExactAmp operator-(const ExactAmp& o) const { return {re - o.re, im3 - o.im3}; }
    ExactAmp operator-() const { return {-re, -im3}; }

    // (p + q*s3i)(r + t*s3i) = pr - 3qt + (pt + qr)*s3i
    ExactAmp operator*(const ExactAmp& o) const {
        return {re * o.re - Rational(3) * im3 * o.im3, re * o.im3 + im3 * o.re};
    }

    ExactAmp conj() const { return {re, -im3}; }

    /// |z|^2 = p^2 + 3 q^2, exact and >= 0, zero iff z == 0.
    Rational norm_sq() const { return re * re + Rational(3) * im3 * im3; }

    bool operator==(const ExactAmp& o) const = default;

    std::string str() const { return "(" + re.str() + ", " + im3.str() + "*s3i)"; }

    static ExactAmp zero() { return {}; }
    static ExactAmp one() { return {Rational(1)}; }
    /// e^{2 pi i / 3} = -1/2 + (1/2) sqrt(3) i
    static ExactAmp omega() { return {Rational(-1, 2), Rational(1, 2)}; }
    /// e^{-2 pi i / 3}
    static ExactAmp omega_bar() { return {Rational(-1, 2), Rational(-1, 2)}; }
};

inline ExactAmp amp_mul(const ExactAmp& a, const ExactAmp& b) { return a * b; }
inline Rational amp_norm_sq(const ExactAmp& a) { return a.norm_sq(); }

}  // namespace qkd3
