#ifndef HDIAG_RATIONAL_HPP
#define HDIAG_RATIONAL_HPP

// Small exact rational type used for metric diameters. Values at play are
// tiny (2^-k for window sizes, |n-m|/((1+|n|)(1+|m|)) for integer points),
// so 64-bit components with gcd normalization are plenty; overflow would
// indicate a misuse and throws rather than wrapping.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hdiag {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    // 2^-k, the cylinder-diameter building block.
    static Rational pow2_inv(int k) {
        if (k < 0 || k > 62) throw std::out_of_range("rational: 2^-k exponent out of range");
        return Rational(1, std::int64_t(1) << k);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        // Cross-multiplication; components stay far below the 64-bit cliff here.
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    double approx() const { return double(num) / double(den); }
};

} // namespace hdiag

#endif // HDIAG_RATIONAL_HPP
