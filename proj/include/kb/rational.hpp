#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kb/errors.hpp"

namespace kb {

// Overflow-checked 64-bit arithmetic. Heights and search bounds keep every
// value tiny, but exactness must never silently degrade.
inline std::int64_t checkedAdd(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in exact arithmetic");
    return r;
}

inline std::int64_t checkedSub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in exact arithmetic");
    return r;
}

inline std::int64_t checkedMul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in exact arithmetic");
    return r;
}

inline std::int64_t checkedNeg(std::int64_t a) { return checkedSub(0, a); }

/// Exact rational with canonical form: den > 0, gcd(|num|, den) = 1.
struct Rational {
    std::int64_t num{0};
    std::int64_t den{1};

    Rational() = default;

    static Rational ofInt(std::int64_t n) {
        Rational r;
        r.num = n;
        r.den = 1;
        return r;
    }

    static Rational make(std::int64_t n, std::int64_t d) {
        if (d == 0) throw UsageError("zero denominator");
        if (d < 0) {
            n = checkedNeg(n);
            d = checkedNeg(d);
        }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        Rational r;
        r.num = n;
        r.den = d;
        return r;
    }

    bool isZero() const noexcept { return num == 0; }
    bool isOne() const noexcept { return num == 1 && den == 1; }
    bool isInteger() const noexcept { return den == 1; }

    Rational operator+(const Rational& o) const {
        return make(checkedAdd(checkedMul(num, o.den), checkedMul(o.num, den)), checkedMul(den, o.den));
    }

    Rational operator-(const Rational& o) const {
        return make(checkedSub(checkedMul(num, o.den), checkedMul(o.num, den)), checkedMul(den, o.den));
    }

    Rational operator*(const Rational& o) const {
        return make(checkedMul(num, o.num), checkedMul(den, o.den));
    }

    Rational operator-() const {
        Rational r;
        r.num = checkedNeg(num);
        r.den = den;
        return r;
    }

    bool operator==(const Rational& o) const noexcept { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const noexcept { return !(*this == o); }

    /// Sign of (*this - o), computed exactly.
    int cmp(const Rational& o) const {
        std::int64_t lhs = checkedMul(num, o.den);
        std::int64_t rhs = checkedMul(o.num, den);
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }

    int sign() const noexcept { return num < 0 ? -1 : (num > 0 ? 1 : 0); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace kb
