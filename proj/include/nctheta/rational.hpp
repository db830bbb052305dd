#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace nct {

/// Exact rational on 64-bit integers, always stored normalized with a
/// positive denominator. Overflow is not guarded; the matrices in this
/// library are tiny (n <= 4, entries of modest size).
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool is_integer() const { return den == 1; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rat operator+(const Rat& a, const Rat& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rat operator-(const Rat& a, const Rat& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rat operator*(const Rat& a, const Rat& b) { return {a.num * b.num, a.den * b.den}; }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw std::domain_error("rational division by zero");
        return {a.num * b.den, a.den * b.num};
    }
    Rat operator-() const { Rat r; r.num = -num; r.den = den; return r; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
};

}  // namespace nct
