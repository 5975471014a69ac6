#pragma once

// Exact integer helpers shared across the library: integer square roots,
// trial-division primality and factorization, capped binomial coefficients
// and a small exact rational type.  Everything here is overflow-checked via
// __int128 where products can grow; no floating point is used in any result.

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace diffam {

using i64 = std::int64_t;
using i128 = __int128;

// floor(sqrt(n)), exact.
inline i64 isqrt(i64 n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    if (n == 0) return 0;
    auto r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(i64 n) {
    if (n < 0) return false;
    const i64 r = isqrt(n);
    return r * r == n;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (i64 f = 5; f * f <= n; f += 6) {
        if (n % f == 0 || n % (f + 2) == 0) return false;
    }
    return true;
}

// Prime factorization as (prime, exponent) pairs, primes ascending.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) throw std::invalid_argument("factorize: argument must be positive");
    std::vector<std::pair<i64, int>> out;
    for (i64 p : {i64{2}, i64{3}}) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.emplace_back(p, e);
    }
    for (i64 f = 5; f * f <= n; f += 6) {
        for (i64 p : {f, f + 2}) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            if (e) out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// q = p^e with p prime, e >= 1; nullopt when q is not a prime power.
inline std::optional<std::pair<i64, int>> prime_power(i64 q) {
    if (q < 2) return std::nullopt;
    auto f = factorize(q);
    if (f.size() != 1) return std::nullopt;
    return std::make_pair(f[0].first, f[0].second);
}

// C(n, k) with the convention C(n, k) = 0 for k < 0 or k > n.
// Returns nullopt when the value would exceed `cap`.
inline std::optional<i64> binomial_capped(i64 n, i64 k, i64 cap) {
    if (k < 0 || k > n || n < 0) return i64{0};
    k = std::min(k, n - k);
    i128 acc = 1;
    for (i64 i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;  // exact: partial products are binomials
        if (acc > cap) return std::nullopt;
    }
    return static_cast<i64>(acc);
}

// C(n, k) without a cap; throws if the exact value does not fit the cap.
inline i64 binomial(i64 n, i64 k, i64 cap = (i64{1} << 62)) {
    auto b = binomial_capped(n, k, cap);
    if (!b) throw std::overflow_error("binomial: value exceeds cap");
    return *b;
}

// Exact rational on int64 with overflow-safe comparisons.
struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n) : num(n), den(1) {}                     // NOLINT(google-explicit-constructor)
    Rational(i64 n, i64 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const i64 g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool is_integer() const { return den == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
        return {a.num * b.den, a.den * b.num};
    }
    Rational operator-() const { return {-num, den}; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<i128>(a.num) * b.den < static_cast<i128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
};

}  // namespace diffam
