#pragma once

// GF(p^m) arithmetic with deterministic construction: the modulus is the
// lexicographically least monic irreducible of degree m over GF(p)
// (ascending element-code order), and the generator is the least element of
// full multiplicative order p^m - 1.  Field elements are integer codes in
// [0, p^m): the base-p digits of a code are the coefficients of the residue
// polynomial, constant term least significant, so the additive group of the
// field coincides with the mixed-radix product group Z_p x ... x Z_p.
//
// Construction builds log/antilog tables relative to the generator, making
// multiplication, Frobenius and traces O(1) per step afterwards.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "diffam/group.hpp"
#include "diffam/numeric.hpp"

namespace diffam {

namespace poly {

// Dense coefficient vectors over GF(p), constant term first, no trailing
// zero guarantees (use trim).  Only used during field construction.
using Poly = std::vector<i64>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly mod(Poly f, const Poly& g, i64 p) {
    // g monic
    trim(f);
    const int dg = degree(g);
    while (degree(f) >= dg) {
        const i64 lead = f.back();
        const int shift = degree(f) - dg;
        for (int i = 0; i <= dg; ++i) {
            f[shift + i] = ((f[shift + i] - lead * g[i]) % p + p) % p;
        }
        trim(f);
    }
    return f;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& g, i64 p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    return mod(std::move(prod), g, p);
}

inline Poly powmod(Poly base, i64 e, const Poly& g, i64 p) {
    Poly acc{1};
    base = mod(std::move(base), g, p);
    while (e > 0) {
        if (e & 1) acc = mulmod(acc, base, g, p);
        base = mulmod(base, base, g, p);
        e >>= 1;
    }
    return acc;
}

inline Poly gcd(Poly a, Poly b, i64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic before reducing
        const i64 lead = b.back();
        if (lead != 1) {
            // multiply by lead^{-1} mod p (p prime)
            i64 inv = 1, base = lead, e = p - 2;
            while (e > 0) {
                if (e & 1) inv = inv * base % p;
                base = base * base % p;
                e >>= 1;
            }
            for (auto& c : b) c = c * inv % p;
        }
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin irreducibility test: f (monic, degree m) is irreducible over GF(p)
// iff x^(p^m) = x (mod f) and gcd(x^(p^(m/t)) - x, f) = 1 for every prime
// t | m.  x^(p^k) is computed by k successive p-th powers.
inline bool irreducible(const Poly& f, i64 p) {
    const int m = degree(f);
    if (m < 1) return false;
    if (m == 1) return true;
    const Poly x{0, 1};
    auto frob_iterate = [&](int k) {
        Poly h = x;
        for (int i = 0; i < k; ++i) h = powmod(std::move(h), p, f, p);
        return h;
    };
    Poly top = frob_iterate(m);
    Poly diff = top;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    trim(diff);
    if (!diff.empty()) return false;  // x^(p^m) != x
    for (const auto& [t, e] : factorize(m)) {
        (void)e;
        Poly h = frob_iterate(m / static_cast<int>(t));
        Poly d = h;
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = ((d[1] - 1) % p + p) % p;
        trim(d);
        Poly g = gcd(f, d, p);
        if (degree(g) != 0) return false;
    }
    return true;
}

}  // namespace poly

struct Field {
    i64 p = 2;
    int m = 1;
    i64 r = 2;                 // p^m
    std::vector<i64> modulus;  // m+1 coefficients, constant term first, monic
    i64 generator = 1;         // element code of the chosen primitive element

    std::vector<i64> pow_of_g;  // pow_of_g[i] = g^i, size r-1
    std::vector<i64> log_of;    // log_of[pow_of_g[i]] = i; log_of[0] = -1

    i64 add(i64 a, i64 b) const {
        if (p == 2) return a ^ b;
        i64 out = 0, place = 1;
        for (int j = 0; j < m; ++j) {
            i64 s = a % p + b % p;
            if (s >= p) s -= p;
            out += s * place;
            place *= p;
            a /= p;
            b /= p;
        }
        return out;
    }

    i64 neg(i64 a) const {
        if (p == 2) return a;
        i64 out = 0, place = 1;
        for (int j = 0; j < m; ++j) {
            const i64 c = a % p;
            out += (c == 0 ? 0 : p - c) * place;
            place *= p;
            a /= p;
        }
        return out;
    }

    i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }

    i64 mul(i64 a, i64 b) const {
        if (a == 0 || b == 0) return 0;
        return pow_of_g[(log_of[a] + log_of[b]) % (r - 1)];
    }

    i64 inv(i64 a) const {
        if (a == 0) throw std::invalid_argument("field: inverse of zero");
        return pow_of_g[(r - 1 - log_of[a]) % (r - 1)];
    }

    i64 pow(i64 a, i64 e) const {
        if (a == 0) {
            if (e == 0) return 1;
            if (e < 0) throw std::invalid_argument("field: negative power of zero");
            return 0;
        }
        i64 le = (log_of[a] * (e % (r - 1))) % (r - 1);
        if (le < 0) le += r - 1;
        return pow_of_g[le];
    }

    // a^(p^times)
    i64 frobenius(i64 a, int times = 1) const {
        if (a == 0) return 0;
        i64 e = log_of[a];
        for (int i = 0; i < times; ++i) e = static_cast<i64>((static_cast<i128>(e) * p) % (r - 1));
        return pow_of_g[e];
    }

    // Trace onto the subfield GF(p^d): x + x^(p^d) + ... , m/d terms.
    // The result is returned as an element code of this field; it lies in
    // the subfield fixed by the d-th Frobenius power.
    i64 trace(i64 x, int sub_degree) const {
        if (sub_degree < 1 || m % sub_degree != 0)
            throw std::invalid_argument("trace: subfield degree must divide m");
        i64 acc = 0, y = x;
        const int terms = m / sub_degree;
        for (int i = 0; i < terms; ++i) {
            acc = add(acc, y);
            y = frobenius(y, sub_degree);
        }
        return acc;
    }

    // Absolute trace onto GF(p); the returned code is a value in [0, p).
    i64 trace_to_prime(i64 x) const { return trace(x, 1); }

    i64 order_of(i64 a) const {
        if (a == 0) throw std::invalid_argument("field: order of zero");
        const i64 l = log_of[a];
        return (r - 1) / std::gcd(r - 1, l);
    }

    // The additive group (Z_p)^m under the shared mixed-radix encoding:
    // group element codes coincide with field element codes.
    Group additive_group() const {
        return make_group(GroupKind::field_additive, std::vector<i64>(m, p));
    }
};

namespace detail {

// Multiplication by raw polynomial arithmetic on digit codes; only used
// while the tables are being built.
inline i64 mul_raw(i64 a, i64 b, const std::vector<i64>& modulus, i64 p) {
    poly::Poly pa, pb;
    for (i64 x = a; x != 0; x /= p) pa.push_back(x % p);
    for (i64 x = b; x != 0; x /= p) pb.push_back(x % p);
    poly::Poly prod = poly::mulmod(pa, pb, modulus, p);
    i64 out = 0;
    for (std::size_t i = prod.size(); i-- > 0;) out = out * p + prod[i];
    return out;
}

inline i64 pow_raw(i64 a, i64 e, const std::vector<i64>& modulus, i64 p) {
    i64 acc = 1, base = a;
    while (e > 0) {
        if (e & 1) acc = mul_raw(acc, base, modulus, p);
        base = mul_raw(base, base, modulus, p);
        e >>= 1;
    }
    return acc;
}

}  // namespace detail

inline Field build_field(i64 p, int m) {
    if (!is_prime(p)) throw std::invalid_argument("build_field: p must be prime");
    if (m < 1) throw std::invalid_argument("build_field: m must be >= 1");
    i64 r = 1;
    for (int i = 0; i < m; ++i) {
        if (r > (i64{1} << 26) / p) throw std::invalid_argument("build_field: field too large");
        r *= p;
    }

    Field f;
    f.p = p;
    f.m = m;
    f.r = r;

    // lexicographically least monic irreducible of degree m: scan codes of
    // the non-leading coefficients ascending
    poly::Poly candidate(m + 1, 0);
    candidate[m] = 1;
    bool found = false;
    for (i64 tail = 0; tail < r && !found; ++tail) {
        i64 x = tail;
        for (int j = 0; j < m; ++j) { candidate[j] = x % p; x /= p; }
        if (poly::irreducible(candidate, p)) found = true;
    }
    if (!found) throw std::logic_error("build_field: no irreducible polynomial found");
    f.modulus = candidate;

    // least primitive element by element-code order
    const auto factors = factorize(r - 1);
    auto is_primitive = [&](i64 g) {
        if (detail::pow_raw(g, r - 1, f.modulus, p) != 1) return false;
        for (const auto& [q, e] : factors) {
            (void)e;
            if (detail::pow_raw(g, (r - 1) / q, f.modulus, p) == 1) return false;
        }
        return true;
    };
    f.generator = 0;
    for (i64 g = 1; g < r; ++g) {
        if (r == 2) { f.generator = 1; break; }  // trivial multiplicative group
        if (g == 1) continue;
        if (is_primitive(g)) { f.generator = g; break; }
    }
    if (f.generator == 0) throw std::logic_error("build_field: no primitive element found");

    f.pow_of_g.resize(r - 1);
    f.log_of.assign(r, -1);
    i64 acc = 1;
    for (i64 i = 0; i < r - 1; ++i) {
        f.pow_of_g[i] = acc;
        if (f.log_of[acc] != -1) throw std::logic_error("build_field: generator order defect");
        f.log_of[acc] = i;
        acc = detail::mul_raw(acc, f.generator, f.modulus, p);
    }
    if (acc != 1) throw std::logic_error("build_field: generator order defect");
    return f;
}

// Build GF(q) for a prime power q = p^e.
inline Field build_field_q(i64 q) {
    const auto pp = prime_power(q);
    if (!pp) throw std::invalid_argument("build_field_q: q must be a prime power");
    return build_field(pp->first, pp->second);
}

// Cyclotomic classes of order N: classes[i] = g^i <g^N>, each sorted by
// element code.  N must divide r - 1.
struct CyclotomyTable {
    const Field* field = nullptr;
    i64 N = 1;
    std::vector<std::vector<i64>> classes;
};

inline CyclotomyTable cyclotomic_classes(const Field& f, i64 N) {
    if (N < 1 || (f.r - 1) % N != 0)
        throw std::invalid_argument("cyclotomic_classes: N must divide r - 1");
    CyclotomyTable t;
    t.field = &f;
    t.N = N;
    t.classes.assign(N, {});
    const i64 size = (f.r - 1) / N;
    for (i64 i = 0; i < N; ++i) {
        auto& cl = t.classes[i];
        cl.reserve(size);
        for (i64 s = 0; s < size; ++s) cl.push_back(f.pow_of_g[(i + s * N) % (f.r - 1)]);
        std::sort(cl.begin(), cl.end());
    }
    return t;
}

// Uniform cyclotomy (semiprimitive case): r = p^(2 j gamma) with
// N | p^j + 1 and j minimal.  Case A iff gamma, p and (p^j + 1)/N are all
// odd.  Gaussian periods then have the closed rational forms below.
struct SemiprimitiveCase {
    i64 p = 2;
    int j = 1;
    int gamma = 1;
    i64 N = 2;
    char case_tag = 'B';
    i64 sqrt_r = 2;  // p^(j*gamma), exact
};

inline std::optional<SemiprimitiveCase> semiprimitive_case(i64 p, int e, i64 N) {
    if (!is_prime(p) || e < 2 || N < 2) return std::nullopt;
    // minimal j with N | p^j + 1; 2j must divide e, so j <= e/2 suffices
    for (int j = 1; 2 * j <= e; ++j) {
        i64 pj = 1;
        for (int i = 0; i < j; ++i) pj *= p;
        if ((pj + 1) % N != 0) continue;
        if (e % (2 * j) != 0) return std::nullopt;  // j is minimal but 2j does not divide e
        SemiprimitiveCase c;
        c.p = p;
        c.j = j;
        c.gamma = e / (2 * j);
        c.N = N;
        i64 s = 1;
        for (int i = 0; i < j * c.gamma; ++i) s *= p;
        c.sqrt_r = s;
        const bool all_odd = (c.gamma % 2 == 1) && (p % 2 == 1) && (((pj + 1) / N) % 2 == 1);
        c.case_tag = all_odd ? 'A' : 'B';
        return c;
    }
    return std::nullopt;
}

inline std::vector<Rational> gaussian_periods_uniform(const SemiprimitiveCase& c) {
    const i64 N = c.N;
    const i64 s = c.sqrt_r;
    std::vector<Rational> eta(static_cast<std::size_t>(N));
    if (c.case_tag == 'A') {
        if (N % 2 != 0) throw std::domain_error("gaussian_periods_uniform: case A needs even N");
        const Rational special{(N - 1) * s - 1, N};
        const Rational rest = -Rational{1 + s, N};
        for (i64 i = 0; i < N; ++i) eta[i] = (i == N / 2) ? special : rest;
    } else {
        const i64 sgn = (c.gamma % 2 == 0) ? 1 : -1;
        const Rational rest{sgn * s - 1, N};
        eta[0] = Rational{-sgn * s} + rest;
        for (i64 i = 1; i < N; ++i) eta[i] = rest;
    }
    return eta;
}

}  // namespace diffam
