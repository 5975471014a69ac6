#pragma once

// Constructors for every difference set, almost difference set and disjoint
// difference family instantiated in the library, each brute-force verified
// before it is returned.  A constructor can never emit an unverified
// object: a verification failure here is an internal defect and throws
// std::logic_error.
//
// Residue-class families (quadratic, biquadratic, octic) work over Z_q for
// prime q and over the additive group of GF(q) for prime powers; both share
// the mixed-radix element encoding.

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffam/designs.hpp"
#include "diffam/field.hpp"
#include "diffam/group.hpp"
#include "diffam/numeric.hpp"
#include "diffam/verify.hpp"

namespace diffam {

namespace detail {

inline i64 mod_pow(i64 base, i64 e, i64 mod) {
    i64 acc = 1;
    base %= mod;
    while (e > 0) {
        if (e & 1) acc = static_cast<i64>(static_cast<i128>(acc) * base % mod);
        base = static_cast<i64>(static_cast<i128>(base) * base % mod);
        e >>= 1;
    }
    return acc;
}

inline i64 least_primitive_root(i64 q) {
    const auto factors = factorize(q - 1);
    for (i64 g = 2; g < q; ++g) {
        bool ok = true;
        for (const auto& [p, e] : factors) {
            (void)e;
            if (mod_pow(g, (q - 1) / p, q) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("least_primitive_root: none found");
}

inline void require_verified(const VerificationReport& rep, const char* what) {
    if (!rep.pass) throw std::logic_error(std::string(what) + ": constructed object failed verification");
}

}  // namespace detail

// The additive group of GF(q) (or Z_q for prime q) together with the
// cyclotomic classes of order e, as sorted code sets.
struct ResidueContext {
    Group group;
    std::vector<Block> classes;  // classes[i] = g^i <g^e>
};

inline ResidueContext power_residue_classes(i64 q, i64 e) {
    const auto pp = prime_power(q);
    if (!pp) throw std::invalid_argument("power_residue_classes: q must be a prime power");
    if (e < 1 || (q - 1) % e != 0)
        throw std::invalid_argument("power_residue_classes: e must divide q - 1");
    ResidueContext ctx;
    if (pp->second == 1) {
        ctx.group = cyclic_group(q);
        const i64 g = detail::least_primitive_root(q);
        ctx.classes.assign(static_cast<std::size_t>(e), {});
        i64 acc = 1;
        for (i64 t = 0; t < q - 1; ++t) {
            ctx.classes[static_cast<std::size_t>(t % e)].push_back(acc);
            acc = static_cast<i64>(static_cast<i128>(acc) * g % q);
        }
        for (auto& cl : ctx.classes) std::sort(cl.begin(), cl.end());
    } else {
        const Field f = build_field(pp->first, pp->second);
        ctx.group = f.additive_group();
        ctx.classes = cyclotomic_classes(f, e).classes;
    }
    return ctx;
}

// ---------------------------------------------------------------------------
// Difference sets

// Trace-zero index set {0 <= i < (q^m-1)/(q-1) : Tr(alpha^i) = 0} with
// alpha = g^(q-1).  Exposed without the gcd gate so that both directions of
// the size criterion |D| = (q^(m-1)-1)/(q-1) iff gcd(q-1, m) = 1 can be
// tested.
inline Block singer_trace_zero_indices(i64 q, int m) {
    const auto pp = prime_power(q);
    if (!pp) throw std::invalid_argument("singer: q must be a prime power");
    const Field f = build_field(pp->first, pp->second * m);
    const i64 v = (f.r - 1) / (q - 1);
    Block D;
    for (i64 i = 0; i < v; ++i) {
        const i64 ai = f.pow_of_g[((q - 1) * i) % (f.r - 1)];
        if (f.trace(ai, pp->second) == 0) D.push_back(i);
    }
    return D;
}

inline DifferenceSet singer_ds(i64 q, int m) {
    const auto pp = prime_power(q);
    if (!pp) throw std::invalid_argument("singer_ds: q must be a prime power");
    if (m < 3) throw std::invalid_argument("singer_ds: m must be >= 3");
    if (std::gcd(q - 1, static_cast<i64>(m)) != 1)
        throw std::domain_error("singer_ds: gcd(q-1, m) must be 1");
    DifferenceSet ds;
    i64 qm = 1;
    for (int i = 0; i < m; ++i) qm *= q;
    ds.v = (qm - 1) / (q - 1);
    ds.k = (qm / q - 1) / (q - 1);
    ds.lambda = (qm / q / q - 1) / (q - 1);
    ds.group = cyclic_group(ds.v);
    ds.elements = singer_trace_zero_indices(q, m);
    if (static_cast<i64>(ds.elements.size()) != ds.k)
        throw std::logic_error("singer_ds: trace-zero set has unexpected size");
    auto rep = verify_difference_set(ds.group, ds.elements);
    detail::require_verified(rep, "singer_ds");
    if (rep.computed.at("lambda") != ds.lambda) throw std::logic_error("singer_ds: lambda mismatch");
    return ds;
}

// Paley: nonzero squares of GF(q), q = 3 (mod 4); a (q, (q-1)/2, (q-3)/4)
// skew difference set.
inline DifferenceSet paley_qr_ds(i64 q) {
    if (!prime_power(q)) throw std::invalid_argument("paley_qr_ds: q must be a prime power");
    if (q % 4 != 3) throw std::domain_error("paley_qr_ds: q must be 3 (mod 4)");
    auto ctx = power_residue_classes(q, 2);
    DifferenceSet ds;
    ds.group = std::move(ctx.group);
    ds.elements = std::move(ctx.classes[0]);
    ds.v = q;
    ds.k = (q - 1) / 2;
    ds.lambda = (q - 3) / 4;
    auto rep = verify_difference_set(ds.group, ds.elements);
    detail::require_verified(rep, "paley_qr_ds");
    if (rep.computed.at("lambda") != ds.lambda) throw std::logic_error("paley_qr_ds: lambda mismatch");
    return ds;
}

// Nonsquares together with zero: a (q, (q+1)/2, (q+1)/4) difference set.
inline DifferenceSet qr_complement_zero_ds(i64 q) {
    if (!prime_power(q)) throw std::invalid_argument("qr_complement_zero_ds: q must be a prime power");
    if (q % 4 != 3) throw std::domain_error("qr_complement_zero_ds: q must be 3 (mod 4)");
    auto ctx = power_residue_classes(q, 2);
    DifferenceSet ds;
    ds.group = std::move(ctx.group);
    ds.elements = std::move(ctx.classes[1]);
    ds.elements.push_back(0);
    std::sort(ds.elements.begin(), ds.elements.end());
    ds.v = q;
    ds.k = (q + 1) / 2;
    ds.lambda = (q + 1) / 4;
    auto rep = verify_difference_set(ds.group, ds.elements);
    detail::require_verified(rep, "qr_complement_zero_ds");
    if (rep.computed.at("lambda") != ds.lambda)
        throw std::logic_error("qr_complement_zero_ds: lambda mismatch");
    return ds;
}

// Biquadratic residues: without zero needs q = 4t^2 + 1 (t odd), giving a
// (q, (q-1)/4, (q-5)/16) set; with zero needs q = 4t^2 + 9 (t odd), giving
// (q, (q+3)/4, (q+3)/16).  Quadratic-form gates are checked by integer
// square root.
inline DifferenceSet biquadratic_ds(i64 q, bool with_zero) {
    if (!prime_power(q)) throw std::invalid_argument("biquadratic_ds: q must be a prime power");
    const i64 shifted = with_zero ? q - 9 : q - 1;
    if (shifted < 4 || shifted % 4 != 0 || !is_perfect_square(shifted / 4))
        throw std::domain_error("biquadratic_ds: q fails the quadratic-form condition");
    const i64 t = isqrt(shifted / 4);
    if (t % 2 != 1) throw std::domain_error("biquadratic_ds: t must be odd");
    if ((q - 1) % 4 != 0) throw std::domain_error("biquadratic_ds: 4 must divide q - 1");
    auto ctx = power_residue_classes(q, 4);
    DifferenceSet ds;
    ds.group = std::move(ctx.group);
    ds.elements = std::move(ctx.classes[0]);
    if (with_zero) {
        ds.elements.push_back(0);
        std::sort(ds.elements.begin(), ds.elements.end());
    }
    ds.v = q;
    ds.k = with_zero ? (q + 3) / 4 : (q - 1) / 4;
    ds.lambda = with_zero ? (q + 3) / 16 : (q - 5) / 16;
    auto rep = verify_difference_set(ds.group, ds.elements);
    detail::require_verified(rep, "biquadratic_ds");
    if (rep.computed.at("lambda") != ds.lambda) throw std::logic_error("biquadratic_ds: lambda mismatch");
    return ds;
}

// Octic residues: without zero needs q = 8t^2 + 1 = 64s^2 + 9 (t, s odd),
// giving (q, (q-1)/8, (q-9)/64); with zero needs q = 8t^2 + 49 =
// 64s^2 + 441 (t odd, s even), giving (q, (q+7)/8, (q+7)/64).
inline DifferenceSet octic_ds(i64 q, bool with_zero) {
    if (!prime_power(q)) throw std::invalid_argument("octic_ds: q must be a prime power");
    const i64 t2 = with_zero ? q - 49 : q - 1;
    const i64 s2 = with_zero ? q - 441 : q - 9;
    if (t2 < 8 || t2 % 8 != 0 || !is_perfect_square(t2 / 8))
        throw std::domain_error("octic_ds: q fails the 8t^2 representation");
    if (s2 < 0 || s2 % 64 != 0 || !is_perfect_square(s2 / 64))
        throw std::domain_error("octic_ds: q fails the 64s^2 representation");
    const i64 t = isqrt(t2 / 8);
    const i64 s = isqrt(s2 / 64);
    if (t % 2 != 1) throw std::domain_error("octic_ds: t must be odd");
    if (with_zero ? (s % 2 != 0) : (s % 2 != 1))
        throw std::domain_error(with_zero ? "octic_ds: s must be even" : "octic_ds: s must be odd");
    if ((q - 1) % 8 != 0) throw std::domain_error("octic_ds: 8 must divide q - 1");
    auto ctx = power_residue_classes(q, 8);
    DifferenceSet ds;
    ds.group = std::move(ctx.group);
    ds.elements = std::move(ctx.classes[0]);
    if (with_zero) {
        ds.elements.push_back(0);
        std::sort(ds.elements.begin(), ds.elements.end());
    }
    ds.v = q;
    ds.k = with_zero ? (q + 7) / 8 : (q - 1) / 8;
    ds.lambda = with_zero ? (q + 7) / 64 : (q - 9) / 64;
    auto rep = verify_difference_set(ds.group, ds.elements);
    detail::require_verified(rep, "octic_ds");
    if (rep.computed.at("lambda") != ds.lambda) throw std::logic_error("octic_ds: lambda mismatch");
    return ds;
}

// Twin-prime difference set in Z_q x Z_(q+2): pairs (x, y) with x and y both
// nonzero squares, both nonsquares, or y = 0.
inline DifferenceSet twin_prime_ds(i64 q) {
    if (!is_prime(q) || !is_prime(q + 2))
        throw std::domain_error("twin_prime_ds: q and q+2 must both be prime");
    const i64 q2 = q + 2;
    std::vector<char> sq1(static_cast<std::size_t>(q), 0), sq2(static_cast<std::size_t>(q2), 0);
    for (i64 x = 1; x < q; ++x) sq1[static_cast<std::size_t>(x * x % q)] = 1;
    for (i64 y = 1; y < q2; ++y) sq2[static_cast<std::size_t>(y * y % q2)] = 1;

    DifferenceSet ds;
    ds.group = make_group(GroupKind::product, {q, q2});
    for (i64 x = 0; x < q; ++x) {
        for (i64 y = 0; y < q2; ++y) {
            const bool in = (y == 0) ||
                            (x != 0 && y != 0 && sq1[static_cast<std::size_t>(x)] &&
                             sq2[static_cast<std::size_t>(y)]) ||
                            (x != 0 && y != 0 && !sq1[static_cast<std::size_t>(x)] &&
                             !sq2[static_cast<std::size_t>(y)]);
            if (in) ds.elements.push_back(x * q2 + y);
        }
    }
    ds.v = q * q2;
    ds.k = (q * q + 2 * q - 1) / 2;
    ds.lambda = (q * q + 2 * q - 3) / 4;
    auto rep = verify_difference_set(ds.group, ds.elements);
    detail::require_verified(rep, "twin_prime_ds");
    if (rep.computed.at("lambda") != ds.lambda) throw std::logic_error("twin_prime_ds: lambda mismatch");
    return ds;
}

// Complement: (v, v-k, v-2k+lambda).
inline DifferenceSet complement_ds(const DifferenceSet& d) {
    DifferenceSet out;
    out.group = d.group;
    out.v = d.v;
    out.k = d.v - d.k;
    out.lambda = d.v - 2 * d.k + d.lambda;
    std::vector<char> in(static_cast<std::size_t>(d.v), 0);
    for (i64 x : d.elements) in[static_cast<std::size_t>(x)] = 1;
    for (i64 x = 0; x < d.v; ++x)
        if (!in[static_cast<std::size_t>(x)]) out.elements.push_back(x);
    auto rep = verify_difference_set(out.group, out.elements);
    detail::require_verified(rep, "complement_ds");
    if (rep.computed.at("lambda") != out.lambda) throw std::logic_error("complement_ds: lambda mismatch");
    return out;
}

// ---------------------------------------------------------------------------
// Almost difference sets / disjoint difference families

// Quadratic residues for q = 1 (mod 4): a (q, (q-1)/2, (q-5)/4; (q-1)/2)
// almost difference set whose low set T is the set of squares itself.
inline AlmostDifferenceSet qr_ads(i64 q) {
    if (!prime_power(q)) throw std::invalid_argument("qr_ads: q must be a prime power");
    if (q % 4 != 1) throw std::domain_error("qr_ads: q must be 1 (mod 4)");
    auto ctx = power_residue_classes(q, 2);
    AlmostDifferenceSet ads;
    ads.group = std::move(ctx.group);
    ads.elements = std::move(ctx.classes[0]);
    ads.v = q;
    ads.k = (q - 1) / 2;
    ads.lambda = (q - 5) / 4;
    ads.t = (q - 1) / 2;
    auto rep = verify_ads(ads.group, ads.elements);
    detail::require_verified(rep, "qr_ads");
    if (rep.computed.at("lambda") != ads.lambda || rep.computed.at("t") != ads.t)
        throw std::logic_error("qr_ads: parameter mismatch");
    ads.T = ads_low_set(ads.group, ads.elements);
    if (ads.T != ads.elements) throw std::logic_error("qr_ads: low set is not the square class");
    return ads;
}

// Cyclotomic classes of order e as a (q, (q-1)/e, (q-1-e)/e; e)-DDF.
inline DisjointDifferenceFamily cyclotomic_ddf(i64 q, i64 e) {
    const auto pp = prime_power(q);
    if (!pp || pp->first == 2) throw std::invalid_argument("cyclotomic_ddf: q must be an odd prime power");
    if (e < 2 || (q - 1) % e != 0)
        throw std::invalid_argument("cyclotomic_ddf: e must divide q - 1 and be >= 2");
    if ((q - 1) / e < 2) throw std::invalid_argument("cyclotomic_ddf: class size must be >= 2");
    auto ctx = power_residue_classes(q, e);
    DisjointDifferenceFamily ddf;
    ddf.group = std::move(ctx.group);
    ddf.blocks = std::move(ctx.classes);
    ddf.v = q;
    ddf.k = (q - 1) / e;
    ddf.lambda = (q - 1 - e) / e;
    auto rep = verify_ddf(ddf.group, ddf.blocks);
    detail::require_verified(rep, "cyclotomic_ddf");
    if (rep.computed.at("gamma") != ddf.lambda) throw std::logic_error("cyclotomic_ddf: gamma mismatch");
    return ddf;
}

// ---------------------------------------------------------------------------
// Catalog enumeration

struct CatalogEntry {
    std::string name;
    DifferenceSet ds;
};

// A curated spread of verified catalog instances with v <= v_max, used by
// the property and acceptance suites.
inline std::vector<CatalogEntry> catalog_instances(i64 v_max = 500) {
    std::vector<CatalogEntry> out;
    auto add = [&](std::string name, DifferenceSet ds) {
        if (ds.v <= v_max) out.push_back({std::move(name), std::move(ds)});
    };

    const std::vector<std::pair<i64, int>> singer_params = {
        {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {2, 8}, {3, 3}, {3, 5},
        {4, 4}, {4, 5}, {5, 3}, {8, 3}, {9, 3}, {11, 3}, {17, 3}};
    for (auto [q, m] : singer_params) {
        i64 qm = 1;
        for (int i = 0; i < m; ++i) qm *= q;
        if ((qm - 1) / (q - 1) > v_max) continue;
        add("singer(" + std::to_string(q) + "," + std::to_string(m) + ")", singer_ds(q, m));
    }

    const std::vector<i64> paley_q = {7,  11,  19,  23,  27,  31,  43,  47,  59,  67,  71,
                                      79, 83,  103, 107, 127, 131, 139, 151, 163, 167, 179,
                                      191, 199, 211, 223, 227, 239, 251, 263, 271, 283, 307};
    for (i64 q : paley_q) {
        if (q > v_max) break;
        add("paley(" + std::to_string(q) + ")", paley_qr_ds(q));
    }
    for (i64 q : {7, 11, 19, 23, 27, 31, 43, 59}) {
        if (q > v_max) break;
        add("qrzero(" + std::to_string(q) + ")", qr_complement_zero_ds(q));
    }
    for (i64 q : {37, 101, 197}) {
        if (q > v_max) break;
        add("biquadratic(" + std::to_string(q) + ")", biquadratic_ds(q, false));
    }
    for (i64 q : {13, 109}) {
        if (q > v_max) break;
        add("biquadratic0(" + std::to_string(q) + ")", biquadratic_ds(q, true));
    }
    if (73 <= v_max) add("octic(73)", octic_ds(73, false));
    for (i64 q : {3, 5, 11, 17}) {
        if (q * (q + 2) > v_max) break;
        add("twinprime(" + std::to_string(q) + ")", twin_prime_ds(q));
    }
    return out;
}

struct CatalogFamily {
    std::string name;
    std::string parameters;
    std::string precondition;
};

inline std::vector<CatalogFamily> catalog_families() {
    return {
        {"singer", "((q^m-1)/(q-1), (q^(m-1)-1)/(q-1), (q^(m-2)-1)/(q-1))",
         "q a prime power, m >= 3, gcd(q-1, m) = 1"},
        {"paley", "(q, (q-1)/2, (q-3)/4)", "q a prime power, q = 3 (mod 4)"},
        {"qrzero", "(q, (q+1)/2, (q+1)/4)", "q a prime power, q = 3 (mod 4)"},
        {"biquadratic", "(q, (q-1)/4, (q-5)/16)", "q = 4t^2+1 a prime power, t odd"},
        {"biquadratic0", "(q, (q+3)/4, (q+3)/16)", "q = 4t^2+9 a prime power, t odd"},
        {"octic", "(q, (q-1)/8, (q-9)/64)", "q = 8t^2+1 = 64s^2+9 a prime power, t and s odd"},
        {"octic0", "(q, (q+7)/8, (q+7)/64)",
         "q = 8t^2+49 = 64s^2+441 a prime power, t odd, s even"},
        {"twinprime", "(q(q+2), (q^2+2q-1)/2, (q^2+2q-3)/4)", "q and q+2 both prime"},
        {"qrads", "ADS (q, (q-1)/2, (q-5)/4; t = (q-1)/2)", "q a prime power, q = 1 (mod 4)"},
        {"cyclotomic-ddf", "DDF (q, (q-1)/e, (q-1-e)/e; e)",
         "q an odd prime power, e >= 2, e | q-1, (q-1)/e >= 2"},
    };
}

}  // namespace diffam
