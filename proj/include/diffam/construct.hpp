#pragma once

// The six difference-family constructions.
//
//   C1  intersection family   F = {D n Dx : x != 1}
//   C2  halving family        F = {D n Dx : x in H1},  H1 = -H2
//   C3  augment / reduce      blocks D u X  /  D \ X over s-subsets
//   C4  subgroup partition    blocks (D n (H + g_i)) - g_i over H
//   C5  class unions          s-fold unions of the blocks of a DDF
//   C6  ADS augmentation      blocks D_x, extended by delta_x on the low set
//
// Every emitted family is brute-force verified against its claimed gamma
// before it is returned; closed-form frequencies are cross-checked against
// the measured histogram.  C6 acceptance is an if-and-only-if condition, so
// its failure is a typed rejection rather than an error.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffam/catalog.hpp"
#include "diffam/designs.hpp"
#include "diffam/group.hpp"
#include "diffam/numeric.hpp"
#include "diffam/verify.hpp"

namespace diffam {

constexpr i64 kDefaultBudget = 1'000'000;

namespace detail {

inline std::vector<char> membership(i64 v, const Block& set) {
    std::vector<char> in(static_cast<std::size_t>(v), 0);
    for (i64 x : set) in[static_cast<std::size_t>(x)] = 1;
    return in;
}

// D_x = D n (D + x) as a sorted block.
inline Block intersect_translate(const Group& g, const Block& D, const std::vector<char>& in,
                                 i64 x) {
    Block b;
    for (i64 d : D) {
        const i64 y = g.add(d, x);
        if (in[static_cast<std::size_t>(y)]) b.push_back(y);
    }
    std::sort(b.begin(), b.end());
    return b;
}

inline DesignFamily finalize_family(Group group, BlockList blocks, i64 expected_gamma,
                                    const char* what) {
    DesignFamily fam;
    fam.group = std::move(group);
    fam.v = fam.group.order;
    fam.blocks = std::move(blocks);
    fam.u = static_cast<i64>(fam.blocks.size());
    fam.K = block_size_set(fam.blocks);
    auto rep = verify_difference_family(fam.group, fam.blocks, expected_gamma);
    if (!rep.pass)
        throw std::logic_error(std::string(what) + ": family failed verification against gamma=" +
                               std::to_string(expected_gamma));
    fam.gamma = expected_gamma;
    return fam;
}

// Lexicographic enumeration of the s-subsets of {0, ..., n-1}, calling fn on
// each index vector.
template <typename Fn>
void for_each_subset(std::size_t n, i64 s, Fn&& fn) {
    if (s < 0 || static_cast<std::size_t>(s) > n) return;
    const std::size_t k = static_cast<std::size_t>(s);
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) { fn(idx); return; }
    while (true) {
        fn(idx);
        // rightmost index below its maximum n-k+i
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return;
        --i;
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// C1: {D n Dx : x nonidentity} is a (v, lambda, lambda(lambda-1); v-1)
// family.  Blocks are produced in group enumeration order of x; repeated
// identical blocks are retained (multiset semantics).
inline DesignFamily c1_intersection_family(const DifferenceSet& D) {
    if (D.lambda < 1) throw std::domain_error("c1: lambda must be >= 1");
    const auto in = detail::membership(D.v, D.elements);
    BlockList blocks;
    blocks.reserve(static_cast<std::size_t>(D.v - 1));
    for (i64 x = 1; x < D.v; ++x)
        blocks.push_back(detail::intersect_translate(D.group, D.elements, in, x));
    return detail::finalize_family(D.group, std::move(blocks), D.lambda * (D.lambda - 1), "c1");
}

inline bool is_skew(const DifferenceSet& D) {
    const auto in = detail::membership(D.v, D.elements);
    for (i64 x = 1; x < D.v; ++x) {
        const bool d = in[static_cast<std::size_t>(x)];
        const bool nd = in[static_cast<std::size_t>(D.group.neg(x))];
        if (d == nd) return false;  // both or neither: not a skew set
    }
    return true;
}

// ---------------------------------------------------------------------------
// C2: halve C1 along an inverse-closed split.  Valid when (1) v is odd and
// gcd(v, lambda) = 1, or (2) D is skew; yields gamma = lambda(lambda-1)/2
// with u = (v-1)/2 blocks.
inline void validate_halving(const Group& g, const Halving& h) {
    if (static_cast<i64>(h.h1.size() + h.h2.size()) != g.order - 1)
        throw std::invalid_argument("halving: parts must cover the nonidentity elements");
    std::vector<char> seen(static_cast<std::size_t>(g.order), 0);
    seen[0] = 1;
    for (i64 x : h.h1) {
        if (!g.is_valid_code(x) || x == 0 || seen[static_cast<std::size_t>(x)])
            throw std::invalid_argument("halving: h1 is not a clean part");
        seen[static_cast<std::size_t>(x)] = 1;
    }
    for (i64 x : h.h2) {
        if (!g.is_valid_code(x) || seen[static_cast<std::size_t>(x)])
            throw std::invalid_argument("halving: h2 overlaps h1 or the identity");
        seen[static_cast<std::size_t>(x)] = 1;
    }
    std::vector<i64> negs;
    negs.reserve(h.h1.size());
    for (i64 x : h.h1) negs.push_back(g.neg(x));
    std::sort(negs.begin(), negs.end());
    if (negs != h.h2) throw std::invalid_argument("halving: h2 must equal -h1");
}

inline DesignFamily c2_half_family(const DifferenceSet& D, const Halving& h) {
    const bool case1 = (D.v % 2 == 1) && std::gcd(D.v, D.lambda) == 1;
    const bool case2 = is_skew(D);
    if (!case1 && !case2)
        throw std::domain_error(
            "c2: neither case holds (v odd with gcd(v,lambda)=1 fails, and D is not skew)");
    validate_halving(D.group, h);
    const auto in = detail::membership(D.v, D.elements);
    BlockList blocks;
    blocks.reserve(h.h1.size());
    for (i64 x : h.h1) blocks.push_back(detail::intersect_translate(D.group, D.elements, in, x));
    return detail::finalize_family(D.group, std::move(blocks),
                                   D.lambda * (D.lambda - 1) / 2, "c2");
}

// The skew split H1 = D itself (valid for skew difference sets).
inline Halving skew_halving(const DifferenceSet& D) {
    if (!is_skew(D)) throw std::domain_error("skew_halving: D is not skew");
    Halving h;
    h.h1 = D.elements;
    for (i64 x : D.elements) h.h2.push_back(D.group.neg(x));
    std::sort(h.h2.begin(), h.h2.end());
    return h;
}

// ---------------------------------------------------------------------------
// C3: block augmentation and reduction.

inline i64 c3_augment_gamma_formula(const DifferenceSet& D, i64 s) {
    const i64 v = D.v, k = D.k, l = D.lambda;
    return l * binomial(v - k, s) + 2 * (k - l) * binomial(v - k - 1, s - 1) +
           (v - 2 * k + l) * binomial(v - k - 2, s - 2);
}

// First entry: lambda C(k-2, s), counting the subsets that keep both fixed
// points of a pair inside B \ X.  Second entry: the lambda C(k-2, s-2)
// variant that circulates with the lower index shifted; it does not match
// measured frequencies and is kept for audit only.
inline std::pair<i64, i64> c3_reduce_gamma_formulas(const DifferenceSet& D, i64 s) {
    return {D.lambda * binomial(D.k - 2, s), D.lambda * binomial(D.k - 2, s - 2)};
}

inline DesignFamily c3_augment(const DifferenceSet& D, i64 s, i64 budget = kDefaultBudget) {
    if (s < 1 || s > D.v - D.k - 1)
        throw std::invalid_argument("c3_augment: s must satisfy 1 <= s <= v-k-1");
    const auto u = binomial_capped(D.v - D.k, s, budget);
    if (!u)
        throw std::invalid_argument("c3_augment: enumeration budget exceeded: C(" +
                                    std::to_string(D.v - D.k) + "," + std::to_string(s) +
                                    ") > " + std::to_string(budget));
    const auto in = detail::membership(D.v, D.elements);
    Block complement;
    for (i64 x = 0; x < D.v; ++x)
        if (!in[static_cast<std::size_t>(x)]) complement.push_back(x);

    BlockList blocks;
    blocks.reserve(static_cast<std::size_t>(*u));
    detail::for_each_subset(complement.size(), s, [&](const std::vector<std::size_t>& idx) {
        Block b = D.elements;
        for (std::size_t i : idx) b.push_back(complement[i]);
        std::sort(b.begin(), b.end());
        blocks.push_back(std::move(b));
    });
    return detail::finalize_family(D.group, std::move(blocks), c3_augment_gamma_formula(D, s),
                                   "c3_augment");
}

inline DesignFamily c3_reduce(const DifferenceSet& D, i64 s, i64 budget = kDefaultBudget) {
    if (s < 1 || s > D.k - 1)
        throw std::invalid_argument("c3_reduce: s must satisfy 1 <= s <= k-1");
    const auto u = binomial_capped(D.k, s, budget);
    if (!u)
        throw std::invalid_argument("c3_reduce: enumeration budget exceeded: C(" +
                                    std::to_string(D.k) + "," + std::to_string(s) + ") > " +
                                    std::to_string(budget));
    BlockList blocks;
    blocks.reserve(static_cast<std::size_t>(*u));
    detail::for_each_subset(D.elements.size(), s, [&](const std::vector<std::size_t>& idx) {
        Block b;
        b.reserve(D.elements.size() - idx.size());
        std::size_t next = 0;
        for (std::size_t i = 0; i < D.elements.size(); ++i) {
            if (next < idx.size() && idx[next] == i) { ++next; continue; }
            b.push_back(D.elements[i]);
        }
        blocks.push_back(std::move(b));
    });
    return detail::finalize_family(D.group, std::move(blocks),
                                   c3_reduce_gamma_formulas(D, s).first, "c3_reduce");
}

// ---------------------------------------------------------------------------
// C4: slice D along the cosets of a subgroup H and read the pieces as blocks
// over H.  The raw family keeps empty and full blocks; drop_trivial removes
// blocks of size <= 1 (no gamma change) and blocks equal to H (gamma drops
// by |H| each).
inline DesignFamily c4_subgroup_partition(const DifferenceSet& D, const SubgroupSpec& spec,
                                          bool drop_trivial = false) {
    const auto split = coset_reps(D.group, spec);
    const auto view = subgroup_view(D.group, spec);
    const i64 ell = split.index;
    const i64 h_order = view.sub.order;

    // rep index of an element: its coordinates reduced mod the strides,
    // read as a mixed-radix number over the index pattern
    auto rep_of = [&](i64 code) {
        const Element c = D.group.decode(code);
        i64 idx = 0, repcode = 0;
        for (std::size_t j = 0; j < spec.indices.size(); ++j) {
            const i64 rj = c[j] % spec.indices[j];
            idx = idx * spec.indices[j] + rj;
            repcode = repcode * D.group.moduli[j] + rj;
        }
        return std::make_pair(idx, repcode);
    };

    BlockList blocks(static_cast<std::size_t>(ell));
    for (i64 x : D.elements) {
        const auto [idx, repcode] = rep_of(x);
        blocks[static_cast<std::size_t>(idx)].push_back(view.to_subgroup_code(x, repcode));
    }
    for (auto& b : blocks) std::sort(b.begin(), b.end());

    i64 gamma = D.lambda;
    if (drop_trivial) {
        BlockList kept;
        for (auto& b : blocks) {
            if (static_cast<i64>(b.size()) <= 1) continue;
            if (static_cast<i64>(b.size()) == h_order) { gamma -= h_order; continue; }
            kept.push_back(std::move(b));
        }
        blocks = std::move(kept);
    }
    return detail::finalize_family(view.sub, std::move(blocks), gamma, "c4");
}

inline DesignFamily c4_subgroup_partition(const DifferenceSet& D, i64 ell,
                                          bool drop_trivial = false) {
    if (D.group.moduli.size() != 1)
        throw std::invalid_argument("c4: plain index requires a cyclic-encoded group");
    if (ell < 1 || D.v % ell != 0)
        throw std::invalid_argument("c4: ell must divide v");
    return c4_subgroup_partition(D, cyclic_subgroup_index(ell), drop_trivial);
}

// Raw intersection numbers k_i in coset-representative order.
inline std::vector<i64> c4_block_sizes(const DifferenceSet& D, const SubgroupSpec& spec) {
    const auto fam = c4_subgroup_partition(D, spec, false);
    std::vector<i64> ks;
    ks.reserve(fam.blocks.size());
    for (const auto& b : fam.blocks) ks.push_back(static_cast<i64>(b.size()));
    return ks;
}

// ---------------------------------------------------------------------------
// C5: s-fold unions of the blocks of a (v, k, k-1)-DDF that partitions the
// nonidentity elements; gamma = t1 (k-1) + t2 (v-k-1) with
// t_i = C(u-i, s-i).
inline DesignFamily c5_nrb_union(const DisjointDifferenceFamily& ddf, i64 s,
                                 i64 budget = kDefaultBudget) {
    const i64 u = static_cast<i64>(ddf.blocks.size());
    if (ddf.lambda != ddf.k - 1)
        throw std::domain_error("c5: requires lambda = k - 1");
    std::vector<char> seen(static_cast<std::size_t>(ddf.v), 0);
    i64 covered = 0;
    for (const auto& b : ddf.blocks) {
        for (i64 x : b) {
            if (x == 0 || seen[static_cast<std::size_t>(x)])
                throw std::domain_error("c5: blocks must partition the nonidentity elements");
            seen[static_cast<std::size_t>(x)] = 1;
            ++covered;
        }
    }
    if (covered != ddf.v - 1)
        throw std::domain_error("c5: blocks must partition the nonidentity elements");
    if (s < 1 || s > u - 1) throw std::invalid_argument("c5: s must satisfy 1 <= s <= u-1");
    const auto cnt = binomial_capped(u, s, budget);
    if (!cnt)
        throw std::invalid_argument("c5: enumeration budget exceeded: C(" + std::to_string(u) +
                                    "," + std::to_string(s) + ") > " + std::to_string(budget));

    BlockList blocks;
    blocks.reserve(static_cast<std::size_t>(*cnt));
    detail::for_each_subset(static_cast<std::size_t>(u), s, [&](const std::vector<std::size_t>& idx) {
        Block b;
        for (std::size_t i : idx) b.insert(b.end(), ddf.blocks[i].begin(), ddf.blocks[i].end());
        std::sort(b.begin(), b.end());
        blocks.push_back(std::move(b));
    });
    const i64 t1 = binomial(u - 1, s - 1);
    const i64 t2 = binomial(u - 2, s - 2);
    const i64 gamma = t1 * (ddf.k - 1) + t2 * (ddf.v - ddf.k - 1);
    return detail::finalize_family(ddf.group, std::move(blocks), gamma, "c5");
}

// ---------------------------------------------------------------------------
// C6: augment the low-set blocks of an almost difference set.

// Delta_t = {d - t : d in D, d - t not in D}: the legal augmentation
// choices for t.
inline Block delta_candidates(const AlmostDifferenceSet& ads, i64 t) {
    const auto in = detail::membership(ads.v, ads.elements);
    Block out;
    for (i64 d : ads.elements) {
        const i64 c = ads.group.sub(d, t);
        if (!in[static_cast<std::size_t>(c)]) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct AdsProfile {
    AlmostDifferenceSet ads;
    std::map<i64, i64> delta;  // t in T -> delta_t in Delta_t
};

inline AdsProfile ads_profile_constant(const AlmostDifferenceSet& ads, i64 delta_value) {
    AdsProfile p;
    p.ads = ads;
    for (i64 t : ads.T) p.delta[t] = delta_value;
    return p;
}

struct C6Rejection {
    i64 failing_t = 0;
    i64 measured = 0;
    i64 required = 0;
};

struct C6Outcome {
    bool accepted = false;
    DesignFamily family;     // meaningful when accepted
    C6Rejection rejection;   // meaningful when rejected
};

inline C6Outcome c6_ads_family(const AdsProfile& profile) {
    const auto& ads = profile.ads;
    const auto in = detail::membership(ads.v, ads.elements);
    if (profile.delta.size() != ads.T.size())
        throw std::invalid_argument("c6: delta must assign exactly the elements of T");
    for (i64 t : ads.T) {
        const auto it = profile.delta.find(t);
        if (it == profile.delta.end())
            throw std::invalid_argument("c6: delta missing an element of T");
        const i64 d = it->second;
        if (!ads.group.is_valid_code(d) || in[static_cast<std::size_t>(d)] ||
            !in[static_cast<std::size_t>(ads.group.add(d, t))])
            throw std::invalid_argument("c6: delta_t must lie outside D with delta_t + t in D");
    }

    std::vector<char> in_T(static_cast<std::size_t>(ads.v), 0);
    for (i64 t : ads.T) in_T[static_cast<std::size_t>(t)] = 1;

    BlockList blocks;
    blocks.reserve(static_cast<std::size_t>(ads.v - 1));
    for (i64 x = 1; x < ads.v; ++x) {
        Block b = detail::intersect_translate(ads.group, ads.elements, in, x);
        if (in_T[static_cast<std::size_t>(x)]) {
            b.push_back(profile.delta.at(x));
            std::sort(b.begin(), b.end());
        }
        blocks.push_back(std::move(b));
    }

    // acceptance condition: delta_t and delta_t + t must co-occur in exactly
    // lambda of the blocks, for every t in the low set
    C6Outcome out;
    for (i64 t : ads.T) {
        const i64 dt = profile.delta.at(t);
        const i64 dtt = ads.group.add(dt, t);
        i64 count = 0;
        for (const auto& b : blocks) {
            if (std::binary_search(b.begin(), b.end(), dt) &&
                std::binary_search(b.begin(), b.end(), dtt))
                ++count;
        }
        if (count != ads.lambda) {
            out.accepted = false;
            out.rejection = {t, count, ads.lambda};
            return out;
        }
    }
    out.accepted = true;
    out.family = detail::finalize_family(ads.group, std::move(blocks),
                                         ads.lambda * (ads.lambda + 1), "c6");
    return out;
}

// Quadratic-residue convenience route: qr_ads(q) with delta = 0 on every
// square.  Always contains 0 in each Delta_t (t in D and 0 outside D), and
// the acceptance condition holds for this choice, yielding a
// (q, (q-1)/4, (q-1)(q-5)/16; q-1) family; parameters are recomputed and
// certified by the verifier rather than trusted.
inline DesignFamily c6_qr_family(i64 q) {
    if (!is_prime(q)) throw std::invalid_argument("c6_qr_family: q must be prime");
    const auto ads = qr_ads(q);  // enforces q = 1 (mod 4)
    auto outcome = c6_ads_family(ads_profile_constant(ads, 0));
    if (!outcome.accepted)
        throw std::logic_error("c6_qr_family: the zero-delta condition failed unexpectedly");
    return std::move(outcome.family);
}

// Depth-first search over Delta_t assignments, first success wins.
inline std::optional<std::pair<AdsProfile, DesignFamily>> c6_search_delta(
    const AlmostDifferenceSet& ads, i64 budget = kDefaultBudget) {
    std::vector<Block> cands;
    cands.reserve(ads.T.size());
    for (i64 t : ads.T) cands.push_back(delta_candidates(ads, t));
    AdsProfile profile;
    profile.ads = ads;
    i64 tried = 0;
    auto dfs = [&](auto&& self, std::size_t i) -> std::optional<C6Outcome> {
        if (i == ads.T.size()) {
            if (++tried > budget) throw std::invalid_argument("c6_search_delta: budget exceeded");
            auto outcome = c6_ads_family(profile);
            if (outcome.accepted) return outcome;
            return std::nullopt;
        }
        for (i64 d : cands[i]) {
            profile.delta[ads.T[i]] = d;
            if (auto r = self(self, i + 1)) return r;
        }
        profile.delta.erase(ads.T[i]);
        return std::nullopt;
    };
    auto found = dfs(dfs, 0);
    if (!found) return std::nullopt;
    return std::make_pair(profile, std::move(found->family));
}

// ---------------------------------------------------------------------------
// Block-design level machinery backing C3/C5: developments, expansions and
// reductions of BIBDs with their closed-form pair frequencies.

struct Bibd {
    i64 points = 0;
    BlockList blocks;
};

inline Bibd bibd_development(const Group& g, const BlockList& base_blocks) {
    Bibd d;
    d.points = g.order;
    d.blocks.reserve(base_blocks.size() * static_cast<std::size_t>(g.order));
    for (i64 x = 0; x < g.order; ++x) {
        for (const auto& base : base_blocks) {
            Block b;
            b.reserve(base.size());
            for (i64 e : base) b.push_back(g.add(e, x));
            std::sort(b.begin(), b.end());
            d.blocks.push_back(std::move(b));
        }
    }
    return d;
}

struct NrbDevelopment {
    i64 points = 0;
    BlockList blocks;
    std::vector<std::vector<std::size_t>> classes;  // one near-parallel class per translate
};

inline NrbDevelopment nrb_development(const DisjointDifferenceFamily& ddf) {
    NrbDevelopment d;
    d.points = ddf.v;
    for (i64 x = 0; x < ddf.v; ++x) {
        std::vector<std::size_t> cls;
        for (const auto& base : ddf.blocks) {
            Block b;
            b.reserve(base.size());
            for (i64 e : base) b.push_back(ddf.group.add(e, x));
            std::sort(b.begin(), b.end());
            cls.push_back(d.blocks.size());
            d.blocks.push_back(std::move(b));
        }
        d.classes.push_back(std::move(cls));
    }
    return d;
}

inline i64 bibd_lambda_plus(i64 v, i64 b, i64 r, i64 k, i64 lambda, i64 s) {
    return lambda * binomial(v - k, s) + 2 * (r - lambda) * binomial(v - k - 1, s - 1) +
           (b - 2 * r + lambda) * binomial(v - k - 2, s - 2);
}

inline i64 bibd_lambda_minus(i64 k, i64 lambda, i64 s) { return lambda * binomial(k - 2, s); }

inline Bibd bibd_expand(const Bibd& d, i64 s, i64 budget = kDefaultBudget) {
    Bibd out;
    out.points = d.points;
    for (const auto& base : d.blocks) {
        Block complement;
        std::vector<char> in(static_cast<std::size_t>(d.points), 0);
        for (i64 x : base) in[static_cast<std::size_t>(x)] = 1;
        for (i64 x = 0; x < d.points; ++x)
            if (!in[static_cast<std::size_t>(x)]) complement.push_back(x);
        detail::for_each_subset(complement.size(), s, [&](const std::vector<std::size_t>& idx) {
            Block b = base;
            for (std::size_t i : idx) b.push_back(complement[i]);
            std::sort(b.begin(), b.end());
            out.blocks.push_back(std::move(b));
            if (static_cast<i64>(out.blocks.size()) > budget)
                throw std::invalid_argument("bibd_expand: budget exceeded");
        });
    }
    return out;
}

inline Bibd bibd_reduce(const Bibd& d, i64 s, i64 budget = kDefaultBudget) {
    Bibd out;
    out.points = d.points;
    for (const auto& base : d.blocks) {
        detail::for_each_subset(base.size(), s, [&](const std::vector<std::size_t>& idx) {
            Block b;
            std::size_t next = 0;
            for (std::size_t i = 0; i < base.size(); ++i) {
                if (next < idx.size() && idx[next] == i) { ++next; continue; }
                b.push_back(base[i]);
            }
            out.blocks.push_back(std::move(b));
            if (static_cast<i64>(out.blocks.size()) > budget)
                throw std::invalid_argument("bibd_reduce: budget exceeded");
        });
    }
    return out;
}

}  // namespace diffam
