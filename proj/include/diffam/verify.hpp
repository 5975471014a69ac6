#pragma once

// Brute-force certification of the combinatorial properties used anywhere in
// the library: difference sets, almost difference sets, (disjoint)
// difference families, BIBDs, near-resolvable designs and the counting
// identity u k (k-1) = gamma (v-1).
//
// All counting runs over flat v-length integer accumulators indexed by the
// mixed-radix element encoding.  "Pass" is always decided on measured
// values; a mismatch against claimed parameters is a distinct failure kind.
// Large histogram accumulations shard across worker threads (capped by the
// DIFFAM_THREADS environment variable) and merge deterministically.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "diffam/designs.hpp"
#include "diffam/group.hpp"

namespace diffam {

struct VerificationReport {
    std::string kind;
    bool pass = false;
    std::map<i64, i64> histogram;        // multiplicity -> #nonidentity elements
    std::vector<i64> offenders;          // up to 10 witness element codes
    std::map<std::string, i64> computed; // measured parameters
    std::string failure;                 // "", "nonuniform", "param_mismatch", "structural"
    bool degenerate = false;
};

inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("DIFFAM_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

namespace detail {

inline void accumulate_differences(const Group& g, const BlockList& blocks,
                                   std::size_t first, std::size_t last,
                                   std::vector<i64>& counts) {
    const i64 v = g.order;
    if (g.moduli.size() == 1) {
        for (std::size_t bi = first; bi < last; ++bi) {
            const Block& b = blocks[bi];
            const std::size_t n = b.size();
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    i64 d = b[i] - b[j];
                    if (d < 0) d += v;
                    ++counts[d];
                }
            }
        }
        return;
    }
    // product groups: decompose each block element once, then subtract
    // coordinatewise and recombine (no division in the pair loop)
    const auto& mods = g.moduli;
    const std::size_t nc = mods.size();
    std::vector<i64> coords;
    for (std::size_t bi = first; bi < last; ++bi) {
        const Block& b = blocks[bi];
        const std::size_t n = b.size();
        coords.assign(n * nc, 0);
        for (std::size_t i = 0; i < n; ++i) {
            i64 code = b[i];
            for (std::size_t j = nc; j-- > 0;) {
                coords[i * nc + j] = code % mods[j];
                code /= mods[j];
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            const i64* ca = &coords[i * nc];
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const i64* cb = &coords[j * nc];
                i64 code = 0;
                for (std::size_t c = 0; c < nc; ++c) {
                    i64 d = ca[c] - cb[c];
                    if (d < 0) d += mods[c];
                    code = code * mods[c] + d;
                }
                ++counts[code];
            }
        }
    }
}

}  // namespace detail

// counts[d] = multiplicity of the difference d over ordered distinct pairs
// within each block, summed over the block multiset.
inline std::vector<i64> difference_counts(const Group& g, const BlockList& blocks) {
    for (const auto& b : blocks)
        for (i64 x : b)
            if (!g.is_valid_code(x))
                throw std::invalid_argument("difference_counts: block element outside group");

    std::vector<i64> counts(static_cast<std::size_t>(g.order), 0);
    i64 work = 0;
    for (const auto& b : blocks) work += static_cast<i64>(b.size()) * static_cast<i64>(b.size());

    const unsigned workers = worker_count();
    if (workers <= 1 || work < (i64{1} << 23) || blocks.size() < 2 * workers) {
        detail::accumulate_differences(g, blocks, 0, blocks.size(), counts);
        return counts;
    }

    std::vector<std::vector<i64>> partial(workers,
                                          std::vector<i64>(static_cast<std::size_t>(g.order), 0));
    std::vector<std::thread> pool;
    const std::size_t chunk = (blocks.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t first = std::min(blocks.size(), w * chunk);
        const std::size_t last = std::min(blocks.size(), first + chunk);
        pool.emplace_back([&, w, first, last] {
            detail::accumulate_differences(g, blocks, first, last, partial[w]);
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& part : partial)
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += part[i];
    return counts;
}

namespace detail {

inline void fill_histogram(const std::vector<i64>& counts, VerificationReport& rep) {
    for (std::size_t d = 1; d < counts.size(); ++d) ++rep.histogram[counts[d]];
}

inline void collect_offenders(const std::vector<i64>& counts, i64 expected,
                              VerificationReport& rep) {
    for (std::size_t d = 1; d < counts.size() && rep.offenders.size() < 10; ++d)
        if (counts[d] != expected) rep.offenders.push_back(static_cast<i64>(d));
}

}  // namespace detail

// Difference-family check: pass iff every nonidentity element is covered the
// same number gamma of times by internal block differences.
inline VerificationReport verify_difference_family(const Group& g, const BlockList& blocks,
                                                   std::optional<i64> expected_gamma = {}) {
    VerificationReport rep;
    rep.kind = "df";
    const auto counts = difference_counts(g, blocks);
    detail::fill_histogram(counts, rep);

    rep.computed["v"] = g.order;
    rep.computed["u"] = static_cast<i64>(blocks.size());
    if (blocks.empty()) {
        rep.degenerate = true;  // vacuous family
        rep.pass = !expected_gamma || *expected_gamma == 0;
        rep.computed["gamma"] = 0;
        if (!rep.pass) rep.failure = "param_mismatch";
        return rep;
    }
    if (rep.histogram.size() == 1) {
        const i64 gamma = rep.histogram.begin()->first;
        rep.computed["gamma"] = gamma;
        if (expected_gamma && *expected_gamma != gamma) {
            rep.failure = "param_mismatch";
            rep.pass = false;
        } else {
            rep.pass = true;
        }
        if (gamma == 0) rep.degenerate = true;
    } else {
        rep.failure = "nonuniform";
        rep.pass = false;
        // most common multiplicity as the reference for witnesses
        i64 mode = 0, best = -1;
        for (const auto& [mult, cnt] : rep.histogram)
            if (cnt > best) { best = cnt; mode = mult; }
        detail::collect_offenders(counts, mode, rep);
    }
    return rep;
}

inline VerificationReport verify_difference_set(const Group& g, const Block& D) {
    VerificationReport rep = verify_difference_family(g, BlockList{D});
    rep.kind = "ds";
    rep.computed.erase("u");
    rep.computed["k"] = static_cast<i64>(D.size());
    if (rep.pass) {
        rep.computed["lambda"] = rep.computed["gamma"];
        rep.computed.erase("gamma");
    }
    return rep;
}

// Almost-difference-set check: pass iff the difference function takes
// exactly the two values {lambda, lambda+1}.  A constant difference
// function is a difference set: reported as a degenerate failure.
inline VerificationReport verify_ads(const Group& g, const Block& D) {
    VerificationReport rep;
    rep.kind = "ads";
    const auto counts = difference_counts(g, BlockList{D});
    detail::fill_histogram(counts, rep);
    rep.computed["v"] = g.order;
    rep.computed["k"] = static_cast<i64>(D.size());

    if (rep.histogram.size() == 2) {
        const i64 lambda = rep.histogram.begin()->first;
        const i64 upper = std::next(rep.histogram.begin())->first;
        if (upper == lambda + 1) {
            rep.pass = true;
            rep.computed["lambda"] = lambda;
            rep.computed["t"] = rep.histogram.begin()->second;
        } else {
            rep.pass = false;
            rep.failure = "nonuniform";
        }
    } else if (rep.histogram.size() == 1) {
        rep.pass = false;
        rep.degenerate = true;  // a plain difference set, not a strict ADS
        rep.failure = "nonuniform";
        rep.computed["lambda"] = rep.histogram.begin()->first;
    } else {
        rep.pass = false;
        rep.failure = "nonuniform";
    }
    return rep;
}

// The set T of elements hit exactly lambda times (lambda = smaller value of
// a two-valued difference function).
inline Block ads_low_set(const Group& g, const Block& D) {
    const auto counts = difference_counts(g, BlockList{D});
    i64 lambda = -1;
    for (std::size_t d = 1; d < counts.size(); ++d)
        if (lambda < 0 || counts[d] < lambda) lambda = counts[d];
    Block T;
    for (std::size_t d = 1; d < counts.size(); ++d)
        if (counts[d] == lambda) T.push_back(static_cast<i64>(d));
    return T;
}

inline VerificationReport verify_ddf(const Group& g, const BlockList& blocks) {
    VerificationReport rep = verify_difference_family(g, blocks);
    rep.kind = "ddf";
    // disjointness on top of the family property
    std::vector<char> seen(static_cast<std::size_t>(g.order), 0);
    for (const auto& b : blocks) {
        for (i64 x : b) {
            if (seen[static_cast<std::size_t>(x)]) {
                rep.pass = false;
                rep.failure = "structural";
                if (rep.offenders.size() < 10) rep.offenders.push_back(x);
            }
            seen[static_cast<std::size_t>(x)] = 1;
        }
    }
    return rep;
}

// BIBD check over points {0, ..., v-1}: uniform block size, uniform pair
// coverage lambda, uniform replication r, and the standard identities
// b = v(v-1)lambda / (k(k-1)), r = lambda(v-1) / (k-1).
inline VerificationReport verify_bibd(i64 points, const BlockList& blocks) {
    VerificationReport rep;
    rep.kind = "bibd";
    rep.computed["v"] = points;
    rep.computed["b"] = static_cast<i64>(blocks.size());
    if (points < 2 || blocks.empty()) {
        rep.failure = "structural";
        return rep;
    }
    const i64 k = static_cast<i64>(blocks.front().size());
    std::vector<i64> replication(static_cast<std::size_t>(points), 0);
    std::vector<i64> pair_count(static_cast<std::size_t>(points * points), 0);
    for (const auto& b : blocks) {
        if (static_cast<i64>(b.size()) != k) {
            rep.failure = "structural";  // mixed block sizes
            return rep;
        }
        for (i64 x : b) {
            if (x < 0 || x >= points) throw std::invalid_argument("verify_bibd: point out of range");
            ++replication[static_cast<std::size_t>(x)];
        }
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                ++pair_count[static_cast<std::size_t>(b[i] * points + b[j])];
    }
    rep.computed["k"] = k;

    i64 lambda = -1;
    bool uniform = true;
    for (i64 x = 0; x < points && uniform; ++x) {
        for (i64 y = x + 1; y < points; ++y) {
            const i64 c = pair_count[static_cast<std::size_t>(x * points + y)];
            if (lambda < 0) lambda = c;
            if (c != lambda) {
                uniform = false;
                rep.offenders = {x, y};
                break;
            }
        }
    }
    std::map<i64, i64> pair_hist;
    for (i64 x = 0; x < points; ++x)
        for (i64 y = x + 1; y < points; ++y)
            ++pair_hist[pair_count[static_cast<std::size_t>(x * points + y)]];
    rep.histogram = pair_hist;

    const i64 r = replication[0];
    const bool uniform_r = std::all_of(replication.begin(), replication.end(),
                                       [&](i64 c) { return c == r; });
    rep.computed["r"] = r;
    if (!uniform || !uniform_r) {
        rep.failure = "nonuniform";
        return rep;
    }
    rep.computed["lambda"] = lambda;
    const i64 b = static_cast<i64>(blocks.size());
    const bool identities = b * k * (k - 1) == points * (points - 1) * lambda &&
                            r * (k - 1) == lambda * (points - 1);
    if (!identities) {
        rep.failure = "param_mismatch";
        return rep;
    }
    rep.pass = true;
    return rep;
}

// Near-resolvable design check: a (v, k, k-1)-BIBD whose blocks partition
// into v near-parallel classes, each covering all points but one exactly
// once.
inline VerificationReport verify_nrb(i64 points, const BlockList& blocks,
                                     const std::vector<std::vector<std::size_t>>& classes) {
    VerificationReport rep = verify_bibd(points, blocks);
    rep.kind = "nrb";
    if (!rep.pass) return rep;
    const i64 k = rep.computed["k"];
    if (rep.computed["lambda"] != k - 1) {
        rep.pass = false;
        rep.failure = "param_mismatch";
        return rep;
    }
    if (static_cast<i64>(classes.size()) != points) {
        rep.pass = false;
        rep.failure = "structural";
        return rep;
    }
    std::vector<char> used(blocks.size(), 0);
    for (const auto& cls : classes) {
        std::vector<i64> cover(static_cast<std::size_t>(points), 0);
        for (std::size_t bi : cls) {
            if (bi >= blocks.size() || used[bi]) {
                rep.pass = false;
                rep.failure = "structural";
                return rep;
            }
            used[bi] = 1;
            for (i64 x : blocks[bi]) ++cover[static_cast<std::size_t>(x)];
        }
        i64 missed = 0;
        for (i64 x = 0; x < points; ++x) {
            if (cover[static_cast<std::size_t>(x)] == 0) {
                ++missed;
            } else if (cover[static_cast<std::size_t>(x)] != 1) {
                rep.pass = false;
                rep.failure = "structural";
                if (rep.offenders.size() < 10) rep.offenders.push_back(x);
                return rep;
            }
        }
        if (missed != 1) {
            rep.pass = false;
            rep.failure = "structural";
            return rep;
        }
    }
    if (!std::all_of(used.begin(), used.end(), [](char c) { return c == 1; })) {
        rep.pass = false;
        rep.failure = "structural";
    }
    return rep;
}

// Counting identity, uniform block size: u k (k-1) = gamma (v-1).
inline bool check_counting_identity(i64 v, i64 k, i64 gamma, i64 u) {
    return static_cast<i128>(u) * k * (k - 1) == static_cast<i128>(gamma) * (v - 1);
}

// Mixed block sizes: sum |B| (|B|-1) = gamma (v-1).
inline bool check_counting_identity(i64 v, i64 gamma, const std::vector<i64>& block_sizes) {
    i128 lhs = 0;
    for (i64 s : block_sizes) lhs += static_cast<i128>(s) * (s - 1);
    return lhs == static_cast<i128>(gamma) * (v - 1);
}

}  // namespace diffam
