#pragma once

// Finite abelian groups (cyclic, direct products, additive groups of finite
// fields) with a canonical element encoding.
//
// An element is a coordinate vector with one entry per invariant factor,
// entry j reduced into [0, moduli[j]).  Every element also has a single
// integer code in [0, v): the mixed-radix number whose most significant
// digit is coordinate 0, so ascending codes enumerate elements in
// lexicographic coordinate order.  Brute-force loops and block storage work
// on codes; coordinate vectors are the user-facing form.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffam/numeric.hpp"

namespace diffam {

enum class GroupKind { cyclic, product, field_additive };

using Element = std::vector<i64>;

struct Group {
    GroupKind kind = GroupKind::cyclic;
    std::vector<i64> moduli;  // invariant-factor orders, each >= 2
    i64 order = 1;            // product of moduli

    i64 encode(const Element& coords) const {
        check_coords(coords);
        i64 code = 0;
        for (std::size_t j = 0; j < moduli.size(); ++j) code = code * moduli[j] + coords[j];
        return code;
    }

    Element decode(i64 code) const {
        check_code(code);
        Element coords(moduli.size());
        for (std::size_t j = moduli.size(); j-- > 0;) {
            coords[j] = code % moduli[j];
            code /= moduli[j];
        }
        return coords;
    }

    // Code-level arithmetic.  Single-modulus groups take the fast path; the
    // generic path runs one div/mod per coordinate.
    i64 add(i64 a, i64 b) const {
        if (moduli.size() == 1) {
            i64 s = a + b;
            if (s >= order) s -= order;
            return s;
        }
        i64 out = 0, pa = a, pb = b;
        // digits are consumed least significant first, then reassembled
        i64 place = 1;
        for (std::size_t j = moduli.size(); j-- > 0;) {
            const i64 m = moduli[j];
            i64 s = pa % m + pb % m;
            if (s >= m) s -= m;
            out += s * place;
            place *= m;
            pa /= m;
            pb /= m;
        }
        return out;
    }

    i64 neg(i64 a) const {
        if (moduli.size() == 1) return a == 0 ? 0 : order - a;
        i64 out = 0, pa = a, place = 1;
        for (std::size_t j = moduli.size(); j-- > 0;) {
            const i64 m = moduli[j];
            const i64 c = pa % m;
            out += (c == 0 ? 0 : m - c) * place;
            place *= m;
            pa /= m;
        }
        return out;
    }

    i64 sub(i64 a, i64 b) const {
        if (moduli.size() == 1) {
            i64 d = a - b;
            if (d < 0) d += order;
            return d;
        }
        return add(a, neg(b));
    }

    bool is_valid_code(i64 code) const { return code >= 0 && code < order; }

private:
    void check_coords(const Element& coords) const {
        if (coords.size() != moduli.size())
            throw std::invalid_argument("group: coordinate arity mismatch");
        for (std::size_t j = 0; j < moduli.size(); ++j)
            if (coords[j] < 0 || coords[j] >= moduli[j])
                throw std::invalid_argument("group: coordinate out of range");
    }
    void check_code(i64 code) const {
        if (!is_valid_code(code)) throw std::invalid_argument("group: element code out of range");
    }
};

inline Group make_group(GroupKind kind, std::vector<i64> moduli) {
    if (moduli.empty()) throw std::invalid_argument("make_group: no moduli");
    i64 order = 1;
    for (i64 m : moduli) {
        if (m < 2) throw std::invalid_argument("make_group: modulus must be >= 2");
        order *= m;
    }
    if (kind == GroupKind::cyclic && moduli.size() != 1)
        throw std::invalid_argument("make_group: cyclic groups take a single modulus");
    return Group{kind, std::move(moduli), order};
}

inline Group cyclic_group(i64 n) { return make_group(GroupKind::cyclic, {n}); }

inline Element add(const Group& g, const Element& a, const Element& b) {
    return g.decode(g.add(g.encode(a), g.encode(b)));
}

inline Element neg(const Group& g, const Element& a) { return g.decode(g.neg(g.encode(a))); }

// Least n >= 1 with n*a = 0: lcm over coordinates of m_j / gcd(m_j, a_j).
inline i64 order_of(const Group& g, const Element& a) {
    g.encode(a);  // validates the coordinates
    i64 ord = 1;
    for (std::size_t j = 0; j < g.moduli.size(); ++j)
        ord = std::lcm(ord, g.moduli[j] / std::gcd(g.moduli[j], a[j]));
    return ord;
}

inline i64 order_of_code(const Group& g, i64 code) { return order_of(g, g.decode(code)); }

// Inverse-closed halving of a group of odd order: h1 and h2 = -h1 partition
// the nonidentity elements.  The canonical choice keeps the smaller code of
// each {x, -x} pair in h1; for Z_n this is {1, ..., (n-1)/2}.
struct Halving {
    std::vector<i64> h1;  // codes, ascending
    std::vector<i64> h2;  // codes, ascending
};

inline Halving canonical_halving(const Group& g) {
    if (g.order % 2 == 0)
        throw std::domain_error("canonical_halving: group of even order has involutions");
    if (g.order == 1) throw std::domain_error("canonical_halving: trivial group");
    Halving h;
    for (i64 x = 1; x < g.order; ++x) {
        const i64 nx = g.neg(x);
        if (x < nx) h.h1.push_back(x); else h.h2.push_back(x);
    }
    return h;
}

// Subgroup selection: one index d_j >= 1 per modulus with d_j | moduli[j].
// The subgroup is the direct product of the <d_j>, of index prod d_j.
// For a cyclic group this is the single index ell, H = <ell>.
struct SubgroupSpec {
    std::vector<i64> indices;
};

inline SubgroupSpec cyclic_subgroup_index(i64 ell) { return SubgroupSpec{{ell}}; }

struct CosetSplit {
    std::vector<i64> subgroup;  // codes, ascending
    std::vector<i64> reps;      // codes, reps[0] = identity, lexicographic order
    i64 index = 1;              // ell = |G : H|
};

inline CosetSplit coset_reps(const Group& g, const SubgroupSpec& spec) {
    if (spec.indices.size() != g.moduli.size())
        throw std::invalid_argument("coset_reps: spec arity mismatch");
    i64 index = 1;
    for (std::size_t j = 0; j < g.moduli.size(); ++j) {
        const i64 d = spec.indices[j];
        if (d < 1 || g.moduli[j] % d != 0)
            throw std::invalid_argument("coset_reps: index does not divide the modulus");
        index *= d;
    }
    CosetSplit out;
    out.index = index;
    // enumerate H: coordinates run over multiples of d_j
    std::vector<i64> coord(g.moduli.size(), 0);
    const auto emit = [&](auto&& self, std::size_t j, bool sub) -> void {
        if (j == g.moduli.size()) {
            Element e(coord);
            (sub ? out.subgroup : out.reps).push_back(g.encode(e));
            return;
        }
        const i64 d = spec.indices[j];
        const i64 limit = sub ? g.moduli[j] / d : d;
        const i64 step = sub ? d : 1;
        for (i64 t = 0; t < limit; ++t) {
            coord[j] = t * step;
            self(self, j + 1, sub);
        }
    };
    emit(emit, 0, true);
    emit(emit, 0, false);
    std::sort(out.subgroup.begin(), out.subgroup.end());
    std::sort(out.reps.begin(), out.reps.end());
    return out;
}

// Cyclic convenience: H = <ell> (multiples of ell), reps = {0, ..., ell-1}.
inline CosetSplit coset_reps(const Group& g, i64 ell) {
    if (g.moduli.size() != 1)
        throw std::invalid_argument("coset_reps: plain index requires a single-modulus group");
    if (ell < 1 || g.order % ell != 0)
        throw std::invalid_argument("coset_reps: index does not divide the group order");
    return coset_reps(g, cyclic_subgroup_index(ell));
}

// The subgroup selected by `spec`, re-encoded as a standalone group:
// coordinate j of H divides by d_j, trivial factors (quotient order 1) are
// dropped.  to_subgroup_code maps an element of the coset rep + H onto its
// code in the standalone group.
struct SubgroupView {
    Group sub;
    std::vector<i64> strides;  // d_j per original coordinate
    const Group* parent = nullptr;

    i64 to_subgroup_code(i64 g_code, i64 rep_code) const {
        const Element x = parent->decode(parent->sub(g_code, rep_code));
        Element coords;
        coords.reserve(sub.moduli.size());
        for (std::size_t j = 0; j < strides.size(); ++j) {
            const i64 m = parent->moduli[j] / strides[j];
            if (x[j] % strides[j] != 0)
                throw std::invalid_argument("subgroup view: element not in the given coset");
            if (m > 1) coords.push_back(x[j] / strides[j]);
        }
        return sub.encode(coords);
    }
};

inline SubgroupView subgroup_view(const Group& g, const SubgroupSpec& spec) {
    if (spec.indices.size() != g.moduli.size())
        throw std::invalid_argument("subgroup_view: spec arity mismatch");
    std::vector<i64> qmod;
    for (std::size_t j = 0; j < g.moduli.size(); ++j) {
        const i64 d = spec.indices[j];
        if (d < 1 || g.moduli[j] % d != 0)
            throw std::invalid_argument("subgroup_view: index does not divide the modulus");
        if (g.moduli[j] / d > 1) qmod.push_back(g.moduli[j] / d);
    }
    if (qmod.empty()) throw std::domain_error("subgroup_view: trivial subgroup");
    SubgroupView view;
    view.strides = spec.indices;
    view.parent = &g;
    view.sub = make_group(qmod.size() == 1 ? GroupKind::cyclic : GroupKind::product, qmod);
    return view;
}

}  // namespace diffam
