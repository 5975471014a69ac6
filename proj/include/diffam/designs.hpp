#pragma once

// Design-theoretic value types shared by the catalog, the constructions and
// the verifier.  A block is a sorted vector of element codes (set
// semantics inside a block); a family is a *multiset* of blocks - repeated
// blocks are meaningful and retained.

#include <cstdint>
#include <set>
#include <vector>

#include "diffam/group.hpp"

namespace diffam {

using Block = std::vector<i64>;
using BlockList = std::vector<Block>;

struct DifferenceSet {
    Group group;
    Block elements;  // sorted codes
    i64 v = 0, k = 0, lambda = 0;
};

struct AlmostDifferenceSet {
    Group group;
    Block elements;
    i64 v = 0, k = 0, lambda = 0, t = 0;
    Block T;  // the elements hit lambda times, sorted
};

struct DisjointDifferenceFamily {
    Group group;
    BlockList blocks;
    i64 v = 0, k = 0, lambda = 0;
};

struct DesignFamily {
    Group group;
    BlockList blocks;
    i64 v = 0;
    std::vector<i64> K;  // distinct block sizes, ascending
    i64 gamma = 0;
    i64 u = 0;  // block count
};

inline std::vector<i64> block_size_set(const BlockList& blocks) {
    std::set<i64> s;
    for (const auto& b : blocks) s.insert(static_cast<i64>(b.size()));
    return {s.begin(), s.end()};
}

}  // namespace diffam
