#ifndef WW_TREES_HPP
#define WW_TREES_HPP

#include "ww/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ww {

constexpr size_t kMaxTreeDepth = 62;

// Binary string of length len; the first character is the most significant bit.
struct BitString {
    uint32_t len = 0;
    uint64_t bits = 0;

    bool operator==(const BitString& o) const { return len == o.len && bits == o.bits; }
    bool operator<(const BitString& o) const
    {
        return len != o.len ? len < o.len : bits < o.bits;
    }

    int at(uint32_t i) const { return static_cast<int>((bits >> (len - 1 - i)) & 1u); }
    BitString child(int b) const { return {len + 1, (bits << 1) | static_cast<uint64_t>(b)}; }
    BitString prefix(uint32_t n) const { return n >= len ? *this : BitString{n, bits >> (len - n)}; }
    bool is_prefix_of(const BitString& o) const { return len <= o.len && o.prefix(len) == *this; }
    BitString append(const BitString& o) const
    {
        return {len + o.len, (len + o.len == 0) ? 0 : ((bits << o.len) | o.bits)};
    }

    static BitString from_text(const std::string& s);
    std::string text() const;
    Prefix to_prefix() const;
    static std::optional<BitString> from_prefix(const Prefix& p);
};

// Longest common prefix.
BitString meet(const BitString& a, const BitString& b);

// Closed interval of k-bit values in lexicographic order.
struct Interval {
    uint64_t lo = 0, hi = 0;
    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

// One level of a tree: sorted, disjoint, non-adjacent intervals.
struct Level {
    uint32_t k = 0;
    std::vector<Interval> runs;

    uint64_t size() const;
    bool contains(uint64_t v) const;
    bool empty() const { return runs.empty(); }
    void add(uint64_t lo, uint64_t hi);
    void add_node(uint64_t v) { add(v, v); }
    std::vector<BitString> nodes(size_t cap = SIZE_MAX) const;
    bool operator==(const Level& o) const { return k == o.k && runs == o.runs; }

    static Level full(uint32_t k);
    static Level cone(const BitString& stem, uint32_t k);
    static Level of(uint32_t k, const std::vector<BitString>& ns);
};

struct LevelTree {
    std::vector<Level> levels;

    size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
    bool contains(const BitString& s) const;
    LevelTree truncated(size_t depth) const;
    bool operator==(const LevelTree& o) const { return levels == o.levels; }

    static LevelTree root();
    // Appends a level; the caller guarantees prefix-closure.
    void push(Level l) { levels.push_back(std::move(l)); }
};

enum class TreeClass { Two, RationalTwo, Aou, Convex, Clopen, BasicClopen, Unrestricted };

const char* tree_class_name(TreeClass c);
std::optional<TreeClass> tree_class_from_name(const std::string& s);

Verdict validate_class(const LevelTree& t, TreeClass c, size_t depth);
std::vector<BitString> level_paths(const LevelTree& t, size_t depth, size_t cap = SIZE_MAX);

struct BranchRecord {
    std::vector<BitString> branching_nodes;
    BitString last_branching;
};

// Throws std::invalid_argument if the tree is not a 2-tree to the given depth.
BitString last_branching(const LevelTree& t, size_t depth);
BranchRecord branch_record(const LevelTree& t, size_t depth);

LevelTree generate_tree(TreeClass c, uint64_t seed, size_t depth);

// Tree builders used by generators, reductions and adversaries.
LevelTree full_tree(size_t depth);
LevelTree path_tree(const BitString& path_prefix, size_t depth);  // unique path, 0-padded
// 2-tree of depth |a| = |b| whose level-k nodes are a|k and b|k; where those coincide the
// second node is their sibling, a dead end.
LevelTree two_paths_tree(const BitString& a, const BitString& b);
// Completes a single node u to a 2-tree level by adding its sibling.
Level two_level(const BitString& a, const BitString& b);

std::string tree_to_text(const LevelTree& t);
// Throws std::invalid_argument on malformed text.
LevelTree tree_from_text(const std::string& s);

}  // namespace ww

#endif
