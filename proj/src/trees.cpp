#include "ww/trees.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ww {

namespace {

constexpr size_t kTextNodeCap = 4096;

uint64_t level_mask(uint32_t k) { return k == 0 ? 0 : (k >= 64 ? ~0ull : ((1ull << k) - 1)); }

}  // namespace

BitString BitString::from_text(const std::string& s)
{
    BitString b;
    if (s == "-") return b;
    if (s.size() > kMaxTreeDepth) throw std::invalid_argument("bit-string too long");
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("bad bit-string: " + s);
        b = b.child(c - '0');
    }
    return b;
}

std::string BitString::text() const
{
    if (len == 0) return "-";
    std::string s(len, '0');
    for (uint32_t i = 0; i < len; ++i) s[i] = static_cast<char>('0' + at(i));
    return s;
}

Prefix BitString::to_prefix() const
{
    Prefix p;
    for (uint32_t i = 0; i < len; ++i) p.emplace_back(static_cast<uint64_t>(at(i)));
    return p;
}

std::optional<BitString> BitString::from_prefix(const Prefix& p)
{
    BitString b;
    for (const Entry& e : p) {
        if (!e || *e > 1 || b.len >= kMaxTreeDepth) return std::nullopt;
        b = b.child(static_cast<int>(*e));
    }
    return b;
}

BitString meet(const BitString& a, const BitString& b)
{
    uint32_t n = std::min(a.len, b.len);
    uint32_t i = 0;
    while (i < n && a.at(i) == b.at(i)) ++i;
    return a.prefix(i);
}

uint64_t Level::size() const
{
    uint64_t n = 0;
    for (const auto& r : runs) n += r.hi - r.lo + 1;
    return n;
}

bool Level::contains(uint64_t v) const
{
    auto it = std::upper_bound(runs.begin(), runs.end(), v,
                               [](uint64_t x, const Interval& r) { return x < r.lo; });
    if (it == runs.begin()) return false;
    --it;
    return v <= it->hi;
}

void Level::add(uint64_t lo, uint64_t hi)
{
    runs.push_back({lo, hi});
    std::sort(runs.begin(), runs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& r : runs) {
        if (!merged.empty() && r.lo <= merged.back().hi + 1) {
            merged.back().hi = std::max(merged.back().hi, r.hi);
        } else {
            merged.push_back(r);
        }
    }
    runs = std::move(merged);
}

std::vector<BitString> Level::nodes(size_t cap) const
{
    std::vector<BitString> out;
    for (const auto& r : runs) {
        for (uint64_t v = r.lo;; ++v) {
            if (out.size() >= cap) return out;
            out.push_back({k, v});
            if (v == r.hi) break;
        }
    }
    return out;
}

Level Level::full(uint32_t k)
{
    Level l;
    l.k = k;
    l.runs.push_back({0, level_mask(k)});
    return l;
}

Level Level::cone(const BitString& stem, uint32_t k)
{
    Level l;
    l.k = k;
    if (stem.len >= k) {
        l.runs.push_back({stem.prefix(k).bits, stem.prefix(k).bits});
    } else {
        uint32_t free = k - stem.len;
        uint64_t lo = stem.bits << free;
        l.runs.push_back({lo, lo | level_mask(free)});
    }
    return l;
}

Level Level::of(uint32_t k, const std::vector<BitString>& ns)
{
    Level l;
    l.k = k;
    for (const auto& n : ns) {
        if (n.len != k) throw std::invalid_argument("node length does not match level");
        l.add_node(n.bits);
    }
    return l;
}

bool LevelTree::contains(const BitString& s) const
{
    if (s.len >= levels.size()) return false;
    return levels[s.len].contains(s.bits);
}

LevelTree LevelTree::truncated(size_t depth) const
{
    LevelTree t;
    for (size_t k = 0; k <= depth && k < levels.size(); ++k) t.levels.push_back(levels[k]);
    return t;
}

LevelTree LevelTree::root()
{
    LevelTree t;
    t.levels.push_back(Level::full(0));
    return t;
}

const char* tree_class_name(TreeClass c)
{
    switch (c) {
    case TreeClass::Two: return "two";
    case TreeClass::RationalTwo: return "rational-two";
    case TreeClass::Aou: return "aou";
    case TreeClass::Convex: return "convex";
    case TreeClass::Clopen: return "clopen";
    case TreeClass::BasicClopen: return "basic-clopen";
    default: return "unrestricted";
    }
}

std::optional<TreeClass> tree_class_from_name(const std::string& s)
{
    for (TreeClass c : {TreeClass::Two, TreeClass::RationalTwo, TreeClass::Aou, TreeClass::Convex,
                        TreeClass::Clopen, TreeClass::BasicClopen, TreeClass::Unrestricted})
        if (s == tree_class_name(c)) return c;
    return std::nullopt;
}

namespace {

bool parents_present(const Level& child, const Level& parent)
{
    for (const auto& r : child.runs) {
        uint64_t plo = r.lo >> 1, phi = r.hi >> 1;
        // [plo, phi] must lie inside a single run of the parent level, since parent runs are
        // non-adjacent and [plo, phi] is contiguous.
        auto it = std::upper_bound(parent.runs.begin(), parent.runs.end(), plo,
                                   [](uint64_t x, const Interval& q) { return x < q.lo; });
        if (it == parent.runs.begin()) return false;
        --it;
        if (phi > it->hi) return false;
    }
    return true;
}

bool is_cone(const Level& l)
{
    if (l.runs.size() != 1) return false;
    uint64_t n = l.runs[0].hi - l.runs[0].lo + 1;
    if ((n & (n - 1)) != 0) return false;
    return (l.runs[0].lo & (n - 1)) == 0;
}

}  // namespace

Verdict validate_class(const LevelTree& t, TreeClass c, size_t depth)
{
    if (t.levels.size() <= depth) return Verdict::fail("tree not delivered to depth", t.levels.size());
    if (depth > kMaxTreeDepth) return Verdict::indeterminate("depth beyond supported tree depth");
    const Level& root = t.levels[0];
    if (root.k != 0 || root.size() != 1) return Verdict::fail("level 0 must be {root}", 0);
    for (size_t k = 1; k <= depth; ++k) {
        const Level& l = t.levels[k];
        if (l.k != k) return Verdict::fail("level index mismatch", k);
        for (const auto& r : l.runs)
            if (r.lo > r.hi || r.hi > level_mask(static_cast<uint32_t>(k)))
                return Verdict::fail("node out of range", k);
        if (l.empty()) return Verdict::fail("empty level", k);
        if (!parents_present(l, t.levels[k - 1])) return Verdict::fail("not prefix-closed", k);
        switch (c) {
        case TreeClass::Two:
        case TreeClass::RationalTwo:
            if (l.size() != 2) return Verdict::fail("2-tree level must have exactly two nodes", k);
            break;
        case TreeClass::Aou:
            if (l.size() != 1 && l.size() != (1ull << k))
                return Verdict::fail("aou level must be full or a singleton", k);
            break;
        case TreeClass::Convex:
        case TreeClass::Clopen:
            if (l.runs.size() != 1) return Verdict::fail("convex level must be contiguous", k);
            break;
        case TreeClass::BasicClopen:
            if (!is_cone(l)) return Verdict::fail("basic clopen level must be a cone", k);
            break;
        default: break;
        }
    }
    return Verdict::pass();
}

std::vector<BitString> level_paths(const LevelTree& t, size_t depth, size_t cap)
{
    if (depth >= t.levels.size()) return {};
    return t.levels[depth].nodes(cap);
}

BranchRecord branch_record(const LevelTree& t, size_t depth)
{
    Verdict v = validate_class(t, TreeClass::Two, depth);
    if (!v.ok()) throw std::invalid_argument("last_branching needs a 2-tree: " + verdict_to_text(v));
    BranchRecord rec;
    for (size_t k = 1; k <= depth; ++k) {
        auto ns = t.levels[k].nodes();
        if (ns[0].prefix(static_cast<uint32_t>(k - 1)) == ns[1].prefix(static_cast<uint32_t>(k - 1)))
            rec.branching_nodes.push_back(ns[0].prefix(static_cast<uint32_t>(k - 1)));
    }
    if (depth == 0) return rec;
    auto ns = t.levels[depth].nodes();
    rec.last_branching = meet(ns[0], ns[1]);
    return rec;
}

BitString last_branching(const LevelTree& t, size_t depth)
{
    return branch_record(t, depth).last_branching;
}

LevelTree full_tree(size_t depth)
{
    LevelTree t;
    for (size_t k = 0; k <= depth; ++k) t.push(Level::full(static_cast<uint32_t>(k)));
    return t;
}

LevelTree path_tree(const BitString& p, size_t depth)
{
    LevelTree t;
    BitString cur;
    for (size_t k = 0; k <= depth; ++k) {
        if (k > 0) cur = cur.child(k <= p.len ? p.at(static_cast<uint32_t>(k - 1)) : 0);
        t.push(Level::of(static_cast<uint32_t>(k), {cur}));
    }
    return t;
}

Level two_level(const BitString& a, const BitString& b)
{
    if (a == b) {
        BitString sib{a.len, a.bits ^ 1u};
        return Level::of(a.len, {a, sib});
    }
    return Level::of(a.len, {a, b});
}

LevelTree two_paths_tree(const BitString& a, const BitString& b)
{
    if (a.len != b.len) throw std::invalid_argument("paths must have equal length");
    LevelTree t = LevelTree::root();
    for (uint32_t k = 1; k <= a.len; ++k) t.push(two_level(a.prefix(k), b.prefix(k)));
    return t;
}

namespace {

// Next 2-tree level from nodes (l, r) at level k; action 0 = both continue, 1 = branch at l,
// 2 = branch at r.
std::pair<BitString, BitString> two_step(const BitString& l, const BitString& r, int action,
                                         int bl, int br)
{
    if (action == 1) return {l.child(0), l.child(1)};
    if (action == 2) return {r.child(0), r.child(1)};
    return {l.child(bl), r.child(br)};
}

}  // namespace

LevelTree generate_tree(TreeClass c, uint64_t seed, size_t depth)
{
    depth = std::min(depth, kMaxTreeDepth);
    std::mt19937_64 rng(mix64(seed * 7 + static_cast<uint64_t>(c)));
    auto roll = [&](uint64_t n) { return rng() % n; };
    LevelTree t = LevelTree::root();
    if (depth == 0) return t;
    // stage after which the promise part (no more branching / no more updates) holds
    size_t settle = depth / 2 == 0 ? 0 : roll(depth / 2 + 1);

    switch (c) {
    case TreeClass::Two:
    case TreeClass::RationalTwo: {
        BitString l{1, 0}, r{1, 1};
        t.push(Level::of(1, {l, r}));
        for (size_t k = 1; k < depth; ++k) {
            int action = 0;
            bool may_branch = c == TreeClass::Two || k < settle;
            if (may_branch && roll(3) == 0) action = 1 + static_cast<int>(roll(2));
            auto [nl, nr] = two_step(l, r, action, static_cast<int>(roll(2)), static_cast<int>(roll(2)));
            if (nr < nl) std::swap(nl, nr);
            l = nl;
            r = nr;
            t.push(Level::of(static_cast<uint32_t>(k + 1), {l, r}));
        }
        break;
    }
    case TreeClass::Aou: {
        bool never = roll(4) == 0;
        BitString cur;
        for (size_t k = 1; k <= depth; ++k) {
            if (never || k < settle + 1) {
                t.push(Level::full(static_cast<uint32_t>(k)));
                cur = cur.child(static_cast<int>(roll(2)));
            } else {
                if (cur.len < k) cur = cur.child(static_cast<int>(roll(2)));
                t.push(Level::of(static_cast<uint32_t>(k), {cur}));
            }
        }
        break;
    }
    case TreeClass::Convex:
    case TreeClass::Clopen: {
        uint64_t lo = 0, hi = 0;
        for (size_t k = 1; k <= depth; ++k) {
            uint64_t clo = lo << 1, chi = (hi << 1) | 1u;
            bool shrink = c == TreeClass::Convex ? roll(3) == 0 : k <= settle && roll(2) == 0;
            if (shrink) {
                uint64_t span = chi - clo + 1;
                uint64_t a = roll(std::min<uint64_t>(span, 1ull << 20));
                uint64_t b = roll(std::min<uint64_t>(span - a, 1ull << 20));
                lo = clo + a;
                hi = std::min(chi, lo + b);
            } else {
                lo = clo;
                hi = chi;
            }
            Level l;
            l.k = static_cast<uint32_t>(k);
            l.add(lo, hi);
            t.push(l);
        }
        break;
    }
    case TreeClass::BasicClopen: {
        BitString stem;
        for (size_t k = 1; k <= depth; ++k) {
            if (k <= settle) stem = stem.child(static_cast<int>(roll(2)));
            t.push(Level::cone(stem, static_cast<uint32_t>(k)));
        }
        break;
    }
    default: {
        std::vector<BitString> cur{BitString{}};
        for (size_t k = 1; k <= depth; ++k) {
            std::vector<BitString> next;
            for (const auto& n : cur) {
                uint64_t r = roll(3);
                if (cur.size() > 16 && r == 2) r = roll(2);
                if (r != 1) next.push_back(n.child(0));
                if (r != 0) next.push_back(n.child(1));
            }
            if (next.empty()) next.push_back(cur.front().child(0));
            t.push(Level::of(static_cast<uint32_t>(k), next));
            cur = std::move(next);
        }
        break;
    }
    }
    return t;
}

std::string tree_to_text(const LevelTree& t)
{
    std::ostringstream os;
    for (size_t k = 0; k < t.levels.size(); ++k) {
        const Level& l = t.levels[k];
        os << k << ':';
        bool ranges = l.size() > kTextNodeCap;
        bool first = true;
        auto emit = [&](const std::string& s) {
            os << (first ? " " : ",") << s;
            first = false;
        };
        for (const auto& r : l.runs) {
            BitString lo{static_cast<uint32_t>(k), r.lo}, hi{static_cast<uint32_t>(k), r.hi};
            if (ranges && r.lo != r.hi) {
                emit(lo.text() + ".." + hi.text());
            } else {
                for (uint64_t v = r.lo;; ++v) {
                    emit(BitString{static_cast<uint32_t>(k), v}.text());
                    if (v == r.hi) break;
                }
            }
        }
        os << '\n';
    }
    return os.str();
}

LevelTree tree_from_text(const std::string& s)
{
    LevelTree t;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("tree line without ':'");
        size_t k = std::stoull(line.substr(0, colon));
        if (k != t.levels.size()) throw std::invalid_argument("tree levels out of order");
        if (k > kMaxTreeDepth) throw std::invalid_argument("tree too deep");
        Level l;
        l.k = static_cast<uint32_t>(k);
        std::stringstream ss(line.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            size_t a = tok.find_first_not_of(' ');
            if (a == std::string::npos) continue;
            tok = tok.substr(a, tok.find_last_not_of(' ') - a + 1);
            auto dots = tok.find("..");
            if (dots != std::string::npos) {
                BitString lo = BitString::from_text(tok.substr(0, dots));
                BitString hi = BitString::from_text(tok.substr(dots + 2));
                if (lo.len != k || hi.len != k || hi.bits < lo.bits)
                    throw std::invalid_argument("bad range token: " + tok);
                l.add(lo.bits, hi.bits);
            } else {
                BitString b = BitString::from_text(tok);
                if (b.len != k) throw std::invalid_argument("node length mismatch: " + tok);
                l.add_node(b.bits);
            }
        }
        t.push(l);
    }
    return t;
}

}  // namespace ww
