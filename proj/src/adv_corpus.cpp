#include "ww/adversaries.hpp"

#include "ww/reductions.hpp"

#include <stdexcept>

namespace ww {

namespace {

using Reply = std::function<std::optional<Value>(const std::vector<Value>& xs, size_t d)>;

size_t obs(const std::vector<Value>& xs)
{
    return value_depth(xs[0]);
}

// II plays the listed queries in order, then declares.
StrategyII rounds(std::string name, std::vector<Reply> queries, Reply declare)
{
    StrategyII s;
    s.name = std::move(name);
    s.respond = [queries, declare](size_t round, const std::vector<Value>& xs) -> std::optional<IIMove> {
        size_t d = obs(xs);
        if (round < queries.size()) {
            auto q = queries[round](xs, d);
            if (!q) return std::nullopt;
            return IIMove{false, *q};
        }
        if (round == queries.size()) {
            auto v = declare(xs, d);
            if (!v) return std::nullopt;
            return IIMove{true, *v};
        }
        return std::nullopt;
    };
    return s;
}

StrategyII delayed(StrategyII s, size_t from)
{
    auto inner = s.respond;
    s.name = "delayed-" + s.name;
    s.respond = [inner, from](size_t round, const std::vector<Value>& xs) -> std::optional<IIMove> {
        if (obs(xs) < from) return std::nullopt;
        return inner(round, xs);
    };
    return s;
}

BitString zeros(size_t d)
{
    return {static_cast<uint32_t>(d), 0};
}

BitString ones(size_t d)
{
    return {static_cast<uint32_t>(d), d == 0 ? 0 : (~0ull >> (64 - d))};
}

BitString alternating(size_t d, int first)
{
    BitString b;
    for (size_t i = 0; i < d; ++i) b = b.child(static_cast<int>((i + first) % 2));
    return b;
}

Value bits(const BitString& b)
{
    return Value::of_seq(b.to_prefix());
}

Value const_bits(size_t d, int bit)
{
    return Value::of_seq(Prefix(d, Entry(bit)));
}

Value tree(LevelTree t)
{
    return Value::of_tree(std::move(t));
}

BitString padded_to(const BitString& s, size_t k)
{
    if (k <= s.len) return s.prefix(static_cast<uint32_t>(k));
    return {static_cast<uint32_t>(k), s.bits << (k - s.len)};
}

// Full to level k, then the single path p (0-padded); k >= d gives the full tree.
LevelTree aou_tree(size_t k, const BitString& p, size_t d)
{
    LevelTree t = LevelTree::root();
    for (size_t j = 1; j <= d; ++j)
        t.push(j <= k ? Level::full(static_cast<uint32_t>(j)) : Level::of(static_cast<uint32_t>(j), {padded_to(p, j)}));
    return t;
}

// 2-tree {0^d, 1^d} whose levels from k on have `width` nodes (1 or 3): a rule violation.
LevelTree misshaped(size_t d, size_t k, int width)
{
    LevelTree t = LevelTree::root();
    for (size_t j = 1; j <= d; ++j) {
        uint32_t jj = static_cast<uint32_t>(j);
        if (j < k || j < 2) t.push(Level::of(jj, {zeros(j), ones(j)}));
        else if (width == 1) t.push(Level::of(jj, {zeros(j)}));
        else t.push(Level::of(jj, {zeros(j), zeros(j - 1).child(1), ones(j)}));
    }
    return t;
}

// Not an aou-tree from level k on: two nodes per level.
LevelTree non_aou(size_t d, size_t k)
{
    LevelTree t = LevelTree::root();
    for (size_t j = 1; j <= d; ++j) {
        uint32_t jj = static_cast<uint32_t>(j);
        if (j < k) t.push(Level::full(jj));
        else t.push(Level::of(jj, {zeros(j), ones(j)}));
    }
    // levels k.. must stay prefix-closed under the full levels above
    return t;
}

// Seeded 2-tree, level by level: continuous in d.
LevelTree random_two(uint64_t seed, size_t d)
{
    LevelTree t = LevelTree::root();
    BitString l{1, 0}, r{1, 1};
    if (d >= 1) t.push(Level::of(1, {l, r}));
    for (size_t k = 2; k <= d; ++k) {
        uint64_t h = mix64(seed * 131 + k);
        int action = static_cast<int>(h % 4);
        BitString nl, nr;
        if (action == 1) {
            nl = l.child(0);
            nr = l.child(1);
        } else if (action == 2) {
            nl = r.child(0);
            nr = r.child(1);
        } else {
            nl = l.child(static_cast<int>((h >> 8) & 1));
            nr = r.child(static_cast<int>((h >> 9) & 1));
        }
        if (nr < nl) std::swap(nl, nr);
        l = nl;
        r = nr;
        t.push(Level::of(static_cast<uint32_t>(k), {l, r}));
    }
    return t;
}

Value xor_mask(const Value& x, uint64_t seed)
{
    Prefix out;
    for (size_t i = 0; i < x.seq.size(); ++i) {
        if (!x.seq[i] || *x.seq[i] > 1) break;
        out.emplace_back(*x.seq[i] ^ (mix64(seed + i) & 1));
    }
    return Value::of_seq(out);
}

Value xor_values(const Value& a, const Value& b)
{
    Prefix out;
    for (size_t i = 0; i < a.seq.size() && i < b.seq.size(); ++i) {
        if (!a.seq[i] || !b.seq[i]) break;
        out.emplace_back((*a.seq[i] ^ *b.seq[i]) & 1);
    }
    return Value::of_seq(out);
}

Value interleave(const Value& a, const Value& b)
{
    Prefix out;
    for (size_t i = 0; i < a.seq.size() && i < b.seq.size(); ++i) {
        if (!a.seq[i] || !b.seq[i]) break;
        out.push_back(a.seq[i]);
        out.push_back(b.seq[i]);
    }
    return Value::of_seq(out);
}

Value complement(const Value& a)
{
    Prefix out;
    for (const auto& e : a.seq) {
        if (!e) break;
        out.emplace_back(1 - (*e & 1));
    }
    return Value::of_seq(out);
}

Value take(const Value& a, size_t n)
{
    return Value::of_seq(truncate(a.seq, n));
}

// Longest chain of leftmost nodes of T: a monotone reading of "the leftmost path".
Value consistent_leftmost(const LevelTree& t)
{
    BitString cur;
    for (size_t k = 1; k <= t.depth(); ++k) {
        const Level& l = t.levels[k];
        BitString node{l.k, l.runs.front().lo};
        if (!cur.is_prefix_of(node)) break;
        cur = node;
    }
    return bits(cur);
}

// First level at which T misses 0^k; with the leftmost node there.
std::optional<std::pair<size_t, BitString>> first_cut(const LevelTree& t)
{
    for (size_t k = 1; k <= t.depth(); ++k)
        if (!t.contains(zeros(k))) {
            const Level& l = t.levels[k];
            return std::make_pair(k, BitString{l.k, l.runs.front().lo});
        }
    return std::nullopt;
}

// First level at which T stops being full.
std::optional<std::pair<size_t, BitString>> first_narrowing(const LevelTree& t)
{
    for (size_t k = 1; k <= t.depth(); ++k)
        if (t.levels[k].size() != (1ull << k)) {
            const Level& l = t.levels[k];
            return std::make_pair(k, BitString{l.k, l.runs.front().lo});
        }
    return std::nullopt;
}

BitString path_bits(const Value& v)
{
    auto b = BitString::from_prefix(v.seq);
    return b ? *b : BitString{};
}

Value part(const Value& v, size_t i)
{
    if (v.kind != Value::Tuple || v.parts.size() <= i) return Value::of_seq({});
    return v.parts[i];
}

// ---- aou-vs-two-star ------------------------------------------------------------------------

Reply par_query(std::function<std::vector<LevelTree>(const std::vector<Value>&, size_t)> f)
{
    return [f](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
        std::vector<Value> ts;
        for (auto& t : f(xs, d)) ts.push_back(tree(std::move(t)));
        return parallel_instance(ts);
    };
}

Reply root_pair()
{
    return par_query([](const std::vector<Value>&, size_t d) { return std::vector<LevelTree>{two_paths_tree(zeros(d), ones(d))}; });
}

std::vector<StrategyII> corpus_aou_vs_two_star()
{
    std::vector<StrategyII> v;
    auto echo = [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return part(xs[1], 0); };
    v.push_back(rounds("echo", {root_pair()}, echo));
    v.push_back(rounds("constant", {root_pair()}, [](const std::vector<Value>&, size_t d) -> std::optional<Value> {
                           return const_bits(d, 0);
                       }));
    v.push_back(rounds("leftmost-path", {root_pair()}, [](const std::vector<Value>& xs, size_t) -> std::optional<Value> {
                           return consistent_leftmost(xs[0].tree);
                       }));
    v.push_back(delayed(rounds("echo", {root_pair()}, echo), 12));
    v.push_back(rounds("collapsing",
                       {par_query([](const std::vector<Value>&, size_t d) {
                           // dead-end sibling until level 6, two paths from there
                           BitString b = d > 6 ? zeros(6).append(ones(d - 6)) : zeros(d);
                           return std::vector<LevelTree>{two_paths_tree(zeros(d), b)};
                       })},
                       echo));
    auto two_trees = par_query([](const std::vector<Value>&, size_t d) {
        return std::vector<LevelTree>{two_paths_tree(zeros(d), ones(d)),
                                      two_paths_tree(alternating(d, 0), alternating(d, 1))};
    });
    v.push_back(rounds("two-trees-xor", {two_trees}, [](const std::vector<Value>& xs, size_t) -> std::optional<Value> {
                           return xor_values(part(xs[1], 0), part(xs[1], 1));
                       }));
    v.push_back(rounds("two-trees-interleave", {two_trees},
                       [](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           return take(interleave(part(xs[1], 0), part(xs[1], 1)), d);
                       }));
    v.push_back(rounds("non-total", {root_pair()}, [](const std::vector<Value>&, size_t) -> std::optional<Value> {
                           return std::nullopt;
                       }));
    v.push_back(rounds("short-declare", {root_pair()}, [](const std::vector<Value>& xs, size_t) -> std::optional<Value> {
                           return take(part(xs[1], 0), 1);
                       }));
    v.push_back(rounds("rule-violating",
                       {par_query([](const std::vector<Value>&, size_t d) { return std::vector<LevelTree>{misshaped(d, 3, 3)}; })},
                       echo));
    v.push_back(rounds("seeded-random",
                       {par_query([](const std::vector<Value>&, size_t d) { return std::vector<LevelTree>{random_two(11, d)}; })},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return xor_mask(part(xs[1], 0), 11); }));
    v.push_back(rounds("nested",
                       {root_pair(), par_query([](const std::vector<Value>& xs, size_t d) {
                            Value x = part(xs[1], 0);
                            BitString a = padded_to(path_bits(x), d), b = padded_to(path_bits(complement(x)), d);
                            if (b < a) std::swap(a, b);
                            return std::vector<LevelTree>{two_paths_tree(a, b)};
                        })},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return part(xs[2], 0); }));
    return v;
}

std::vector<StrategyII> sabotage_aou_vs_two_star()
{
    std::vector<StrategyII> v;
    for (int width : {1, 3})
        for (size_t k = 2; k < 12; ++k)
            v.push_back(rounds("violate-w" + std::to_string(width) + "-at-" + std::to_string(k),
                               {par_query([k, width](const std::vector<Value>&, size_t d) {
                                   return std::vector<LevelTree>{misshaped(d, k, width)};
                               })},
                               [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return part(xs[1], 0); }));
    return v;
}

// ---- two-vs-aou-game ------------------------------------------------------------------------

Reply full_aou(size_t n)
{
    return par_query([n](const std::vector<Value>&, size_t d) { return std::vector<LevelTree>(n, full_tree(d)); });
}

// Full until T cuts 0^omega, then the unique path through T's leftmost node there.
LevelTree collapse_on_cut(const LevelTree& T, size_t d)
{
    auto cut = first_cut(T);
    if (!cut) return full_tree(d);
    return aou_tree(cut->first - 1, cut->second, d);
}

std::vector<StrategyII> corpus_two_vs_aou_game()
{
    std::vector<StrategyII> v;
    auto echo_x = [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return part(xs[1], 0); };
    v.push_back(rounds("echo", {full_aou(1), full_aou(1)}, echo_x));
    v.push_back(rounds("collapse-s",
                       {par_query([](const std::vector<Value>& xs, size_t d) {
                            return std::vector<LevelTree>{collapse_on_cut(xs[0].tree, d)};
                        }),
                        full_aou(1)},
                       echo_x));
    v.push_back(rounds("zeros", {full_aou(1), full_aou(1)}, [](const std::vector<Value>&, size_t d) -> std::optional<Value> {
                           return const_bits(d, 0);
                       }));
    v.push_back(rounds("ones", {full_aou(1), full_aou(1)}, [](const std::vector<Value>&, size_t d) -> std::optional<Value> {
                           return const_bits(d, 1);
                       }));
    v.push_back(rounds("collapse-r",
                       {full_aou(1), par_query([](const std::vector<Value>& xs, size_t d) {
                            return std::vector<LevelTree>{collapse_on_cut(xs[0].tree, d)};
                        })},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return part(xs[2], 0); }));
    v.push_back(delayed(rounds("echo", {full_aou(1), full_aou(1)}, echo_x), 10));
    v.push_back(rounds("non-total", {full_aou(1), full_aou(1)}, [](const std::vector<Value>&, size_t) -> std::optional<Value> {
                           return std::nullopt;
                       }));
    v.push_back(rounds("rule-violating",
                       {par_query([](const std::vector<Value>&, size_t d) { return std::vector<LevelTree>{non_aou(d, 3)}; }),
                        full_aou(1)},
                       echo_x));
    v.push_back(rounds("seeded-random", {full_aou(1), full_aou(1)},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return xor_mask(part(xs[1], 0), 5); }));
    v.push_back(rounds("two-s-trees", {full_aou(2), full_aou(1)},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> {
                           return complement(xor_values(part(xs[1], 0), part(xs[1], 1)));
                       }));
    v.push_back(rounds("leftmost-path", {full_aou(1), full_aou(1)},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> {
                           return consistent_leftmost(xs[0].tree);
                       }));
    v.push_back(rounds("collapse-both",
                       {par_query([](const std::vector<Value>& xs, size_t d) {
                            return std::vector<LevelTree>{collapse_on_cut(xs[0].tree, d)};
                        }),
                        par_query([](const std::vector<Value>& xs, size_t d) {
                            return std::vector<LevelTree>{collapse_on_cut(xs[0].tree, d)};
                        })},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> {
                           return xor_values(part(xs[1], 0), complement(complement(part(xs[2], 0))));
                       }));
    return v;
}

std::vector<StrategyII> sabotage_two_vs_aou_game()
{
    std::vector<StrategyII> v;
    auto echo_x = [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return part(xs[1], 0); };
    for (size_t k = 2; k < 12; ++k) {
        v.push_back(rounds("s-not-aou-at-" + std::to_string(k),
                           {par_query([k](const std::vector<Value>&, size_t d) { return std::vector<LevelTree>{non_aou(d, k)}; }),
                            full_aou(1)},
                           echo_x));
        v.push_back(rounds("r-not-aou-at-" + std::to_string(k),
                           {full_aou(1), par_query([k](const std::vector<Value>&, size_t d) {
                                return std::vector<LevelTree>{non_aou(d, k)};
                            })},
                           echo_x));
    }
    return v;
}

// ---- clop-vs-mixed --------------------------------------------------------------------------

Reply pair_query(std::function<LevelTree(const std::vector<Value>&, size_t)> a,
                 std::function<LevelTree(const std::vector<Value>&, size_t)> b)
{
    return [a, b](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
        return Value::tuple({tree(a(xs, d)), tree(b(xs, d))});
    };
}

LevelTree full_of(const std::vector<Value>&, size_t d)
{
    return full_tree(d);
}

LevelTree root_two(const std::vector<Value>&, size_t d)
{
    return two_paths_tree(zeros(d), ones(d));
}

// Full until T narrows, then the unique path through T's leftmost node there.
LevelTree collapse_on_narrowing(const LevelTree& T, size_t d)
{
    auto cut = first_narrowing(T);
    if (!cut) return full_tree(d);
    return aou_tree(cut->first - 1, cut->second, d);
}

std::vector<StrategyII> corpus_clop_vs_mixed()
{
    std::vector<StrategyII> v;
    auto xa = [](const Value& x) { return part(x, 0); };
    auto xb = [](const Value& x) { return part(x, 1); };
    v.push_back(rounds("concat", {pair_query(full_of, root_two)},
                       [=](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           return take(interleave(xa(xs[1]), xb(xs[1])), d);
                       }));
    v.push_back(rounds("a-collapse",
                       {pair_query([](const std::vector<Value>& xs, size_t d) { return collapse_on_narrowing(xs[0].tree, d); },
                                   root_two)},
                       [=](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return xa(xs[1]); }));
    v.push_back(rounds("echo-b", {pair_query(full_of, root_two)},
                       [=](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return xb(xs[1]); }));
    v.push_back(rounds("constant", {pair_query(full_of, root_two)},
                       [](const std::vector<Value>&, size_t d) -> std::optional<Value> { return const_bits(d, 1); }));
    v.push_back(delayed(rounds("echo-b", {pair_query(full_of, root_two)},
                               [=](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return xb(xs[1]); }),
                        10));
    v.push_back(rounds("non-total", {pair_query(full_of, root_two)},
                       [](const std::vector<Value>&, size_t) -> std::optional<Value> { return std::nullopt; }));
    v.push_back(rounds("rule-violating",
                       {pair_query(full_of, [](const std::vector<Value>&, size_t d) { return misshaped(d, 3, 3); })},
                       [=](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return xb(xs[1]); }));
    v.push_back(rounds("two-rounds",
                       {pair_query(full_of, root_two),
                        pair_query(full_of,
                                   [=](const std::vector<Value>& xs, size_t d) {
                                       BitString a = padded_to(path_bits(xb(xs[1])), d),
                                                 b = padded_to(path_bits(complement(xb(xs[1]))), d);
                                       if (b < a) std::swap(a, b);
                                       return two_paths_tree(a, b);
                                   })},
                       [=](const std::vector<Value>& xs, size_t) -> std::optional<Value> {
                           return xor_values(xb(xs[2]), xa(xs[1]));
                       }));
    v.push_back(rounds("seeded-random",
                       {pair_query(full_of, [](const std::vector<Value>&, size_t d) { return random_two(23, d); })},
                       [=](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return xor_mask(xb(xs[1]), 23); }));
    v.push_back(rounds("leftmost-path", {pair_query(full_of, root_two)},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> {
                           return consistent_leftmost(xs[0].tree);
                       }));
    v.push_back(rounds("short-declare", {pair_query(full_of, root_two)},
                       [=](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return take(xb(xs[1]), 2); }));
    return v;
}

std::vector<StrategyII> sabotage_clop_vs_mixed()
{
    std::vector<StrategyII> v;
    auto echo = [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return part(xs[1], 1); };
    for (size_t k = 2; k < 12; ++k) {
        v.push_back(rounds("a-not-aou-at-" + std::to_string(k),
                           {pair_query([k](const std::vector<Value>&, size_t d) { return non_aou(d, k); }, root_two)}, echo));
        v.push_back(rounds("b-not-two-at-" + std::to_string(k),
                           {pair_query(full_of, [k](const std::vector<Value>&, size_t d) { return misshaped(d, k, 3); })},
                           echo));
    }
    return v;
}

// ---- conv-vs-triple -------------------------------------------------------------------------

Value coloring(size_t d, std::function<uint64_t(size_t)> c)
{
    Prefix p;
    for (size_t i = 0; i < d; ++i) p.emplace_back(c(i));
    return Value::of_seq(p);
}

Value stream(size_t d, std::function<uint64_t(size_t)> a)
{
    return coloring(d, std::move(a));
}

LevelTree dead_end(size_t d)
{
    return two_paths_tree(zeros(d), zeros(d));
}

// Root-branching until level 5, then both nodes above 0^5.
LevelTree merging(size_t d)
{
    LevelTree t = LevelTree::root();
    for (size_t j = 1; j <= d; ++j) {
        uint32_t jj = static_cast<uint32_t>(j);
        if (j <= 5) t.push(Level::of(jj, {zeros(j), ones(j)}));
        else t.push(Level::of(jj, {zeros(j), zeros(5).child(1).append(zeros(j - 6))}));
    }
    return t;
}

using Part = std::function<Value(const std::vector<Value>&, size_t)>;

Reply triple(Part c, Part a, std::function<LevelTree(const std::vector<Value>&, size_t)> b)
{
    return [c, a, b](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
        return Value::tuple({Value::tuple({c(xs, d), a(xs, d)}), tree(b(xs, d))});
    };
}

Part zero_coloring()
{
    return [](const std::vector<Value>&, size_t d) { return coloring(d, [](size_t) { return 0; }); };
}

Part balanced()
{
    return [](const std::vector<Value>&, size_t d) { return coloring(d, [](size_t i) { return i % 2; }); };
}

Part const_stream(uint64_t v)
{
    return [v](const std::vector<Value>&, size_t d) { return stream(d, [v](size_t) { return v; }); };
}

Value rt_answer(const Value& x)
{
    return part(part(x, 0), 0);
}

uint64_t lim_answer(const Value& x)
{
    Value l = part(part(x, 0), 1);
    return l.seq.empty() || !l.seq[0] ? 0 : *l.seq[0];
}

Value wkl_answer(const Value& x)
{
    return part(x, 1);
}

// The color picked by a selector on the coloring at the same index.
std::optional<uint64_t> picked_color(const Value& sel, const Value& c)
{
    for (size_t i = 0; i < sel.seq.size() && i < c.seq.size(); ++i)
        if (sel.seq[i] && *sel.seq[i] == 1 && c.seq[i]) return *c.seq[i];
    return std::nullopt;
}

std::vector<StrategyII> corpus_conv_vs_triple()
{
    std::vector<StrategyII> v;
    auto dead = [](const std::vector<Value>&, size_t d) { return dead_end(d); };
    auto root = [](const std::vector<Value>&, size_t d) { return two_paths_tree(zeros(d), ones(d)); };
    v.push_back(rounds("one-limn", {triple(zero_coloring(), const_stream(5), dead)},
                       [](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           return const_bits(d, static_cast<int>(lim_answer(xs[1]) & 1));
                       }));
    v.push_back(rounds("one-wkl", {triple(zero_coloring(), const_stream(0), root)},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return wkl_answer(xs[1]); }));
    v.push_back(rounds("merging", {triple(zero_coloring(), const_stream(0), [](const std::vector<Value>&, size_t d) {
                                        return merging(d);
                                    })},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return wkl_answer(xs[1]); }));
    v.push_back(rounds("rt-branch", {triple(balanced(), const_stream(1), dead)},
                       [](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           Value c = coloring(d, [](size_t i) { return i % 2; });
                           auto col = picked_color(rt_answer(xs[1]), c);
                           if (!col) return std::nullopt;
                           return const_bits(d, static_cast<int>(*col));
                       }));
    v.push_back(rounds("echo-rt", {triple(balanced(), const_stream(1), dead)},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return rt_answer(xs[1]); }));
    v.push_back(delayed(rounds("one-wkl", {triple(zero_coloring(), const_stream(0), root)},
                               [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return wkl_answer(xs[1]); }),
                        10));
    v.push_back(rounds("non-total", {triple(zero_coloring(), const_stream(0), root)},
                       [](const std::vector<Value>&, size_t) -> std::optional<Value> { return std::nullopt; }));
    v.push_back(rounds("rule-violating",
                       {triple([](const std::vector<Value>&, size_t d) { return coloring(d, [](size_t i) { return i == 3 ? 2 : 0; }); },
                               const_stream(0), root)},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return wkl_answer(xs[1]); }));
    v.push_back(rounds("limn-changing",
                       {triple(zero_coloring(),
                               [](const std::vector<Value>&, size_t d) { return stream(d, [](size_t i) { return i < 4 ? 3 : 6; }); },
                               dead)},
                       [](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           return const_bits(d, lim_answer(xs[1]) == 3 ? 0 : 1);
                       }));
    v.push_back(rounds("seeded-random",
                       {triple([](const std::vector<Value>&, size_t d) {
                                   return coloring(d, [](size_t i) { return (mix64(41 + i % 3) & 1) ^ (i % 3 == 0); });
                               },
                               const_stream(2), [](const std::vector<Value>&, size_t d) { return random_two(41, d); })},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> {
                           return xor_mask(wkl_answer(xs[1]), 41);
                       }));
    v.push_back(rounds("two-rounds",
                       {triple(zero_coloring(), const_stream(1), root), triple(balanced(), const_stream(2), dead)},
                       [](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           Value c = coloring(d, [](size_t i) { return i % 2; });
                           auto col = picked_color(rt_answer(xs[2]), c);
                           if (!col) return std::nullopt;
                           Value w = wkl_answer(xs[1]);
                           return *col ? complement(w) : w;
                       }));
    return v;
}

std::vector<StrategyII> sabotage_conv_vs_triple()
{
    std::vector<StrategyII> v;
    auto echo = [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return wkl_answer(xs[1]); };
    auto root = [](const std::vector<Value>&, size_t d) { return two_paths_tree(zeros(d), ones(d)); };
    for (size_t k = 2; k < 9; ++k) {
        v.push_back(rounds("bad-color-at-" + std::to_string(k),
                           {triple([k](const std::vector<Value>&, size_t d) {
                                       return coloring(d, [k](size_t i) { return i == k ? 7 : 0; });
                                   },
                                   const_stream(0), root)},
                           echo));
        v.push_back(rounds("bad-tree-at-" + std::to_string(k),
                           {triple(zero_coloring(), const_stream(0),
                                   [k](const std::vector<Value>&, size_t d) { return misshaped(d, k, 1); })},
                           echo));
    }
    for (size_t p = 2; p < 8; ++p)
        v.push_back(rounds("unsettled-limit-" + std::to_string(p),
                           {triple(zero_coloring(),
                                   [p](const std::vector<Value>&, size_t d) { return stream(d, [p](size_t i) { return (i / p) % 2; }); },
                                   root)},
                           echo));
    return v;
}

// ---- semicontinuous bounds --------------------------------------------------------------------

MonotoneMap const_map(const std::string& name, std::function<uint64_t(size_t)> bit)
{
    Prefix p;
    for (size_t i = 0; i < 64; ++i) p.emplace_back(bit(i));
    return {name, [p](const Prefix&) { return p; }};
}

// Bits of the left node at level k of the coded tree, then `fill`; undefined before level k.
MonotoneMap left_at(size_t k, uint64_t fill)
{
    return {"left-at-" + std::to_string(k), [k, fill](const Prefix& code) {
                Prefix out;
                if (code.size() < 2 * k || !code[2 * k - 2]) return out;
                BitString l{static_cast<uint32_t>(k), *code[2 * k - 2]};
                out = l.to_prefix();
                while (out.size() < 64) out.emplace_back(fill);
                return out;
            }};
}

MonotoneMap after_level(size_t k, MonotoneMap m)
{
    return {m.name + "-after-" + std::to_string(k), [k, m](const Prefix& code) {
                if (code.size() < 2 * k) return Prefix{};
                return apply_map(m, code);
            }};
}

SemiboundStrategy sb(std::string name, std::vector<MonotoneMap> maps, std::function<uint64_t(size_t)> bound)
{
    return {std::move(name),
            [maps](size_t n) { return n < maps.size() ? maps[n] : empty_map(); },
            std::move(bound)};
}

MonotoneMap zeros_map()
{
    return const_map("zeros", [](size_t) { return 0; });
}

MonotoneMap ones_map()
{
    return const_map("ones", [](size_t) { return 1; });
}

MonotoneMap alt_map()
{
    return const_map("alternating", [](size_t i) { return i % 2; });
}

}  // namespace

std::vector<SemiboundStrategy> semibound_corpus()
{
    auto one = [](size_t) -> uint64_t { return 1; };
    auto two = [](size_t) -> uint64_t { return 2; };
    std::vector<SemiboundStrategy> v;
    v.push_back(sb("zero", {zeros_map()}, one));
    v.push_back(sb("zero-one", {zeros_map(), ones_map()}, two));
    v.push_back(sb("alternating", {alt_map()}, one));
    v.push_back(sb("three", {zeros_map(), ones_map(), alt_map()}, [](size_t) -> uint64_t { return 3; }));
    v.push_back(sb("left-at-4", {left_at(4, 0)}, one));
    v.push_back(sb("undefined-then-ones", {empty_map(), ones_map()}, two));
    v.push_back(sb("late-bound", {zeros_map(), ones_map(), alt_map()}, [](size_t s) -> uint64_t { return std::min<size_t>(s / 4, 3); }));
    v.push_back(sb("seeded-random", {const_map("random", [](size_t i) { return mix64(77 + i) & 1; })}, one));
    v.push_back(sb("delayed", {after_level(10, ones_map())}, one));
    v.push_back(sb("left-at-3-and-zeros", {left_at(3, 1), zeros_map()}, two));
    return v;
}

std::vector<SemiboundStrategy> semibound_sabotage()
{
    std::vector<SemiboundStrategy> v;
    for (size_t i = 0; i < 10; ++i) {
        std::vector<MonotoneMap> maps;
        for (size_t n = 0; n < 8; ++n)
            maps.push_back(const_map("random-" + std::to_string(n), [i, n](size_t k) { return mix64(i * 1000 + n * 64 + k) & 1; }));
        v.push_back(sb("divergent-" + std::to_string(i), maps, [i](size_t s) -> uint64_t { return s / (i + 1); }));
    }
    for (size_t i = 0; i < 10; ++i) {
        std::vector<MonotoneMap> maps{left_at(2 + i, i % 2), zeros_map(), ones_map(), alt_map()};
        v.push_back(sb("oscillating-" + std::to_string(i), maps, [i](size_t s) -> uint64_t { return (s + i) % 4 + 1; }));
    }
    return v;
}

// ---- bound extraction corpus --------------------------------------------------------------------

namespace {

Part echo_x0()
{
    return [](const std::vector<Value>& xs, size_t) { return xs[0]; };
}

Reply rl_query(Part c, Part a)
{
    return [c, a](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
        return Value::tuple({c(xs, d), a(xs, d)});
    };
}

Value color_of(const Value& answer, const Value& coloring_v)
{
    auto c = picked_color(part(answer, 0), coloring_v);
    return Value::of_seq(c ? Prefix{Entry(*c)} : Prefix{});
}

}  // namespace

std::vector<StrategyII> bound_corpus()
{
    std::vector<StrategyII> v;
    auto bal = [](size_t d) { return coloring(d, [](size_t i) { return i % 2; }); };
    auto per3 = [](size_t d) { return coloring(d, [](size_t i) { return i % 3 == 2 ? 1 : 0; }); };
    v.push_back(rounds("declare-now", {}, [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return xs[0]; }));
    v.push_back(rounds("one-limn-query", {rl_query(zero_coloring(), echo_x0())},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return part(xs[1], 1); }));
    v.push_back(rounds("rt-branch", {rl_query(balanced(), const_stream(0))},
                       [bal](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           return color_of(xs[1], bal(d));
                       }));
    v.push_back(rounds("rt-and-limit", {rl_query(balanced(), echo_x0())},
                       [bal](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           Value c = color_of(xs[1], bal(d));
                           Value l = part(xs[1], 1);
                           Prefix p = c.seq;
                           p.insert(p.end(), l.seq.begin(), l.seq.end());
                           return Value::of_seq(p);
                       }));
    v.push_back(rounds("two-rt-rounds", {rl_query(balanced(), const_stream(0)), rl_query(balanced(), const_stream(1))},
                       [bal](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           Prefix p = color_of(xs[1], bal(d)).seq;
                           Prefix q = color_of(xs[2], bal(d)).seq;
                           p.insert(p.end(), q.begin(), q.end());
                           return Value::of_seq(p);
                       }));
    v.push_back(rounds("limit-then-rt",
                       {rl_query(zero_coloring(), echo_x0()),
                        [bal, per3](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                            Value c = lim_answer(Value::tuple({xs[1], Value{}})) % 2 ? bal(d) : per3(d);
                            return Value::tuple({c, stream(d, [](size_t) { return 4; })});
                        }},
                       [bal, per3](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           Value c = lim_answer(Value::tuple({xs[1], Value{}})) % 2 ? bal(d) : per3(d);
                           Prefix p = part(xs[1], 1).seq;
                           Prefix q = color_of(xs[2], c).seq;
                           p.insert(p.end(), q.begin(), q.end());
                           return Value::of_seq(p);
                       }));
    v.push_back(rounds("three-rt-rounds",
                       {rl_query(balanced(), const_stream(0)), rl_query(balanced(), const_stream(0)),
                        rl_query(balanced(), const_stream(0))},
                       [bal](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           Prefix p;
                           for (size_t i = 1; i <= 3; ++i) {
                               Prefix q = color_of(xs[i], bal(d)).seq;
                               p.insert(p.end(), q.begin(), q.end());
                           }
                           return Value::of_seq(p);
                       }));
    v.push_back(rounds("echo-selector", {rl_query(balanced(), const_stream(0))},
                       [](const std::vector<Value>& xs, size_t) -> std::optional<Value> { return take(part(xs[1], 0), 4); }));
    v.push_back(rounds("periodic-three", {rl_query([per3](const std::vector<Value>&, size_t d) { return per3(d); }, const_stream(0))},
                       [per3](const std::vector<Value>& xs, size_t d) -> std::optional<Value> {
                           return color_of(xs[1], per3(d));
                       }));
    v.push_back(rounds("non-total", {rl_query(balanced(), echo_x0())},
                       [](const std::vector<Value>&, size_t) -> std::optional<Value> { return std::nullopt; }));
    return v;
}

std::vector<std::string> adversary_names()
{
    return {"aou-vs-two-star", "two-vs-aou-game", "clop-vs-mixed", "two-vs-semibound", "conv-vs-triple"};
}

std::vector<StrategyII> adversary_corpus(const std::string& adversary)
{
    if (adversary == "aou-vs-two-star") return corpus_aou_vs_two_star();
    if (adversary == "two-vs-aou-game") return corpus_two_vs_aou_game();
    if (adversary == "clop-vs-mixed") return corpus_clop_vs_mixed();
    if (adversary == "conv-vs-triple") return corpus_conv_vs_triple();
    if (adversary == "two-vs-semibound") {
        std::vector<StrategyII> v;
        for (const auto& s : semibound_corpus()) v.push_back(semibound_game_strategy(s));
        return v;
    }
    throw std::invalid_argument("unknown adversary " + adversary);
}

std::vector<StrategyII> sabotage_corpus(const std::string& adversary)
{
    if (adversary == "aou-vs-two-star") return sabotage_aou_vs_two_star();
    if (adversary == "two-vs-aou-game") return sabotage_two_vs_aou_game();
    if (adversary == "clop-vs-mixed") return sabotage_clop_vs_mixed();
    if (adversary == "conv-vs-triple") return sabotage_conv_vs_triple();
    if (adversary == "two-vs-semibound") {
        std::vector<StrategyII> v;
        for (const auto& s : semibound_sabotage()) v.push_back(semibound_game_strategy(s));
        return v;
    }
    throw std::invalid_argument("unknown adversary " + adversary);
}

AdversaryRun run_adversary(const std::string& adversary, const std::string& strategy, size_t max_stage)
{
    if (adversary == "two-vs-semibound") {
        for (auto list : {semibound_corpus(), semibound_sabotage()})
            for (const auto& s : list)
                if (s.name == strategy) return adv_two_vs_semibound(s, max_stage);
        throw std::invalid_argument("unknown strategy " + strategy);
    }
    auto run = [&](const StrategyII& s) {
        if (adversary == "aou-vs-two-star") return adv_aou_vs_two_star(s, max_stage);
        if (adversary == "two-vs-aou-game") return adv_two_vs_aou_game(s, max_stage);
        if (adversary == "clop-vs-mixed") return adv_clop_vs_mixed(s, max_stage);
        return adv_conv_vs_triple(s, max_stage);
    };
    for (auto list : {adversary_corpus(adversary), sabotage_corpus(adversary)})
        for (const auto& s : list)
            if (s.name == strategy) return run(s);
    throw std::invalid_argument("unknown strategy " + strategy);
}

}  // namespace ww
