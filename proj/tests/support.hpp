#ifndef WW_TEST_SUPPORT_HPP
#define WW_TEST_SUPPORT_HPP

#include "ww/adversaries.hpp"
#include "ww/reductions.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ww::testing {

// Every monotone map the library ships: primitives, the map codes used by strategies and
// star instances, and the semicontinuous-bound families.
inline std::vector<MonotoneMap> shipped_maps()
{
    std::vector<MonotoneMap> out{identity_map(), empty_map(), scale_map(2), scale_map(3)};
    for (const char* code : {"echo", "left", "right", "(take 1)", "(take 5)", "(const 1,0,1)", "(const 0,0,0,0)",
                             "(compose left right)", "(compose (take 3) right)", "(pair left right)",
                             "(pair (compose left right) right)", "(branch 0 (const 0) (const 1))",
                             "(branch 2 echo (take 2))"})
        out.push_back(map_from_code(code));
    for (const auto& sb : semibound_corpus())
        for (size_t n = 0; n < 4; ++n) {
            MonotoneMap m = sb.family(n);
            m.name = sb.name + "/" + std::to_string(n) + ":" + m.name;
            out.push_back(m);
        }
    return out;
}

// Pairs p <= q with |q| <= 64 over a small alphabet (bits mostly).
inline std::vector<std::pair<Prefix, Prefix>> prefix_pairs(uint64_t seed, size_t n)
{
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Prefix, Prefix>> out;
    for (size_t i = 0; i < n; ++i) {
        size_t len = rng() % 65;
        uint64_t alphabet = rng() % 4 == 0 ? 8 : 2;
        Prefix q;
        for (size_t k = 0; k < len; ++k) q.emplace_back(rng() % alphabet);
        Prefix p = truncate(q, len == 0 ? 0 : rng() % (len + 1));
        out.emplace_back(std::move(p), std::move(q));
    }
    return out;
}

// Continuous strategies for WKL_{<=2} games making k nested queries. The r-th tree has the
// two paths a and a with bits flipped from a seeded split point, where a is the previous answer
// under a seeded mask; position j of every move reads position j of earlier answers only.
inline StrategyII nested_tree_strategy(uint64_t seed, size_t k)
{
    return {"nested-" + std::to_string(seed) + "-" + std::to_string(k),
            [seed, k](size_t round, const std::vector<Value>& xs) -> std::optional<IIMove> {
                size_t d = xs[0].kind == Value::Tree ? xs[0].tree.depth() : xs[0].seq.size();
                auto bit_of = [&](size_t i, size_t j) -> uint64_t {
                    const Prefix& s = xs[i].seq;
                    return j < s.size() && s[j] ? (*s[j] & 1) : 0;
                };
                if (round < k) {
                    uint64_t h = mix64(seed * 7919 + round);
                    size_t split = h % 4;
                    BitString a, b;
                    for (size_t j = 0; j < d; ++j) {
                        uint64_t prev = xs.size() > 1 ? bit_of(xs.size() - 1, j) : 0;
                        int x = static_cast<int>(prev ^ ((mix64(h + j) >> 7) & 1));
                        a = a.child(x);
                        b = b.child(j >= split ? 1 - x : x);
                    }
                    if (b < a) std::swap(a, b);
                    return IIMove{false, Value::of_tree(two_paths_tree(a, b))};
                }
                Prefix u;
                for (size_t j = 0; j < d; ++j) {
                    uint64_t bit = (seed >> (j % 8)) & 1;
                    for (size_t i = 1; i < xs.size(); ++i) bit ^= bit_of(i, j);
                    u.emplace_back(bit);
                }
                return IIMove{true, Value::of_seq(u)};
            }};
}

}  // namespace ww::testing

#endif
