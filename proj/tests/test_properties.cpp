#include <doctest.h>

#include "support.hpp"

#include <random>

using namespace ww;
using namespace ww::testing;

TEST_SUITE("properties")
{
    TEST_CASE("unit law of finite parallelization")
    {
        for (const char* name : {"llpo", "wkl2", "limn", "kn"}) {
            auto p = catalog_problem(name);
            auto par = finite_parallelization(p);
            for (uint64_t seed = 0; seed < 30; ++seed) {
                Value x = p->generate(seed, 16);
                Value px = parallel_instance({x});
                CHECK(par->instance_valid(px, 16).kind == p->instance_valid(x, 16).kind);
                auto c = p->candidates(x, 16);
                if (!c) continue;
                for (const auto& y : *c) {
                    CAPTURE(name);
                    CHECK(par->solution_valid(px, Value::tuple({y}), 16).kind == p->solution_valid(x, y, 16).kind);
                }
            }
        }
    }

    TEST_CASE("nested two-path queries declare at most 2^k values")
    {
        auto w = catalog_problem("wkl2");
        for (size_t k = 0; k <= 3; ++k)
            for (size_t depth = 1; depth <= 6; ++depth)
                for (uint64_t seed = 0; seed < 8; ++seed) {
                    ClosureResult r = eval_game_closure(w, w->generate(seed, depth), nested_tree_strategy(seed, k), k + 2, depth);
                    CAPTURE(k);
                    CAPTURE(depth);
                    CHECK(r.status.ok());
                    CHECK(r.values.size() <= (size_t{1} << k));
                    CHECK(r.values.size() >= 1);
                }
    }

    TEST_CASE("the earlier violation decides")
    {
        auto w = catalog_problem("wkl2");
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 200; ++trial) {
            size_t depth = 3 + rng() % 5;
            Value x0 = w->generate(rng(), depth);
            uint64_t sabotage = rng() % 4;
            StrategyI si{"noisy", [&, x0, sabotage, depth](size_t round, const std::vector<IIMove>& ys, size_t) -> std::optional<Value> {
                             if (round == 0) return x0;
                             const Value& q = ys.back().value;
                             if (round == sabotage || q.kind != Value::Tree) return Value::of_seq(Prefix(depth, Entry(1)));
                             return Value::of_seq(level_paths(q.tree, depth, 1)[0].to_prefix());
                         }};
            StrategyII sii{"noisy", [depth, trial](size_t round, const std::vector<Value>& xs) -> std::optional<IIMove> {
                               if (round == static_cast<size_t>(trial % 3)) return IIMove{false, Value::of_tree(full_tree(depth))};
                               if (round < 2) return IIMove{false, xs[0]};
                               return IIMove{true, xs.back()};
                           }};
            Transcript t = play_game(*w, *w, si, sii, 5, depth);
            auto v = check_rules(t);
            if (!v) continue;
            CHECK(t.verdict == (v->first == Player::I ? Outcome::IIWins : Outcome::IWins));
        }
    }

    TEST_CASE("runs are deterministic")
    {
        for (const auto& name : catalog_names()) {
            auto p = catalog_problem(name);
            CHECK(value_to_text(p->generate(11, 20)) == value_to_text(p->generate(11, 20)));
        }
        for (const auto& a : adversary_names()) {
            auto s = a == "two-vs-semibound" ? semibound_corpus()[1].name : adversary_corpus(a)[1].name;
            CHECK(run_to_text(run_adversary(a, s, 30)) == run_to_text(run_adversary(a, s, 30)));
        }
        for (const auto& s : bound_corpus())
            CHECK(bound_to_text(bound_extract(bound_instance(2, 20), s, 25, 20)) ==
                  bound_to_text(bound_extract(bound_instance(2, 20), s, 25, 20)));
    }

    TEST_CASE("shipped maps are monotone")
    {
        auto pairs = prefix_pairs(5, 200);
        for (const auto& m : shipped_maps()) {
            CAPTURE(m.name);
            CHECK(check_monotonicity(m, pairs).ok());
        }
    }

    TEST_CASE("shipped witnesses are monotone")
    {
        for (const auto& w : all_shipped_witnesses()) {
            CAPTURE(w.name);
            CHECK(check_witness_monotone(w, 3, 40, 20).ok());
        }
    }

    TEST_CASE("solution failures persist with depth")
    {
        for (const auto& name : catalog_names()) {
            auto p = catalog_problem(name);
            for (uint64_t seed = 0; seed < 10; ++seed) {
                Value x = p->generate(seed, 24);
                auto c = p->candidates(x, 24);
                if (!c) continue;
                std::vector<Value> ys = *c;
                if (ys.size() > 16) ys.resize(16);
                for (const auto& y : ys)
                    for (size_t d = 1; d < 24; d += 3) {
                        if (!p->solution_valid(x, y, d).failed()) continue;
                        CAPTURE(name);
                        CAPTURE(seed);
                        CAPTURE(d);
                        for (size_t e = d; e <= 24; e += 2) CHECK(p->solution_valid(x, y, e).failed());
                    }
            }
        }
    }

    TEST_CASE("generated trees are prefix-closed at every level")
    {
        for (TreeClass c : {TreeClass::Two, TreeClass::Aou, TreeClass::Convex, TreeClass::Clopen})
            for (uint64_t seed = 0; seed < 20; ++seed) {
                LevelTree t = generate_tree(c, seed, 20);
                for (size_t k = 1; k <= 20; ++k)
                    for (const auto& n : t.levels[k].nodes(64)) CHECK(t.contains(n.prefix(static_cast<uint32_t>(k - 1))));
            }
    }

    TEST_CASE("adversaries are safe against every strategy at every stage")
    {
        for (const auto& a : adversary_names()) {
            if (a == "two-vs-semibound") {
                for (const auto& s : semibound_sabotage()) CHECK(adv_two_vs_semibound(s, 40).safety.ok());
                continue;
            }
            for (const auto& s : sabotage_corpus(a)) {
                CAPTURE(a);
                CAPTURE(s.name);
                CHECK(run_adversary(a, s.name, 40).safety.ok());
            }
        }
    }
}
