#include <doctest.h>

#include "ww/problems.hpp"

#include <stdexcept>

using namespace ww;

namespace {

Value seq(std::initializer_list<uint64_t> xs)
{
    return Value::of_seq(make_prefix(xs));
}

Value repeat_after(std::vector<uint64_t> head, uint64_t tail, size_t n)
{
    Prefix p;
    for (size_t i = 0; i < n; ++i) p.emplace_back(i < head.size() ? head[i] : tail);
    return Value::of_seq(p);
}

Value bits(const std::string& s)
{
    return Value::of_seq(BitString::from_text(s).to_prefix());
}

}  // namespace

TEST_SUITE("problems")
{
    TEST_CASE("llpo")
    {
        auto llpo = catalog_problem("llpo");
        Value zeros = repeat_after({}, 0, 16);
        CHECK(llpo->solution_valid(zeros, seq({0}), 16).ok());
        CHECK(llpo->solution_valid(zeros, seq({1}), 16).ok());

        Value x = repeat_after({0, 0, 0, 1}, 0, 16);
        CHECK(llpo->instance_valid(x, 16).ok());
        CHECK(llpo->solution_valid(x, seq({0}), 16).ok());
        Verdict v = llpo->solution_valid(x, seq({1}), 16);
        CHECK(v.failed());
        CHECK(v.depth == 4);
        CHECK(llpo->solution_valid(x, seq({1}), 3).ok());
    }

    TEST_CASE("discrete limit")
    {
        auto limn = catalog_problem("limn");
        Value x = repeat_after({3, 1}, 4, 32);
        CHECK(limn->instance_valid(x, 32).ok());
        CHECK(limn->solution_valid(x, seq({4}), 32).ok());
        CHECK(limn->solution_valid(x, seq({3}), 32).failed());
    }

    TEST_CASE("compact choice")
    {
        auto kn = catalog_problem("kn");
        Value x = repeat_after({3}, 2, 16);
        CHECK(kn->solution_valid(x, seq({0}), 16).ok());
        CHECK(kn->solution_valid(x, seq({1}), 16).ok());
        CHECK(kn->solution_valid(x, seq({2}), 16).failed());
        CHECK(kn->solution_valid(x, seq({3}), 16).failed());
    }

    TEST_CASE("pigeonhole for two colors")
    {
        auto rt = catalog_problem("rt12");
        for (size_t d : {4u, 8u, 16u, 32u}) {
            Prefix c, h;
            for (size_t n = 0; n < d; ++n) {
                c.emplace_back(n % 2);
                h.emplace_back(n % 2 == 0 ? 1 : 0);
            }
            CHECK(rt->solution_valid(Value::of_seq(c), Value::of_seq(h), d).ok());
            Prefix mixed = h;
            mixed[1] = 1;
            CHECK(rt->solution_valid(Value::of_seq(c), Value::of_seq(mixed), d).failed());
        }
    }

    TEST_CASE("weak Koenig on a two-path tree")
    {
        auto w = catalog_problem("wkl2");
        Value t = Value::of_tree(two_paths_tree(BitString::from_text("0000000"), BitString::from_text("1111111")));
        CHECK(w->solution_valid(t, bits("0000000"), 7).ok());
        CHECK(w->solution_valid(t, bits("1111111"), 7).ok());
        CHECK(w->solution_valid(t, bits("0100000"), 7).failed());
        auto c = w->candidates(t, 7);
        REQUIRE(c);
        CHECK(c->size() == 2);
    }

    TEST_CASE("product")
    {
        auto p = product(catalog_problem("llpo"), catalog_problem("llpo"));
        Value z = repeat_after({}, 0, 12);
        Value x = Value::tuple({z, z});
        for (uint64_t i = 0; i < 2; ++i)
            for (uint64_t j = 0; j < 2; ++j) CHECK(p->solution_valid(x, Value::tuple({seq({i}), seq({j})}), 12).ok());

        Value bad = Value::tuple({z, repeat_after({1, 1}, 0, 12)});
        CHECK(p->instance_valid(bad, 12).failed());

        Value y = Value::tuple({z, repeat_after({0, 0, 0, 0, 0, 1}, 0, 12)});
        Verdict v = p->solution_valid(y, Value::tuple({seq({0}), seq({1})}), 12);
        CHECK(v.failed());
        CHECK(v.depth == catalog_problem("llpo")->solution_valid(y.parts[1], seq({1}), 12).depth);
    }

    TEST_CASE("finite parallelization")
    {
        auto w = catalog_problem("wkl2");
        auto par = finite_parallelization(w);
        Value t = Value::of_tree(two_paths_tree(BitString::from_text("000000"), BitString::from_text("111111")));
        CHECK(par->solution_valid(parallel_instance({t}), Value::tuple({bits("000000")}), 6).ok());
        CHECK(par->solution_valid(parallel_instance({t}), Value::tuple({bits("010000")}), 6).failed());

        Value two = parallel_instance({t, t});
        auto c = par->candidates(two, 6);
        REQUIRE(c);
        size_t valid = 0;
        for (const auto& y : *c) valid += par->solution_valid(two, y, 6).ok();
        CHECK(valid == 4);

        CHECK(par->solution_valid(parallel_instance({}), Value::tuple({}), 6).ok());
    }

    TEST_CASE("jump combinator")
    {
        auto llpo = catalog_problem("llpo");
        auto j = jump_combinator(llpo);
        Value x = repeat_after({0, 0, 0, 1}, 0, 16);
        Value inst = jump_instance("echo", "echo", x);
        CHECK(j->instance_valid(inst, 16).ok());
        for (uint64_t i = 0; i < 2; ++i)
            CHECK(j->solution_valid(inst, seq({i}), 16).kind == llpo->solution_valid(x, seq({i}), 16).kind);

        auto wj = jump_combinator(catalog_problem("wkl2"));
        Value t = Value::of_tree(two_paths_tree(BitString::from_text("0110"), BitString::from_text("1001")));
        Value ti = jump_instance("echo", "(take 1)", t);
        CHECK(wj->solution_valid(ti, seq({0}), 4).ok());
        CHECK(wj->solution_valid(ti, seq({1}), 4).ok());
        Value one = Value::of_tree(two_paths_tree(BitString::from_text("0110"), BitString::from_text("0111")));
        CHECK(wj->solution_valid(jump_instance("echo", "(take 1)", one), seq({1}), 4).failed());

        Value broken = jump_instance("echo", "echo", repeat_after({1, 1}, 0, 16));
        CHECK(j->instance_valid(broken, 16).failed());
    }

    TEST_CASE("generators produce valid instances")
    {
        for (const auto& name : catalog_names()) {
            auto p = catalog_problem(name);
            for (uint64_t seed = 0; seed < 1000; ++seed) {
                CAPTURE(name);
                CAPTURE(seed);
                CHECK(p->instance_valid(p->generate(seed, 32), 32).ok());
            }
        }
    }

    TEST_CASE("instance text round trip")
    {
        for (const auto& name : catalog_names()) {
            Value x = catalog_problem(name)->generate(5, 12);
            CAPTURE(name);
            CHECK(value_from_text(value_to_text(x)) == x);
        }
    }

    TEST_CASE("map codes")
    {
        Prefix p = make_prefix({5, 6, 7, 8});
        CHECK(apply_map(map_from_code("left"), p) == make_prefix({5, 7}));
        CHECK(apply_map(map_from_code("right"), p) == make_prefix({6, 8}));
        CHECK(apply_map(map_from_code("(take 3)"), p) == make_prefix({5, 6, 7}));
        CHECK(apply_map(map_from_code("(compose (take 3) right)"), p) == make_prefix({6}));
        CHECK(apply_map(map_from_code("(branch 0 (const 1) (const 2))"), make_prefix({0})) == make_prefix({1}));
        CHECK(apply_map(map_from_code("(pair left right)"), p) == p);
        CHECK_THROWS_AS(map_from_code("(take"), std::invalid_argument);
        CHECK_THROWS_AS(map_from_code("mirror"), std::invalid_argument);
        CHECK(code_from_prefix(code_to_prefix("(take 2)")) == std::optional<std::string>("(take 2)"));
    }
}
