#include <doctest.h>

#include "ww/core.hpp"

#include <algorithm>
#include <stdexcept>

using namespace ww;

TEST_SUITE("core")
{
    TEST_CASE("identity and scaling maps")
    {
        CHECK(apply_map(identity_map(), make_prefix({1, 2, 3})) == make_prefix({1, 2, 3}));
        CHECK(apply_map(scale_map(2), make_prefix({0, 2, 5})) == make_prefix({0, 4, 10}));
    }

    TEST_CASE("maps respect extension")
    {
        for (const auto& m : {identity_map(), scale_map(2), scale_map(7), empty_map()})
            CHECK(is_prefix_of(apply_map(m, make_prefix({1, 2})), apply_map(m, make_prefix({1, 2, 9, 9}))));
    }

    TEST_CASE("composition")
    {
        Prefix p = make_prefix({4, 0, 8});
        CHECK(apply_map(compose_maps(identity_map(), identity_map()), p) == p);
        CHECK(apply_map(compose_maps(scale_map(2), scale_map(2)), make_prefix({1})) == make_prefix({4}));
        CHECK(apply_map(compose_maps(scale_map(3), empty_map()), p).empty());
        CHECK(apply_map(compose_maps(empty_map(), scale_map(3)), p).empty());
    }

    TEST_CASE("monotonicity check")
    {
        std::vector<std::pair<Prefix, Prefix>> s{{make_prefix({0}), make_prefix({0, 1})}};
        CHECK(check_monotonicity(identity_map(), s).ok());
        CHECK(check_monotonicity(identity_map(), {}).ok());

        MonotoneMap rev{"reverse", [](const Prefix& p) {
                            Prefix q = p;
                            std::reverse(q.begin(), q.end());
                            return q;
                        }};
        Verdict v = check_monotonicity(rev, s);
        CHECK(v.failed());
        CHECK(v.depth == 2);
    }

    TEST_CASE("prefix helpers")
    {
        Prefix p{Entry(3), std::nullopt, Entry(1)};
        CHECK(defined_length(p) == 1);
        CHECK(truncate(p, 1) == make_prefix({3}));
        CHECK(truncate(p, 9) == p);
        CHECK(is_prefix_of(make_prefix({}), p));
        CHECK_FALSE(is_prefix_of(make_prefix({4}), p));
        CHECK(prefix_from_text(prefix_to_text(p)) == p);
        CHECK_THROWS_AS(prefix_from_text("[1,x"), std::invalid_argument);
    }

    TEST_CASE("first failure precedence")
    {
        Verdict f1 = Verdict::fail("a", 5), f2 = Verdict::fail("b", 3), ind = Verdict::indeterminate("c");
        CHECK(first_failure(f1, f2).reason == "b");
        CHECK(first_failure(ind, f1).reason == "a");
        CHECK(first_failure(Verdict::pass(), ind).kind == Verdict::Indeterminate);
        CHECK(first_failure(Verdict::pass(), Verdict::pass()).ok());
    }

    TEST_CASE("fuel bounds evaluation")
    {
        MonotoneMap m = identity_map();
        m.fuel = 3;
        auto [out, v] = apply_map_checked(m, make_prefix({1, 2, 3, 4, 5}));
        CHECK(out == make_prefix({1, 2, 3}));
        CHECK(v.kind == Verdict::Indeterminate);
    }
}
