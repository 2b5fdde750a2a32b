#include <doctest.h>

#include "ww/trees.hpp"

#include <set>
#include <stdexcept>

using namespace ww;

namespace {

BitString B(const std::string& s)
{
    return BitString::from_text(s);
}

LevelTree tree_of(const std::vector<std::vector<std::string>>& levels)
{
    LevelTree t = LevelTree::root();
    for (size_t k = 1; k < levels.size(); ++k) {
        std::vector<BitString> ns;
        for (const auto& s : levels[k]) ns.push_back(B(s));
        t.push(Level::of(static_cast<uint32_t>(k), ns));
    }
    return t;
}

std::set<std::string> texts(const std::vector<BitString>& v)
{
    std::set<std::string> out;
    for (const auto& b : v) out.insert(b.text());
    return out;
}

}  // namespace

TEST_SUITE("trees")
{
    TEST_CASE("class validation")
    {
        LevelTree full = tree_of({{""}, {"0", "1"}, {"00", "01", "10", "11"}});
        CHECK(validate_class(full, TreeClass::Aou, 2).ok());
        Verdict v = validate_class(full, TreeClass::Two, 2);
        CHECK(v.failed());
        CHECK(v.depth == 2);

        CHECK(validate_class(tree_of({{""}, {"0", "1"}, {"00", "01", "10"}}), TreeClass::Convex, 2).ok());
        CHECK(validate_class(tree_of({{""}, {"0", "1"}, {"00", "11"}}), TreeClass::Convex, 2).failed());
    }

    TEST_CASE("level paths")
    {
        CHECK(texts(level_paths(tree_of({{""}, {"0", "1"}, {"01", "10"}}), 2)) == std::set<std::string>{"01", "10"});
        CHECK(level_paths(full_tree(3), 3).size() == 8);
        CHECK(texts(level_paths(path_tree(B("0000"), 4), 4)) == std::set<std::string>{"0000"});
    }

    TEST_CASE("last branching node")
    {
        CHECK(last_branching(two_paths_tree(B("000000"), B("111111")), 6).len == 0);
        CHECK(last_branching(two_paths_tree(B("01000"), B("01100")), 5).text() == "01");
        CHECK(last_branching(two_paths_tree(B("01000"), B("01100")), 0).len == 0);
        CHECK_THROWS_AS(last_branching(full_tree(3), 3), std::invalid_argument);
    }

    TEST_CASE("generated trees")
    {
        for (uint64_t seed = 0; seed < 20; ++seed) {
            CHECK(validate_class(generate_tree(TreeClass::Two, seed, 8), TreeClass::Two, 8).ok());
            LevelTree a = generate_tree(TreeClass::Aou, seed, 10);
            for (size_t k = 1; k <= 10; ++k) {
                uint64_t n = a.levels[k].size();
                CHECK((n == 1 || n == (uint64_t{1} << k)));
            }
            CHECK(generate_tree(TreeClass::Convex, seed, 12) == generate_tree(TreeClass::Convex, seed, 12));
        }
    }

    TEST_CASE("every class generator passes its validator")
    {
        for (TreeClass c : {TreeClass::Two, TreeClass::RationalTwo, TreeClass::Aou, TreeClass::Convex, TreeClass::Clopen,
                            TreeClass::BasicClopen, TreeClass::Unrestricted})
            for (uint64_t seed = 0; seed < 25; ++seed) {
                CAPTURE(tree_class_name(c));
                CAPTURE(seed);
                CHECK(validate_class(generate_tree(c, seed, 24), c, 24).ok());
            }
    }

    TEST_CASE("file format round trip")
    {
        LevelTree t = two_paths_tree(B("0110"), B("1001"));
        std::string text = tree_to_text(t);
        CHECK(text.rfind("0: -\n", 0) == 0);
        CHECK(tree_from_text(text) == t);
        for (uint64_t seed = 0; seed < 10; ++seed) {
            LevelTree g = generate_tree(TreeClass::Convex, seed, 14);
            CHECK(tree_from_text(tree_to_text(g)) == g);
        }
        CHECK_THROWS_AS(tree_from_text("0: -\n1: 0,2\n"), std::invalid_argument);
    }

    TEST_CASE("two-paths tree with a dead-end sibling")
    {
        LevelTree t = two_paths_tree(B("000"), B("000"));
        CHECK(texts(t.levels[3].nodes()) == std::set<std::string>{"000", "001"});
        CHECK(validate_class(t, TreeClass::Two, 3).ok());
    }

    TEST_CASE("prefix closure fails validation")
    {
        LevelTree t = tree_of({{""}, {"0"}, {"10"}});
        CHECK(validate_class(t, TreeClass::Unrestricted, 2).failed());
    }
}
