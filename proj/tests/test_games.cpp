#include <doctest.h>

#include "ww/games.hpp"

#include <set>
#include <stdexcept>

using namespace ww;

namespace {

Value seq(std::initializer_list<uint64_t> xs)
{
    return Value::of_seq(make_prefix(xs));
}

StrategyI fixed_player(Value x0, std::vector<Value> answers)
{
    return {"fixed", [x0, answers](size_t round, const std::vector<IIMove>&, size_t) -> std::optional<Value> {
                if (round == 0) return x0;
                if (round - 1 < answers.size()) return answers[round - 1];
                return std::nullopt;
            }};
}

StrategyII query_then_declare(Value q)
{
    return {"qd", [q](size_t round, const std::vector<Value>& xs) -> std::optional<IIMove> {
                if (round == 0) return IIMove{false, q};
                return IIMove{true, xs.back()};
            }};
}

std::set<std::string> texts(const std::vector<Value>& vs)
{
    std::set<std::string> out;
    for (const auto& v : vs) out.insert(value_to_text(v));
    return out;
}

}  // namespace

TEST_SUITE("games")
{
    TEST_CASE("echo wins llpo against llpo")
    {
        auto llpo = catalog_problem("llpo");
        for (uint64_t seed = 0; seed < 10; ++seed) {
            Transcript t = play_game(*llpo, *llpo, obeying_player(llpo, llpo, seed), named_code_strategy("echo"), 8, 16);
            CHECK(t.verdict == Outcome::IIWins);
            CHECK(t.rounds.size() == 4);
            CHECK_FALSE(check_rules(t));
        }
    }

    TEST_CASE("a query outside the problem loses")
    {
        auto two = catalog_problem("wkl-eq2");
        Value x0 = Value::of_tree(two_paths_tree(BitString{6, 0}, BitString{6, 63}));
        StrategyII s = query_then_declare(Value::of_tree(full_tree(6)));
        Transcript t = play_game(*two, *two, fixed_player(x0, {}), s, 4, 6);
        CHECK(t.verdict == Outcome::IWins);
        auto v = check_rules(t);
        REQUIRE(v);
        CHECK(v->first == Player::II);
        CHECK(v->second == 0);
    }

    TEST_CASE("a strategy that never declares is undecided")
    {
        auto llpo = catalog_problem("llpo");
        Transcript t = play_game(*llpo, *llpo, obeying_player(llpo, llpo, 3), named_code_strategy("never-declares"), 6, 16);
        CHECK(t.verdict == Outcome::Undecided);
        CHECK_FALSE(check_rules(t));
    }

    TEST_CASE("an off-tree answer by I loses")
    {
        auto w = catalog_problem("wkl2");
        LevelTree tree = two_paths_tree(BitString{5, 0}, BitString{5, 31});
        Value x0 = Value::of_tree(tree);
        Value off = Value::of_seq(BitString::from_text("01000").to_prefix());
        Transcript t = play_game(*w, *w, fixed_player(x0, {off}), query_then_declare(x0), 4, 5);
        CHECK(t.verdict == Outcome::IIWins);
        auto v = check_rules(t);
        REQUIRE(v);
        CHECK(v->first == Player::I);
        CHECK(v->second == 1);
    }

    TEST_CASE("stall and short declarations lose")
    {
        auto llpo = catalog_problem("llpo");
        Transcript stall = play_game(*llpo, *llpo, obeying_player(llpo, llpo, 1), named_code_strategy("silent"), 4, 16);
        CHECK(stall.verdict == Outcome::IWins);

        auto w = catalog_problem("wkl2");
        Value x0 = Value::of_tree(two_paths_tree(BitString{8, 0}, BitString{8, 255}));
        StrategyII shorty{"short", [](size_t, const std::vector<Value>&) -> std::optional<IIMove> {
                              return IIMove{true, seq({0})};
                          }};
        Transcript t = play_game(*w, *w, fixed_player(x0, {}), shorty, 4, 8);
        CHECK(t.verdict == Outcome::IWins);
        CHECK(declared_depth_needed(*w, x0, 8) == 8);
    }

    TEST_CASE("play is deterministic")
    {
        auto llpo = catalog_problem("llpo");
        for (const auto& name : code_strategy_names()) {
            auto a = transcript_to_text(play_game(*llpo, *llpo, obeying_player(llpo, llpo, 9), named_code_strategy(name), 6, 16));
            auto b = transcript_to_text(play_game(*llpo, *llpo, obeying_player(llpo, llpo, 9), named_code_strategy(name), 6, 16));
            CHECK(a == b);
        }
    }

    TEST_CASE("compositional product of llpo with itself")
    {
        auto llpo = catalog_problem("llpo");
        auto star = star_product(llpo, llpo);
        Value z = Value::of_seq(Prefix(12, Entry(0)));
        Value inst = star_instance(z, "echo", "left", "(pair (compose left right) right)");
        CHECK(star->instance_valid(inst, 12).ok());
        auto c = star->candidates(inst, 12);
        REQUIRE(c);
        std::set<std::string> sols;
        for (const auto& y : *c)
            if (star->solution_valid(inst, y, 12).ok()) sols.insert(value_to_text(y));
        CHECK(sols.size() == 4);

        Value bad = star_instance(z, "(const 1,1,0,0)", "left", "right");
        CHECK(star->instance_valid(bad, 12).failed());

        Value second = star_instance(z, "echo", "left", "right");
        auto d = star->candidates(second, 12);
        REQUIRE(d);
        std::set<std::string> vals;
        for (const auto& y : *d)
            if (star->solution_valid(second, y, 12).ok()) vals.insert(value_to_text(y));
        CHECK(vals == std::set<std::string>{value_to_text(seq({0})), value_to_text(seq({1}))});
    }

    TEST_CASE("closure of immediate declaration")
    {
        auto w = catalog_problem("wkl2");
        Value x0 = Value::of_seq(make_prefix({4, 1, 4, 2}));
        StrategyII now{"now", [](size_t, const std::vector<Value>& xs) -> std::optional<IIMove> {
                           return IIMove{true, xs[0]};
                       }};
        ClosureResult r = eval_game_closure(w, x0, now, 3, 3);
        CHECK(r.status.ok());
        REQUIRE(r.values.size() == 1);
        CHECK(r.values[0] == seq({4, 1, 4}));
    }

    TEST_CASE("closure of one tree query")
    {
        auto w = catalog_problem("wkl2");
        LevelTree tree = two_paths_tree(BitString::from_text("001100"), BitString::from_text("010011"));
        Value x0 = Value::of_tree(tree);
        ClosureResult r = eval_game_closure(w, x0, query_then_declare(x0), 3, 6);
        CHECK(r.status.ok());
        CHECK(texts(r.values) == std::set<std::string>{value_to_text(Value::of_seq(BitString::from_text("001100").to_prefix())),
                                                       value_to_text(Value::of_seq(BitString::from_text("010011").to_prefix()))});
    }

    TEST_CASE("closure reports rule violations and stalls")
    {
        auto two = catalog_problem("wkl-eq2");
        Value x0 = Value::of_tree(full_tree(4));
        CHECK(eval_game_closure(two, x0, query_then_declare(x0), 3, 4).status.failed());
        StrategyII silent{"silent", [](size_t, const std::vector<Value>&) -> std::optional<IIMove> { return std::nullopt; }};
        CHECK(eval_game_closure(two, x0, silent, 3, 4).status.kind == Verdict::Indeterminate);
    }

    TEST_CASE("strategy files")
    {
        StrategyII s = code_strategy_from_text("f", "# echo then right\nquery echo\ndeclare right\n");
        auto llpo = catalog_problem("llpo");
        Transcript t = play_game(*llpo, *llpo, obeying_player(llpo, llpo, 2), s, 6, 16);
        CHECK(t.verdict == Outcome::IIWins);
        CHECK_THROWS_AS(code_strategy_from_text("bad", "query (take\n"), std::invalid_argument);
        CHECK_THROWS_AS(code_strategy_from_text("bad", "ask echo\n"), std::invalid_argument);
        CHECK_THROWS_AS(named_code_strategy("nope"), std::invalid_argument);
    }

    TEST_CASE("transcript text layout")
    {
        auto llpo = catalog_problem("llpo");
        std::string text =
            transcript_to_text(play_game(*llpo, *llpo, obeying_player(llpo, llpo, 0), named_code_strategy("echo"), 8, 16));
        CHECK(text.find("game f=llpo g=llpo") == 0);
        CHECK(text.find("round 0 I move=") != std::string::npos);
        CHECK(text.find("verdict: II-wins") != std::string::npos);
        CHECK(text.find("declared: ") != std::string::npos);
    }
}
