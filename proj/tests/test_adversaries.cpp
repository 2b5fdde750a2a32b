#include <doctest.h>

#include "ww/adversaries.hpp"

#include <set>
#include <stdexcept>

using namespace ww;

namespace {

size_t count_events(const AdversaryRun& r, const std::string& action)
{
    size_t n = 0;
    for (const auto& e : r.log) n += e.action == action;
    return n;
}

const StageEvent* first_event(const AdversaryRun& r, const std::string& action)
{
    for (const auto& e : r.log)
        if (e.action == action) return &e;
    return nullptr;
}

SemiboundStrategy constant_family(std::vector<int> bits, uint64_t b)
{
    return {"family", [bits](size_t n) -> MonotoneMap {
                if (n >= bits.size()) return empty_map();
                int v = bits[n];
                return {"const", [v](const Prefix&) { return Prefix(64, Entry(v)); }};
            },
            [b](size_t) { return b; }};
}

void check_run(const AdversaryRun& r)
{
    CAPTURE(r.adversary);
    CAPTURE(r.strategy);
    CHECK(r.safety.ok());
    CHECK(r.victory());
    CHECK(r.actions <= r.ceiling);
    CHECK(validate_class(r.built.tree, r.tree_class, r.built.tree.depth()).ok());
}

}  // namespace

TEST_SUITE("adversaries")
{
    TEST_CASE("two-path echo meets a stem outside both declarations")
    {
        AdversaryRun r = run_adversary("aou-vs-two-star", "echo", 20);
        check_run(r);
        const StageEvent* e = first_event(r, "collapse");
        REQUIRE(e);
        CHECK(e->data.find("sigma=01 ") != std::string::npos);
        auto paths = level_paths(r.built.tree, 20);
        REQUIRE(paths.size() == 1);
        CHECK(paths[0].text() == "01" + std::string(18, '0'));
        CHECK(r.cert.kind == Certificate::Refutation);
    }

    TEST_CASE("a strategy that never declares keeps the tree full")
    {
        AdversaryRun r = run_adversary("aou-vs-two-star", "non-total", 20);
        check_run(r);
        CHECK(r.built.tree == full_tree(20));
        CHECK(r.cert.kind == Certificate::NonTotal);
    }

    TEST_CASE("queries that are not two-trees leave the tree full")
    {
        AdversaryRun r = run_adversary("aou-vs-two-star", "rule-violating", 20);
        check_run(r);
        CHECK(r.cert.kind == Certificate::IIViolation);
    }

    TEST_CASE("rational two-tree against aou queries")
    {
        AdversaryRun echo = run_adversary("two-vs-aou-game", "echo", 40);
        check_run(echo);
        AdversaryRun collapse = run_adversary("two-vs-aou-game", "collapse-s", 40);
        check_run(collapse);
        CHECK(count_events(collapse, "step5") <= 2);
        CHECK(count_events(collapse, "shift-right") + count_events(collapse, "shift-left") == 2);

        AdversaryRun zeros = run_adversary("two-vs-aou-game", "zeros", 40);
        check_run(zeros);
        const StageEvent* e = first_event(zeros, "shift-right");
        REQUIRE(e);
        CHECK(zeros.cert.kind == Certificate::Refutation);

        for (const auto& s : sabotage_corpus("two-vs-aou-game")) {
            AdversaryRun r = adv_two_vs_aou_game(s, 40);
            CAPTURE(s.name);
            CHECK(r.safety.ok());
            CHECK(validate_class(r.built.tree, TreeClass::RationalTwo, 40).ok());
            CHECK(r.actions <= r.ceiling);
        }
    }

    TEST_CASE("basic clopen against mixed queries")
    {
        AdversaryRun r = run_adversary("clop-vs-mixed", "concat", 20);
        check_run(r);
        const StageEvent* e = first_event(r, "stem");
        REQUIRE(e);
        auto at = e->data.find("sigma=");
        REQUIRE(at != std::string::npos);
        std::string sigma = e->data.substr(at + 6, e->data.find(' ', at) - at - 6);
        CHECK(sigma.size() == 3);

        AdversaryRun a = run_adversary("clop-vs-mixed", "a-collapse", 30);
        check_run(a);
        CHECK(count_events(a, "stem") == 2);

        AdversaryRun m = run_adversary("clop-vs-mixed", "rule-violating", 30);
        check_run(m);
        CHECK(validate_class(m.built.tree, TreeClass::BasicClopen, 30).ok());
    }

    TEST_CASE("two-trees against a semicontinuous bound")
    {
        AdversaryRun one = adv_two_vs_semibound(constant_family({0}, 1), 20);
        check_run(one);
        CHECK(count_events(one, "shift-right") + count_events(one, "shift-left") == 1);
        for (const auto& p : level_paths(one.built.tree, 20)) CHECK(p.bits != 0);

        AdversaryRun two = adv_two_vs_semibound(constant_family({0, 1}, 2), 20);
        check_run(two);
        CHECK(count_events(two, "shift-right") + count_events(two, "shift-left") == 2);
        CHECK(two.cert.kind == Certificate::Refutation);

        SemiboundStrategy divergent{"divergent", [](size_t) { return empty_map(); }, [](size_t s) { return uint64_t(s); }};
        AdversaryRun d = adv_two_vs_semibound(divergent, 40);
        CHECK(d.safety.ok());
        CHECK(d.actions == 0);
        CHECK(validate_class(d.built.tree, TreeClass::Two, 40).ok());
    }

    TEST_CASE("convex tree against the triple product")
    {
        AdversaryRun lim = run_adversary("conv-vs-triple", "one-limn", 40);
        check_run(lim);
        CHECK(count_events(lim, "stem") == 1);

        AdversaryRun wkl = run_adversary("conv-vs-triple", "one-wkl", 40);
        check_run(wkl);
        CHECK(count_events(wkl, "stem") >= 1);

        AdversaryRun merge = run_adversary("conv-vs-triple", "merging", 40);
        check_run(merge);
        CHECK(count_events(merge, "substitute") >= 1);
    }

    TEST_CASE("every corpus strategy is defeated")
    {
        for (const auto& a : adversary_names()) {
            auto corpus = adversary_corpus(a);
            CHECK(corpus.size() >= 10);
            for (const auto& s : corpus) check_run(run_adversary(a, s.name, 64));
        }
    }

    TEST_CASE("sabotage keeps the built instance valid")
    {
        for (const auto& a : adversary_names()) {
            auto sab = a == "two-vs-semibound" ? semibound_sabotage().size() : sabotage_corpus(a).size();
            CHECK(sab >= 20);
        }
        for (const auto& s : sabotage_corpus("aou-vs-two-star")) {
            AdversaryRun r = adv_aou_vs_two_star(s, 30);
            CAPTURE(s.name);
            CHECK(r.safety.ok());
            CHECK(validate_class(r.built.tree, TreeClass::Aou, 30).ok());
        }
    }

    TEST_CASE("the certificate replays to the recorded verdict")
    {
        AdversaryRun r = run_adversary("aou-vs-two-star", "two-trees-xor", 24);
        REQUIRE(r.replay);
        Transcript again = play_game(*r.f, *r.g, replay_player(r.built, r.cert.continuation, r.g),
                                     adversary_corpus("aou-vs-two-star")[5], r.max_rounds, r.replay->depth);
        CHECK(again.verdict == Outcome::IWins);
        CHECK(transcript_to_text(again) == transcript_to_text(*r.replay));
    }

    TEST_CASE("stages beyond the tree horizon are logged")
    {
        AdversaryRun r = run_adversary("aou-vs-two-star", "echo", 1000);
        CHECK(r.stages == kMaxTreeDepth);
        CHECK(count_events(r, "horizon") == 1);
        CHECK(run_to_text(r).find("stage 62: action=horizon") != std::string::npos);
    }

    TEST_CASE("bound extraction")
    {
        auto corpus = bound_corpus();
        auto by_name = [&](const std::string& n) {
            for (const auto& s : corpus)
                if (s.name == n) return s;
            FAIL("missing strategy " << n);
            return corpus.front();
        };
        Value x0 = bound_instance(4, 24);
        BoundStream now = bound_extract(x0, by_name("declare-now"), 30, 24);
        REQUIRE(now.values.size() == 1);
        CHECK(now.values[0] == truncate_value(x0, 24));
        CHECK(now.first_stage[0] == 1);

        Value sevens = Value::of_seq(Prefix(24, Entry(7)));
        BoundStream lim = bound_extract(sevens, by_name("one-limn-query"), 30, 24);
        REQUIRE(lim.values.size() == 1);
        CHECK(lim.values[0] == Value::of_seq(make_prefix({7})));

        BoundStream rt = bound_extract(x0, by_name("rt-branch"), 40, 24);
        CHECK(rt.values.size() <= 2);
        CHECK(rt.values.size() >= 1);

        for (size_t i = 1; i < rt.sizes.size(); ++i) CHECK(rt.sizes[i] >= rt.sizes[i - 1]);
    }

    TEST_CASE("unknown names")
    {
        CHECK_THROWS_AS(run_adversary("nope", "echo", 5), std::invalid_argument);
        CHECK_THROWS_AS(run_adversary("aou-vs-two-star", "nope", 5), std::invalid_argument);
    }
}
