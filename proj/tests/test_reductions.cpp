#include <doctest.h>

#include "ww/reductions.hpp"

#include <set>
#include <stdexcept>

using namespace ww;

namespace {

BitString B(const std::string& s)
{
    return BitString::from_text(s);
}

Value repeat_after(std::vector<uint64_t> head, uint64_t tail, size_t n)
{
    Prefix p;
    for (size_t i = 0; i < n; ++i) p.emplace_back(i < head.size() ? head[i] : tail);
    return Value::of_seq(p);
}

Prefix matrix(size_t n, const std::function<uint64_t(uint64_t, uint64_t)>& bit)
{
    Prefix p;
    for (size_t k = 0; k < n; ++k) {
        auto [r, c] = cantor_unpair(k);
        p.emplace_back(bit(r, c));
    }
    return p;
}

Prefix dml_matrices(size_t n, const std::function<uint64_t(int, uint64_t, uint64_t)>& bit)
{
    Prefix p;
    for (size_t k = 0; k < n; ++k) {
        auto [a, b] = cantor_unpair(k / 2);
        p.emplace_back(bit(static_cast<int>(k % 2), a, b));
    }
    return p;
}

std::string bits_text(const Prefix& p)
{
    std::string s;
    for (const auto& e : p) s += e ? std::to_string(*e) : "_";
    return s;
}

// LLPO into WKL_{<=2}: the two paths 0^w and 1^w until the first nonzero entry k, then only
// the side that the promise leaves open (k even kills 0, k odd kills 1).
Witness llpo_in_wkl2()
{
    Witness w;
    w.name = "llpo-wkl2";
    w.f = catalog_problem("llpo");
    w.g = catalog_problem("wkl2");
    w.inner = [](const Value& x) {
        LevelTree t = LevelTree::root();
        std::optional<int> keep;
        for (uint32_t j = 1; j <= x.seq.size() && j <= 40; ++j) {
            const Entry& e = x.seq[j - 1];
            if (!e) break;
            if (!keep && *e != 0) keep = (j - 1) % 2 == 0 ? 1 : 0;
            BitString zeros{j, 0}, ones{j, (uint64_t{1} << j) - 1};
            if (!keep) t.push(Level::of(j, {zeros, ones}));
            else if (*keep == 1) t.push(two_level(ones, ones));
            else t.push(two_level(zeros, zeros));
        }
        return Value::of_tree(t);
    };
    w.outer = [](const Value&, const Value& y) { return Value::of_seq(truncate(y.seq, 1)); };
    return w;
}

}  // namespace

TEST_SUITE("reductions")
{
    TEST_CASE("identity witness on llpo")
    {
        auto llpo = catalog_problem("llpo");
        Witness w = from_maps("id", llpo, llpo, identity_map(), map_from_code("right"));
        CHECK(verify_witness(w, {0, 1, 2, 3, 4, 5, 6, 7}, 24).verdict.ok());
    }

    TEST_CASE("constant outer is refuted at level two")
    {
        Witness w;
        w.name = "const";
        w.f = w.g = catalog_problem("wkl2");
        w.inner = [](const Value& x) { return x; };
        w.outer = [](const Value& x, const Value&) { return Value::of_seq(Prefix(x.tree.depth(), Entry(0))); };
        Value x = Value::of_tree(two_paths_tree(B("0111111"), B("1000000")));
        SeedReport r = verify_witness_on(w, x, 7);
        CHECK(r.verdict.failed());
        CHECK(r.clause == 'b');
        CHECK(r.stage == 2);
    }

    TEST_CASE("standard embedding of llpo")
    {
        CHECK(verify_witness(llpo_in_wkl2(), {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 24).verdict.ok());
    }

    TEST_CASE("dne to limn, forward")
    {
        Witness w = red_dne_limn().first;
        Value x = Value::of_seq(matrix(80, [](uint64_t, uint64_t) { return 1; }));
        Prefix s = w.inner(x).seq;
        REQUIRE_FALSE(s.empty());
        for (const auto& e : s) CHECK(e == Entry(0));

        Value y = Value::of_seq(matrix(120, [](uint64_t r, uint64_t c) { return r == 0 && c == 5 ? 0 : 1; }));
        Prefix t = w.inner(y).seq;
        REQUIRE(t.size() > 2);
        CHECK(t.front() == Entry(0));
        CHECK(t.back() == Entry(1));
        for (size_t i = 1; i < t.size(); ++i) CHECK(*t[i] >= *t[i - 1]);
        CHECK(catalog_problem("limn")->solution_valid(w.inner(y), Value::of_seq(make_prefix({1})), 120).ok());
    }

    TEST_CASE("dne to limn, backward")
    {
        Witness w = red_dne_limn().second;
        Value x = repeat_after({3, 1}, 4, 32);
        Value m = w.inner(x);
        auto dne = catalog_problem("dne");
        size_t d = m.seq.size();
        CHECK(dne->instance_valid(m, d).ok());
        CHECK(dne->solution_valid(m, Value::of_seq(make_prefix({0})), d).failed());
        CHECK(dne->solution_valid(m, Value::of_seq(make_prefix({1})), d).failed());
        CHECK(dne->solution_valid(m, Value::of_seq(make_prefix({2})), d).ok());
        CHECK(w.outer(x, Value::of_seq(make_prefix({2}))).seq == make_prefix({4}));
    }

    TEST_CASE("dml to rt12")
    {
        auto [fwd, back] = red_dml_rt12();
        auto dml = catalog_problem("dml");

        Value zero = repeat_after({}, 0, 40);
        Value m = fwd.inner(zero);
        CHECK(dml->solution_valid(m, Value::of_seq(make_prefix({1})), m.seq.size()).failed());
        CHECK(dml->solution_valid(m, Value::of_seq(make_prefix({0})), m.seq.size()).ok());
        CHECK(bits_text(fwd.outer(zero, Value::of_seq(make_prefix({0}))).seq) == std::string(40, '1'));

        Prefix alt;
        for (size_t n = 0; n < 12; ++n) alt.emplace_back(n % 2);
        CHECK(bits_text(fwd.outer(Value::of_seq(alt), Value::of_seq(make_prefix({1}))).seq) == "010101010101");

        Value x = Value::of_seq(dml_matrices(60, [](int j, uint64_t, uint64_t b) { return j == 0 && b == 0 ? 0 : 1; }));
        Prefix c = back.inner(x).seq;
        REQUIRE_FALSE(c.empty());
        for (const auto& e : c) CHECK(e == Entry(0));
        CHECK(back.outer(x, repeat_after({}, 1, 8)).seq == make_prefix({0}));
    }

    TEST_CASE("aou into clopen")
    {
        Witness w = red_aou_le_clop();
        Value full = Value::of_tree(full_tree(6));
        CHECK(w.inner(full).tree == full_tree(6));
        Value p = Value::of_seq(B("101100").to_prefix());
        CHECK(w.outer(full, p).seq == p.seq);

        LevelTree t = LevelTree::root();
        t.push(Level::full(1));
        t.push(Level::full(2));
        for (uint32_t k = 3; k <= 6; ++k) t.push(Level::of(k, {B("010").append(BitString{k - 3, 0})}));
        Value x = Value::of_tree(t);
        LevelTree star = w.inner(x).tree;
        CHECK(star.levels[3] == Level::of(3, {B("010")}));
        CHECK(star.levels[6] == Level::cone(B("010"), 6));
        CHECK(bits_text(w.outer(x, Value::of_seq(B("010111").to_prefix())).seq) == "010000");
        // off T*: read pointwise, full levels pass the bit through
        CHECK(bits_text(w.outer(x, Value::of_seq(B("111111").to_prefix())).seq) == "110000");

        Value single = Value::of_tree(path_tree(B("1"), 6));
        CHECK(w.outer(single, Value::of_seq(B("000000").to_prefix())).seq ==
              w.outer(single, Value::of_seq(B("011111").to_prefix())).seq);
        CHECK(bits_text(w.outer(single, Value::of_seq(B("000000").to_prefix())).seq) == "100000");
    }

    TEST_CASE("rational two-trees into clopen")
    {
        Witness w = red_two_le_clop();
        auto two = catalog_problem("wkl-eq2");

        Value root = Value::of_tree(two_paths_tree(B("000000"), B("111111")));
        CHECK(w.inner(root).tree == full_tree(6));
        for (const auto& s : {"000000", "111111"}) CHECK(w.outer(root, Value::of_seq(B(s).to_prefix())).seq == B(s).to_prefix());

        Value x = Value::of_tree(two_paths_tree(B("01000"), B("01100")));
        LevelTree star = w.inner(x).tree;
        auto paths = level_paths(star, 5);
        CHECK(paths.size() == 8);
        for (const auto& p : paths) {
            CHECK(B("01").is_prefix_of(p));
            CHECK(two->solution_valid(x, w.outer(x, Value::of_seq(p.to_prefix())), 5).ok());
        }
        CHECK(bits_text(w.outer(x, Value::of_seq(B("01010").to_prefix())).seq) == "01000");
    }

    TEST_CASE("clopen into limn")
    {
        Witness w = red_clop_le_limn();
        auto limn = catalog_problem("limn");
        auto clop = catalog_problem("wkl-clop");

        Value full = Value::of_tree(full_tree(6));
        Prefix s = w.inner(full).seq;
        for (const auto& e : s) CHECK(e == Entry(string_code(BitString{})));
        CHECK(bits_text(w.outer(full, Value::of_seq(make_prefix({string_code(BitString{})}))).seq) == "000000");

        LevelTree t = LevelTree::root();
        t.push(Level::full(1));
        t.push(Level::cone(B("1"), 2));
        for (uint32_t k = 3; k <= 20; ++k) t.push(Level::cone(B("10"), k));
        Value x = Value::of_tree(t);
        CHECK(clop->instance_valid(x, 20).ok());
        Prefix stream = w.inner(x).seq;
        REQUIRE(stream.size() == 21);
        Value y = Value::of_seq({stream.back()});
        CHECK(limn->solution_valid(w.inner(x), y, 20).ok());
        Value path = w.outer(x, y);
        CHECK(bits_text(path.seq) == "10" + std::string(18, '0'));
        CHECK(clop->solution_valid(x, path, 20).ok());

        // 1^w is the only path: not clopen, and the stem stream never settles
        LevelTree bad = LevelTree::root();
        for (uint32_t k = 1; k <= 32; ++k) bad.push(two_level(BitString{k, (uint64_t{1} << k) - 1}, BitString{k, (uint64_t{1} << k) - 1}));
        Value bx = Value::of_tree(bad);
        CHECK(limn->instance_valid(w.inner(bx), 32).failed());
        // the clopen promise is not refutable at a finite depth; the settle rule on the stream is
        CHECK(clop->instance_valid(bx, 32).ok());
        SeedReport r = verify_witness_on(w, bx, 32);
        CHECK(r.verdict.failed());
        CHECK(r.clause == 'a');
    }

    TEST_CASE("binary expansion and two-trees")
    {
        auto [fwd, back] = red_beq_wkl2();
        auto beq = catalog_problem("beq");

        std::vector<Rational> half(19, Rational(1, 2));
        LevelTree star = beq_backward_star(beq_backward_tree(half));
        std::set<std::string> paths;
        for (const auto& p : level_paths(star, 16)) paths.insert(p.text());
        CHECK(paths == std::set<std::string>{"0" + std::string(15, '1'), "1" + std::string(15, '0')});

        std::vector<Rational> third(17, Rational(1, 3));
        Value tx = Value::of_reals(third);
        Value tt = back.inner(tx);
        for (const auto& p : level_paths(tt.tree, 16)) {
            std::string out = bits_text(back.outer(tx, Value::of_seq(p.to_prefix())).seq);
            CHECK_FALSE(out.empty());
            CHECK(std::string("0101010101010101").rfind(out, 0) == 0);
        }

        LevelTree t = two_paths_tree(B("0111111111111111"), B("1000000000000000"));
        std::vector<Rational> name = beq_forward_name(t);
        REQUIRE(name.size() >= 16);
        for (size_t n = 0; n < name.size(); ++n) {
            Rational err = abs(name[n] - Rational(1, 2));
            CHECK(err <= pow2(-static_cast<int>(n)));
        }
        CHECK(beq->instance_valid(Value::of_reals(name), 16).ok());
    }

    TEST_CASE("linear intermediate values and clopen trees")
    {
        auto [fwd, back] = red_ivtlin_clop();
        LevelTree t = LevelTree::root();
        for (uint32_t k = 1; k <= 6; ++k) t.push(Level::cone(B("0"), k));
        auto stages = ivt_forward_stages(t);
        auto zeros = pl_zero_set(stages.back());
        REQUIRE(zeros.size() == 1);
        CHECK(zeros[0].first == Rational(1, 9));
        CHECK(zeros[0].second == Rational(2, 9));

        std::vector<Point> line{{Rational(0), Rational(-1)}, {Rational(1), Rational(1)}};
        Value lx = Value::of_pl(std::vector<std::vector<Point>>(16, line));
        CHECK(verify_witness_on(back, lx, 16).verdict.ok());

        std::vector<Point> flat{{Rational(0), Rational(-1)}, {Rational(1, 4), Rational(0)}, {Rational(3, 4), Rational(0)},
                                {Rational(1), Rational(1)}};
        Value fx = Value::of_pl(std::vector<std::vector<Point>>(16, flat));
        CHECK(verify_witness_on(back, fx, 16).verdict.ok());
    }

    TEST_CASE("every shipped direction on a few seeds")
    {
        std::vector<uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
        for (const auto& w : all_shipped_witnesses()) {
            CAPTURE(w.name);
            CHECK(verify_witness(w, seeds, 20).verdict.ok());
        }
    }

    TEST_CASE("a flipped outer output is caught")
    {
        for (const auto& name : {"dne-limn", "aou-clop", "clop-limn"}) {
            Witness w = shipped_witnesses(name).front();
            auto outer = w.outer;
            w.outer = [outer](const Value& x, const Value& y) {
                Value z = outer(x, y);
                if (!z.seq.empty() && z.seq[0]) z.seq[0] = *z.seq[0] == 0 ? 1 : 0;
                return z;
            };
            w.bind_outer = nullptr;
            CAPTURE(name);
            WitnessReport r = verify_witness(w, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 24);
            CHECK(r.verdict.failed());
            bool located = false;
            for (const auto& s : r.seeds) located |= s.verdict.failed() && s.clause == 'b' && s.stage > 0;
            CHECK(located);
        }
    }

    TEST_CASE("string codes")
    {
        for (const auto& s : {"", "0", "1", "0110", "111"}) CHECK(string_decode(string_code(B(s))) == B(s));
        CHECK_FALSE(string_decode(0));
    }
}
