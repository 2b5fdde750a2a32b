#include "ww/reductions.hpp"

#include <algorithm>
#include <optional>

namespace ww {

namespace {

Rational pow3(int e)  // 3^-e
{
    mpz_class d(1);
    for (int i = 0; i < e; ++i) d *= 3;
    return Rational(mpz_class(1), d);
}

// I_sigma = [0.s~1, 0.s~2] in ternary, s~ = sigma with 1 replaced by 2.
std::pair<Rational, Rational> ternary_interval(const BitString& s)
{
    Rational lo(0);
    for (uint32_t i = 0; i < s.len; ++i)
        if (s.at(i)) lo += 2 * pow3(static_cast<int>(i) + 1);
    Rational w = pow3(static_cast<int>(s.len) + 1);
    return {lo + w, lo + 2 * w};
}

BitString level_stem(const Level& l)
{
    return meet(BitString{l.k, l.runs.front().lo}, BitString{l.k, l.runs.back().hi});
}

}  // namespace

std::vector<std::vector<Point>> ivt_forward_stages(const LevelTree& t)
{
    std::vector<std::vector<Point>> st;
    for (const auto& l : t.levels) {
        if (l.empty()) break;
        auto [lo, hi] = ternary_interval(level_stem(l));
        st.push_back({{Rational(0), Rational(-1)}, {lo, Rational(0)}, {hi, Rational(0)}, {Rational(1), Rational(1)}});
    }
    return st;
}

namespace {

// Ternary decoding of a zero: bit k reads enough binary digits to resolve a third. Exact
// integer form: q = Q/2^d, c = C/3^(k+1).
Prefix ivt_forward_outer(const LevelTree& t, const Prefix& y)
{
    Prefix out;
    mpz_class Q(0), C(0), p3(1), p2(1);
    size_t read = 0;
    for (size_t k = 0; k < t.depth(); ++k) {
        p3 *= 3;
        size_t d = read;
        mpz_class need = p2;
        while (need < p3) {
            need *= 2;
            ++d;
        }
        if (y.size() < d) break;
        for (; read < d; ++read) {
            if (!y[read] || *y[read] > 1) return out;
            Q = 2 * Q + static_cast<unsigned long>(*y[read]);
        }
        p2 = need;
        C *= 3;
        int bit = (Q + 1) * p3 <= (C + 2) * p2 ? 0 : 1;
        if (bit) C += 2;
        out.emplace_back(bit);
    }
    return out;
}

struct Target {
    Rational lo, hi;
    bool point = false;
    Rational a;
};

// Nested targets I_t from the leftmost zero component of each stage.
std::vector<Target> ivt_targets(const std::vector<std::vector<Point>>& stages)
{
    std::vector<Target> out;
    Target cur{Rational(0), Rational(1), false, Rational(0)};
    for (size_t s = 0; s < stages.size(); ++s) {
        auto zs = pl_zero_set(stages[s]);
        Target next = cur;
        next.point = false;
        if (!zs.empty()) {
            auto [u, v] = zs.front();
            if (u < v) {
                Rational lo = std::max(u, cur.lo), hi = std::min(v, cur.hi);
                if (lo <= hi) next = {lo, hi, false, Rational(0)};
            } else if (u >= cur.lo && u <= cur.hi) {
                Rational rho = std::min(pow2(-static_cast<int>(s) - 2), Rational(std::min(u - cur.lo, cur.hi - u) / 2));
                next = {std::max(Rational(u - rho), cur.lo), std::min(Rational(u + rho), cur.hi), true, u};
            }
        }
        cur = next;
        out.push_back(cur);
    }
    return out;
}

bool dyadic_at(const Rational& a, uint32_t k)
{
    Rational s = a * pow2(static_cast<int>(k));
    return s.get_den() == 1;
}

// Level k of T* reads target 2k + 2.
size_t target_stage(size_t k)
{
    return 2 * k + 2;
}

struct StarTree {
    std::vector<Target> targets;
    // per level: node indices meeting the target, or containing a once frozen
    std::vector<std::optional<Interval>> allowed;
    LevelTree tree;
    size_t frozen_at = 0;  // 0: never
    Rational a;
};

// Indices of level-k nodes whose closed dyadic interval meets [lo, hi].
std::optional<Interval> meeting_range(uint32_t k, const Rational& lo, const Rational& hi)
{
    mpz_class scale(1);
    scale <<= k;
    mpz_class top = scale - 1;
    Rational l = lo * scale, h = hi * scale;
    mpz_class a, b;
    mpz_cdiv_q(a.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
    mpz_fdiv_q(b.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    a -= 1;
    if (a < 0) a = 0;
    if (b > top) b = top;
    if (a > b) return std::nullopt;
    return Interval{a.get_ui(), b.get_ui()};
}

// Indices of level-k nodes whose closed interval contains a point a that is dyadic at level k.
Interval containing_range(const Rational& a, uint32_t k)
{
    Rational m = a * pow2(static_cast<int>(k));
    uint64_t c = m.get_num().get_ui();
    return {c == 0 ? 0 : c - 1, std::min<uint64_t>(c, (uint64_t{1} << k) - 1)};
}

Level children(const Level& prev)
{
    Level out;
    out.k = prev.k + 1;
    for (const auto& r : prev.runs) out.add(2 * r.lo, 2 * r.hi + 1);
    return out;
}

Level clip(const Level& l, Interval iv)
{
    Level out;
    out.k = l.k;
    for (const auto& r : l.runs) {
        uint64_t a = std::max(r.lo, iv.lo), b = std::min(r.hi, iv.hi);
        if (a <= b) out.add(a, b);
    }
    return out;
}

size_t star_stage_limit(const std::vector<std::vector<Point>>& stages)
{
    return std::min(stages.size(), target_stage(kMaxTreeDepth) + 1);
}

StarTree ivt_star(const std::vector<std::vector<Point>>& stages)
{
    StarTree st;
    st.tree = LevelTree::root();
    size_t limit = star_stage_limit(stages);
    st.targets = ivt_targets({stages.begin(), stages.begin() + static_cast<std::ptrdiff_t>(limit)});
    const auto& targets = st.targets;
    for (uint32_t k = 1; k <= kMaxTreeDepth && target_stage(k) < targets.size(); ++k) {
        const Target& I = targets[target_stage(k)];
        Level kids = children(st.tree.levels.back());
        Level level = kids;
        if (!st.frozen_at)
            if (auto r = meeting_range(k, I.lo, I.hi)) {
                Level m = clip(kids, *r);
                if (!m.empty()) level = m;
            }
        st.tree.push(level);
        if (st.frozen_at) {
            st.allowed.push_back(containing_range(st.a, k));
            continue;
        }
        st.allowed.push_back(meeting_range(k, I.lo, I.hi));
        // A dyadic point target contained in every node: from here the tree is a cone.
        if (I.point && dyadic_at(I.a, k)) {
            Interval c = containing_range(I.a, k);
            if (level.runs.front().lo >= c.lo && level.runs.back().hi <= c.hi) {
                st.frozen_at = k;
                st.a = I.a;
            }
        }
    }
    return st;
}

Prefix ivt_backward_outer(const StarTree& st, const Prefix& y)
{
    auto allowed = [&](const BitString& w) {
        const auto& r = st.allowed[w.len - 1];
        return r && w.bits >= r->lo && w.bits <= r->hi;
    };
    Prefix out;
    BitString cur;
    bool following = true;
    for (uint32_t k = 1; k <= st.tree.depth(); ++k) {
        BitString next;
        if (following && k <= y.size() && y[k - 1] && *y[k - 1] <= 1) {
            next = cur.child(static_cast<int>(*y[k - 1]));
            if (!allowed(next)) following = false;
        } else if (following) {
            break;
        }
        if (!following) {
            if (!st.frozen_at || k <= st.frozen_at) break;
            next = allowed(cur.child(0)) ? cur.child(0) : cur.child(1);
        }
        cur = next;
        out.emplace_back(cur.at(k - 1));
    }
    return out;
}

}  // namespace

LevelTree ivt_backward_tree(const std::vector<std::vector<Point>>& stages)
{
    return ivt_star(stages).tree;
}

std::pair<Witness, Witness> red_ivtlin_clop()
{
    ProblemPtr ivt = catalog_problem("ivtlin");
    Witness fwd;
    fwd.name = "ivtlin-clop";
    fwd.f = catalog_problem("wkl-bclop");
    fwd.g = ivt;
    fwd.inner = [](const Value& x) { return Value::of_pl(ivt_forward_stages(x.tree)); };
    fwd.outer = [](const Value& x, const Value& y) { return Value::of_seq(ivt_forward_outer(x.tree, y.seq)); };

    Witness back;
    back.name = "ivtlin-clop/back";
    back.f = ivt;
    back.g = catalog_problem("wkl-clop");
    back.inner = [](const Value& x) { return Value::of_tree(ivt_backward_tree(x.pl)); };
    back.outer = [](const Value& x, const Value& y) { return Value::of_seq(ivt_backward_outer(ivt_star(x.pl), y.seq)); };
    back.bind_outer = [](const Value& x) -> std::function<Value(const Value&)> {
        auto st = std::make_shared<const StarTree>(ivt_star(x.pl));
        return [st](const Value& y) { return Value::of_seq(ivt_backward_outer(*st, y.seq)); };
    };
    return {fwd, back};
}

}  // namespace ww
