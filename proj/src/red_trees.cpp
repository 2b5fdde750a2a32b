#include "ww/reductions.hpp"

#include <algorithm>

namespace ww {

namespace {

std::pair<BitString, BitString> two_nodes(const Level& l)
{
    auto ns = l.nodes(2);
    if (ns.size() == 1) return {ns[0], ns[0]};
    return {ns[0], ns[1]};
}

Prefix bits_prefix(const BitString& s)
{
    return s.to_prefix();
}

// Leading run of bits of y, stopping at the first non-bit entry.
BitString bits_of(const Prefix& y, size_t cap)
{
    BitString b;
    for (size_t i = 0; i < y.size() && i < cap && i < kMaxTreeDepth; ++i) {
        if (!y[i] || *y[i] > 1) break;
        b = b.child(static_cast<int>(*y[i]));
    }
    return b;
}

}  // namespace

// ---- WKL_aou <= WKL_clop ------------------------------------------------------------------

Witness red_aou_le_clop()
{
    Witness w;
    w.name = "aou-clop";
    w.f = catalog_problem("wkl-aou");
    w.g = catalog_problem("wkl-clop");
    // Full levels are copied; the first unique node sigma is copied; later levels are the cone.
    w.inner = [](const Value& x) {
        const auto& lv = x.tree.levels;
        LevelTree out = LevelTree::root();
        std::optional<BitString> sigma;
        for (uint32_t s = 1; s < lv.size(); ++s) {
            bool full = lv[s].size() == (uint64_t{1} << s);
            if (!sigma && full) {
                out.push(Level::full(s));
            } else if (!sigma) {
                auto ns = lv[s].nodes(1);
                if (ns.empty()) break;
                sigma = ns[0];
                out.push(Level::of(s, {*sigma}));
            } else {
                out.push(Level::cone(*sigma, s));
            }
        }
        return Value::of_tree(out);
    };
    // p*(n) = k(n, p(n)): p(n) on full levels, otherwise the unique node's bit.
    w.outer = [](const Value& x, const Value& y) {
        const auto& lv = x.tree.levels;
        Prefix out;
        for (size_t n = 0; n < y.seq.size() && n + 1 < lv.size(); ++n) {
            if (!y.seq[n] || *y.seq[n] > 1) break;
            uint32_t s = static_cast<uint32_t>(n + 1);
            if (lv[s].size() == (uint64_t{1} << s)) {
                out.push_back(y.seq[n]);
            } else {
                auto ns = lv[s].nodes(1);
                if (ns.empty()) break;
                out.emplace_back(ns[0].at(static_cast<uint32_t>(n)));
            }
        }
        return Value::of_seq(out);
    };
    return w;
}

// ---- WKL_=2 <= WKL_clop -------------------------------------------------------------------

Witness red_two_le_clop()
{
    Witness w;
    w.name = "two-clop";
    w.f = catalog_problem("wkl-eq2");
    w.g = catalog_problem("wkl-clop");
    // T* is the cone above the current last branching node.
    w.inner = [](const Value& x) {
        const auto& lv = x.tree.levels;
        LevelTree out = LevelTree::root();
        for (uint32_t s = 1; s < lv.size(); ++s) {
            if (lv[s].size() != 2) break;
            auto [l, r] = two_nodes(lv[s]);
            auto [pl, pr] = two_nodes(lv[s - 1]);
            bool continues = pl.is_prefix_of(l) && pr.is_prefix_of(r);
            if (continues) {
                Level next;
                next.k = s;
                for (const auto& run : out.levels.back().runs) next.add(run.lo << 1, (run.hi << 1) | 1u);
                out.push(next);
            } else {
                out.push(Level::of(s, {l, r}));
            }
        }
        return Value::of_tree(out);
    };
    // Follow p while it stays in T, then the unique continuation of the last node in T.
    w.outer = [](const Value& x, const Value& y) {
        const LevelTree& t = x.tree;
        BitString p = bits_of(y.seq, t.depth());
        BitString cur;
        Prefix out;
        uint32_t s = 0;
        while (s < p.len && t.contains(p.prefix(s + 1))) {
            cur = p.prefix(s + 1);
            ++s;
        }
        out = bits_prefix(cur);
        if (s == p.len) return Value::of_seq(out);
        for (size_t k = s + 1; k <= t.depth(); ++k) {
            BitString c0 = cur.child(0), c1 = cur.child(1);
            bool h0 = t.contains(c0), h1 = t.contains(c1);
            if (h0 == h1) break;
            cur = h0 ? c0 : c1;
            out.emplace_back(h0 ? 0 : 1);
        }
        return Value::of_seq(out);
    };
    return w;
}

// ---- BE_Q <-> WKL_=2 ------------------------------------------------------------------------

namespace {

// Fork state for the forward direction: alpha = 0.w1, whose two expansions w0111... and
// w1000... select the left and right node at each level.
struct ForkTrace {
    std::vector<BitString> w;  // w[s] after processing level s
};

ForkTrace fork_trace(const LevelTree& t)
{
    ForkTrace tr;
    BitString w;
    tr.w.push_back(w);
    for (uint32_t s = 1; s < t.levels.size(); ++s) {
        if (t.levels[s].size() != 2) break;
        if (s >= 2) {
            auto [l, r] = two_nodes(t.levels[s]);
            auto [pl, pr] = two_nodes(t.levels[s - 1]);
            if (!(pl.is_prefix_of(l) && pr.is_prefix_of(r))) {
                bool at_left = pl.is_prefix_of(l) && pl.is_prefix_of(r);
                uint32_t len = std::max<uint32_t>(w.len + 1, s - 1);
                if (len > kMaxTreeDepth) break;
                BitString nw = w.child(at_left ? 0 : 1);
                while (nw.len < len) nw = nw.child(at_left ? 1 : 0);
                w = nw;
            }
        }
        tr.w.push_back(w);
    }
    return tr;
}

Rational fork_value(const BitString& w)
{
    return dyadic_interval(w).first + pow2(-static_cast<int>(w.len) - 1);
}

}  // namespace

std::vector<Rational> beq_forward_name(const LevelTree& t)
{
    ForkTrace tr = fork_trace(t);
    std::vector<Rational> q;
    // q_n uses levels <= n + 1
    for (size_t n = 0; n + 1 < tr.w.size(); ++n) q.push_back(fork_value(tr.w[n + 1]));
    return q;
}

namespace {

Prefix beq_forward_outer(const LevelTree& t, const Prefix& e)
{
    ForkTrace tr = fork_trace(t);
    BitString eb = bits_of(e, kMaxTreeDepth);
    Prefix out;
    BitString prev;
    for (uint32_t s = 1; s < tr.w.size(); ++s) {
        const BitString& w = tr.w[s];
        if (eb.len <= w.len || !w.is_prefix_of(eb)) break;
        auto [l, r] = two_nodes(t.levels[s]);
        BitString pick = eb.at(w.len) == 0 ? l : r;
        if (!prev.is_prefix_of(pick)) break;
        out.emplace_back(pick.at(s - 1));
        prev = pick;
    }
    return out;
}

}  // namespace

LevelTree beq_backward_tree(const std::vector<Rational>& q)
{
    LevelTree t = LevelTree::root();
    std::vector<BitString> live{BitString{}};
    Rational lo(-1), hi(2);
    auto narrow = [&](size_t j) {
        Rational r = pow2(-static_cast<int>(j));
        lo = std::max(lo, Rational(q[j] - r));
        hi = std::min(hi, Rational(q[j] + r));
    };
    if (q.size() > 0) narrow(0);
    if (q.size() > 1) narrow(1);
    for (size_t k = 1; k + 2 < q.size() && k <= kMaxTreeDepth; ++k) {
        narrow(k + 2);
        std::vector<BitString> next;
        for (const auto& n : live)
            for (int b = 0; b < 2; ++b) {
                BitString c = n.child(b);
                auto [a, z] = dyadic_interval(c);
                if (!(z < lo || a > hi)) next.push_back(c);
            }
        if (next.empty() || next.size() > 2) break;
        live = next;
        if (next.size() == 1) {
            BitString sib{next[0].len, next[0].bits ^ 1u};
            t.push(Level::of(static_cast<uint32_t>(k), {next[0], sib}));
        } else {
            t.push(Level::of(static_cast<uint32_t>(k), next));
        }
    }
    return t;
}

namespace {

// Running intersections C_k of the constraints [q_j - 2^-j, q_j + 2^-j], j <= k + 2. A node of
// T is live when its closed interval meets C_k (the padded siblings are not live).
struct LiveCheck {
    LevelTree t;
    std::vector<Rational> lo, hi;

    explicit LiveCheck(const std::vector<Rational>& q) : t(beq_backward_tree(q))
    {
        Rational l(-1), h(2);
        for (size_t j = 0; j < q.size(); ++j) {
            Rational r = pow2(-static_cast<int>(j));
            l = std::max(l, Rational(q[j] - r));
            h = std::min(h, Rational(q[j] + r));
            lo.push_back(l);
            hi.push_back(h);
        }
    }
    bool operator()(const BitString& w) const
    {
        if (w.len > t.depth() || !t.contains(w) || lo.empty()) return false;
        size_t j = std::min<size_t>(w.len + 2, lo.size() - 1);
        auto [a, z] = dyadic_interval(w);
        return !(z < lo[j] || a > hi[j]);
    }
};

struct Seed {
    uint32_t sigma = 0, tau = 0;  // lengths; tau == 0 means no decomposition
    bool operator==(const Seed& o) const { return sigma == o.sigma && tau == o.tau; }
};

bool periodic_from(const BitString& b, uint32_t sigma, uint32_t tau)
{
    for (uint32_t i = sigma + tau; i < b.len; ++i)
        if (b.at(i) != b.at(i - tau)) return false;
    return true;
}

// Shortest sigma^tau with b = sigma tau^k (tau|j), k >= 1; ties go to the shorter sigma.
Seed shortest_seed(const BitString& b)
{
    for (uint32_t total = 1; total <= b.len; ++total)
        for (uint32_t sigma = 0; sigma < total; ++sigma)
            if (periodic_from(b, sigma, total - sigma)) return {sigma, total - sigma};
    return {};
}

BitString level_meet(const Level& l)
{
    auto ns = l.nodes(2);
    return ns.size() == 2 ? meet(ns[0], ns[1]) : ns[0];
}

BitString periodic_extension(const BitString& b, Seed sd, uint32_t len)
{
    BitString out = b.prefix(std::min(b.len, len));
    while (out.len < len) out = out.child(out.at(out.len - sd.tau));
    return out;
}

}  // namespace

LevelTree beq_backward_star(const LevelTree& t)
{
    LevelTree out = LevelTree::root();
    size_t D = t.depth();
    if (D == 0) return out;
    out.push(t.levels[1]);
    Seed prev_seed = shortest_seed(level_meet(t.levels[1]));
    for (size_t s = 1; s + 1 <= D; ++s) {
        BitString b = level_meet(t.levels[s + 1]);
        size_t horizon = 2 * static_cast<size_t>(b.len) + 1;
        if (horizon > D) break;
        BitString bt = level_meet(t.levels[horizon]);
        Seed sd = shortest_seed(b);
        bool copy = bt == b || !(sd == prev_seed);
        prev_seed = sd;
        if (copy) {
            out.push(t.levels[s + 1]);
            continue;
        }
        auto [l, r] = two_nodes(t.levels[s + 1]);
        BitString u = l.is_prefix_of(bt) ? l : r;
        auto [ls, rs] = two_nodes(out.levels[s]);
        BitString parent = u.prefix(static_cast<uint32_t>(s));
        BitString other = parent == ls ? rs : ls;
        out.push(Level::of(static_cast<uint32_t>(s + 1), {u, other.child(0)}));
    }
    return out;
}

namespace {

Prefix beq_backward_outer(const LiveCheck& live, const Prefix& y)
{
    const LevelTree& t = live.t;
    BitString p = bits_of(y, t.depth());
    BitString cur;
    while (cur.len < p.len && live(p.prefix(cur.len + 1))) cur = p.prefix(cur.len + 1);
    if (cur.len == p.len) return bits_prefix(cur);
    // p leaves the live part at level s = |cur| + 1
    size_t s = cur.len + 1;
    size_t horizon = 2 * s + 1;
    if (t.depth() < horizon) return bits_prefix(cur);
    auto survives = [&](Seed sd) {
        for (uint32_t k = cur.len + 1; k <= horizon; ++k)
            if (!live(periodic_extension(cur, sd, k))) return false;
        return true;
    };
    std::optional<Seed> chosen;
    for (uint32_t total = 1; total <= cur.len && !chosen; ++total)
        for (uint32_t sigma = 0; sigma < total && !chosen; ++sigma)
            if (periodic_from(cur, sigma, total - sigma) && survives({sigma, total - sigma}))
                chosen = Seed{sigma, total - sigma};
    BitString out = cur;
    while (out.len < t.depth()) {
        BitString next;
        if (chosen) {
            next = periodic_extension(cur, *chosen, out.len + 1);
        } else {
            // no surviving period: leftmost live continuation
            BitString c0 = out.child(0);
            next = live(c0) ? c0 : out.child(1);
        }
        if (!live(next)) break;
        out = next;
    }
    return bits_prefix(out);
}

}  // namespace

std::pair<Witness, Witness> red_beq_wkl2()
{
    ProblemPtr beq = catalog_problem("beq"), two = catalog_problem("wkl-eq2");
    Witness fwd;
    fwd.name = "beq-wkl2";
    fwd.f = two;
    fwd.g = beq;
    fwd.inner = [](const Value& x) { return Value::of_reals(beq_forward_name(x.tree)); };
    fwd.outer = [](const Value& x, const Value& y) { return Value::of_seq(beq_forward_outer(x.tree, y.seq)); };

    Witness back;
    back.name = "beq-wkl2/back";
    back.f = beq;
    back.g = two;
    back.inner = [](const Value& x) { return Value::of_tree(beq_backward_star(beq_backward_tree(x.reals))); };
    back.outer = [](const Value& x, const Value& y) { return Value::of_seq(beq_backward_outer(LiveCheck(x.reals), y.seq)); };
    back.bind_outer = [](const Value& x) -> std::function<Value(const Value&)> {
        auto live = std::make_shared<const LiveCheck>(x.reals);
        return [live](const Value& y) { return Value::of_seq(beq_backward_outer(*live, y.seq)); };
    };
    return {fwd, back};
}

}  // namespace ww
