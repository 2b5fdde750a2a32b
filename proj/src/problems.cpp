#include "ww/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace ww {

namespace {

std::mt19937_64 seeded(uint64_t seed, uint64_t salt)
{
    return std::mt19937_64(mix64(seed ^ mix64(salt)));
}

bool bit_entry(const Entry& e, int& out)
{
    if (!e || *e > 1) return false;
    out = static_cast<int>(*e);
    return true;
}

Verdict need_kind(const Value& v, Value::Kind k, const char* what)
{
    if (v.kind != k)
        return Verdict::fail(std::string(what) + " must be a " + value_kind_name(k) + " value", 0);
    return Verdict::pass();
}

// The settle rule for discrete-limit streams: at depth d >= kSettleMinDepth the entries in
// [d/2, d) must agree. Returns the start of the final constant run or nullopt if unsettled.
std::optional<size_t> settled_run_start(const Prefix& x, size_t d)
{
    if (d == 0) return std::nullopt;
    size_t r = d - 1;
    while (r > 0 && x[r - 1] == x[r]) --r;
    if (!x[d - 1]) return std::nullopt;
    if (d >= kSettleMinDepth && r > d / 2) return std::nullopt;
    return r;
}

std::vector<BitString> sample_level(const Level& l, size_t budget)
{
    if (l.size() <= budget) return l.nodes();
    std::vector<BitString> out;
    uint64_t total = l.size();
    for (const auto& r : l.runs) {
        uint64_t span = r.hi - r.lo + 1;
        size_t share = std::max<size_t>(2, static_cast<size_t>((static_cast<long double>(span) / total) * budget));
        for (uint64_t v : sample_range(r.lo, r.hi, share)) out.push_back({l.k, v});
    }
    return out;
}

// ---- LLPO / LPO ---------------------------------------------------------------------------

ProblemPtr make_llpo()
{
    auto p = std::make_shared<Problem>();
    p->name = "llpo";
    p->instance_valid = [](const Value& x, size_t depth) {
        if (auto v = need_kind(x, Value::Seq, "instance"); !v.ok()) return v;
        size_t d = std::min(depth, x.seq.size());
        int seen = 0;
        for (size_t n = 0; n < d; ++n)
            if (x.seq[n] && *x.seq[n] != 0 && ++seen == 2)
                return Verdict::fail("more than one nonzero entry", n + 1);
        return Verdict::pass();
    };
    p->solution_valid = [](const Value& x, const Value& y, size_t depth) {
        if (y.kind != Value::Seq || y.seq.empty() || !y.seq[0] || *y.seq[0] > 1)
            return Verdict::fail("solution must be [0] or [1]", 0);
        uint64_t i = *y.seq[0];
        size_t d = std::min(depth, x.seq.size());
        for (size_t n = 0; n < d; ++n)
            if (x.seq[n] && *x.seq[n] != 0 && n % 2 == i)
                return Verdict::fail("nonzero entry on the chosen side", n + 1);
        return Verdict::pass();
    };
    p->generate = [](uint64_t seed, size_t depth) {
        auto rng = seeded(seed, 1);
        Prefix x(depth, Entry(0));
        if (depth > 0 && rng() % 3 != 0) x[rng() % depth] = 1 + rng() % 9;
        return Value::of_seq(x);
    };
    p->candidates = [](const Value&, size_t) {
        return std::optional<std::vector<Value>>(
            std::vector<Value>{Value::of_seq(make_prefix({0})), Value::of_seq(make_prefix({1}))});
    };
    return p;
}

ProblemPtr make_lpo()
{
    auto p = std::make_shared<Problem>();
    p->name = "lpo";
    p->instance_valid = [](const Value& x, size_t) { return need_kind(x, Value::Seq, "instance"); };
    p->solution_valid = [](const Value& x, const Value& y, size_t depth) {
        if (y.kind != Value::Seq || y.seq.empty() || !y.seq[0] || *y.seq[0] > 1)
            return Verdict::fail("solution must be [0] or [1,pos]", 0);
        size_t d = std::min(depth, x.seq.size());
        if (*y.seq[0] == 0) {
            for (size_t n = 0; n < d; ++n)
                if (x.seq[n] && *x.seq[n] != 0) return Verdict::fail("nonzero entry exists", n + 1);
            return Verdict::pass();
        }
        if (y.seq.size() < 2 || !y.seq[1]) return Verdict::fail("answer 1 needs a witness position", 0);
        uint64_t pos = *y.seq[1];
        if (pos < d && x.seq[pos] && *x.seq[pos] == 0)
            return Verdict::fail("witness position holds zero", static_cast<size_t>(pos) + 1);
        return Verdict::pass();
    };
    p->generate = [](uint64_t seed, size_t depth) {
        auto rng = seeded(seed, 2);
        Prefix x(depth, Entry(0));
        if (depth > 0 && rng() % 2 == 0) x[rng() % depth] = 1 + rng() % 9;
        return Value::of_seq(x);
    };
    p->candidates = [](const Value& x, size_t depth) {
        std::vector<Value> out{Value::of_seq(make_prefix({0}))};
        size_t d = std::min(depth, x.seq.size());
        for (size_t n = 0; n < d; ++n)
            if (x.seq[n] && *x.seq[n] != 0) {
                out.push_back(Value::of_seq(make_prefix({1, n})));
                break;
            }
        return std::optional<std::vector<Value>>(out);
    };
    return p;
}

// ---- Lim_N ----------------------------------------------------------------------------------

ProblemPtr make_limn()
{
    auto p = std::make_shared<Problem>();
    p->name = "limn";
    p->instance_valid = [](const Value& x, size_t depth) {
        if (auto v = need_kind(x, Value::Seq, "instance"); !v.ok()) return v;
        size_t d = std::min(depth, x.seq.size());
        if (d >= kSettleMinDepth && !settled_run_start(x.seq, d))
            return Verdict::fail("stream not settled by half the observed depth", d);
        return Verdict::pass();
    };
    p->solution_valid = [](const Value& x, const Value& y, size_t depth) {
        if (y.kind != Value::Seq || y.seq.empty() || !y.seq[0])
            return Verdict::fail("solution must be [v]", 0);
        size_t d = std::min(depth, x.seq.size());
        if (d < kSettleMinDepth) return Verdict::pass();
        auto r = settled_run_start(x.seq, d);
        if (!r) return Verdict::pass();
        if (*x.seq[d - 1] == *y.seq[0]) return Verdict::pass();
        return Verdict::fail("stream settled on a different value", std::max(kSettleMinDepth, 2 * *r));
    };
    p->generate = [](uint64_t seed, size_t depth) {
        auto rng = seeded(seed, 3);
        Prefix x;
        uint64_t v = rng() % 4;
        size_t changes = rng() % 4;
        std::vector<size_t> at;
        for (size_t i = 0; i < changes; ++i) at.push_back(1 + rng() % 3);
        std::sort(at.begin(), at.end());
        size_t ci = 0;
        for (size_t n = 0; n < depth; ++n) {
            while (ci < at.size() && at[ci] == n) {
                v = (v + 1 + rng() % 3) % 4;
                ++ci;
            }
            x.emplace_back(v);
        }
        return Value::of_seq(x);
    };
    p->candidates = [](const Value& x, size_t depth) {
        std::vector<Value> out;
        std::set<uint64_t> seen;
        size_t d = std::min(depth, x.seq.size());
        for (size_t n = 0; n < d; ++n)
            if (x.seq[n] && seen.insert(*x.seq[n]).second) out.push_back(Value::of_seq({x.seq[n]}));
        return std::optional<std::vector<Value>>(out);
    };
    return p;
}

// ---- RT^1_2 ---------------------------------------------------------------------------------

ProblemPtr make_rt12()
{
    auto p = std::make_shared<Problem>();
    p->name = "rt12";
    p->instance_valid = [](const Value& x, size_t depth) {
        if (auto v = need_kind(x, Value::Seq, "instance"); !v.ok()) return v;
        size_t d = std::min(depth, x.seq.size());
        for (size_t n = 0; n < d; ++n)
            if (x.seq[n] && *x.seq[n] > 1) return Verdict::fail("coloring entry is not a color", n + 1);
        return Verdict::pass();
    };
    p->solution_valid = [](const Value& x, const Value& y, size_t depth) {
        if (y.kind != Value::Seq) return Verdict::fail("solution must be a sequence", 0);
        size_t d = std::min({depth, x.seq.size(), y.seq.size()});
        std::optional<uint64_t> color;
        size_t count = 0;
        for (size_t n = 0; n < d; ++n) {
            int h = 0;
            if (!bit_entry(y.seq[n], h)) return Verdict::fail("selector entry is not a bit", n + 1);
            if (h == 1) {
                ++count;
                if (x.seq[n]) {
                    if (!color) color = *x.seq[n];
                    else if (*color != *x.seq[n]) return Verdict::fail("selected set is not homogeneous", n + 1);
                }
            }
            if (count < (n + 1) / 4) return Verdict::fail("homogeneous set too sparse", n + 1);
        }
        return Verdict::pass();
    };
    p->generate = [](uint64_t seed, size_t depth) {
        auto rng = seeded(seed, 4);
        Prefix x;
        size_t period = 2 + rng() % 2;
        std::vector<uint64_t> pat(period);
        // at least one of each color in every period
        for (size_t i = 0; i < period; ++i) pat[i] = i % 2;
        std::shuffle(pat.begin(), pat.end(), rng);
        bool eventually_constant = rng() % 2 == 0;
        uint64_t tail = rng() % 2;
        size_t cut = depth / 4 == 0 ? 0 : rng() % (depth / 4 + 1);
        for (size_t n = 0; n < depth; ++n)
            x.emplace_back(eventually_constant && n >= cut ? tail : pat[n % period]);
        return Value::of_seq(x);
    };
    p->candidates = [](const Value& x, size_t depth) {
        size_t d = std::min(depth, x.seq.size());
        std::vector<Value> out;
        for (uint64_t c = 0; c < 2; ++c) {
            Prefix h;
            for (size_t n = 0; n < d; ++n) h.emplace_back(x.seq[n] && *x.seq[n] == c ? 1 : 0);
            out.push_back(Value::of_seq(h));
        }
        return std::optional<std::vector<Value>>(out);
    };
    return p;
}

// ---- K_N ------------------------------------------------------------------------------------

ProblemPtr make_kn()
{
    auto p = std::make_shared<Problem>();
    p->name = "kn";
    p->instance_valid = [](const Value& x, size_t depth) {
        if (auto v = need_kind(x, Value::Seq, "instance"); !v.ok()) return v;
        size_t d = std::min(depth, x.seq.size());
        if (d == 0) return Verdict::pass();
        if (!x.seq[0] || *x.seq[0] == 0) return Verdict::fail("bound b must be positive", 1);
        uint64_t b = *x.seq[0];
        if (b > kCandidateBudget) return Verdict::pass();
        std::vector<bool> hit(b, false);
        uint64_t left = b;
        for (size_t i = 1; i < d; ++i) {
            if (x.seq[i] && *x.seq[i] < b && !hit[*x.seq[i]]) {
                hit[*x.seq[i]] = true;
                if (--left == 0) return Verdict::fail("every n < b is excluded", i + 1);
            }
        }
        return Verdict::pass();
    };
    p->solution_valid = [](const Value& x, const Value& y, size_t depth) {
        if (y.kind != Value::Seq || y.seq.empty() || !y.seq[0]) return Verdict::fail("solution must be [n]", 0);
        size_t d = std::min(depth, x.seq.size());
        if (d == 0) return Verdict::pass();
        uint64_t n = *y.seq[0];
        if (x.seq[0] && n >= *x.seq[0]) return Verdict::fail("n is not below b", 1);
        for (size_t i = 1; i < d; ++i)
            if (x.seq[i] && *x.seq[i] == n) return Verdict::fail("n is excluded", i + 1);
        return Verdict::pass();
    };
    p->generate = [](uint64_t seed, size_t depth) {
        auto rng = seeded(seed, 5);
        uint64_t b = 1 + rng() % 6;
        uint64_t missing = rng() % b;
        Prefix x{Entry(b)};
        for (size_t i = 1; i < depth; ++i) {
            uint64_t a = rng() % b;
            if (a == missing) a = b + rng() % 3;  // values >= b exclude nothing
            x.emplace_back(a);
        }
        return Value::of_seq(x);
    };
    p->candidates = [](const Value& x, size_t) -> std::optional<std::vector<Value>> {
        if (x.seq.empty() || !x.seq[0]) return std::vector<Value>{};
        uint64_t b = *x.seq[0];
        if (b > kCandidateBudget) return std::nullopt;
        std::vector<Value> out;
        for (uint64_t n = 0; n < b; ++n) out.push_back(Value::of_seq(make_prefix({n})));
        return out;
    };
    return p;
}

// ---- Sigma-0-2 DNE and DML ------------------------------------------------------------------

ProblemPtr make_dne()
{
    auto p = std::make_shared<Problem>();
    p->name = "dne";
    p->instance_valid = [](const Value& x, size_t depth) {
        if (auto v = need_kind(x, Value::Seq, "instance"); !v.ok()) return v;
        size_t d = std::min(depth, x.seq.size());
        for (size_t k = 0; k < d; ++k)
            if (x.seq[k] && *x.seq[k] > 1) return Verdict::fail("matrix entry is not a bit", k + 1);
        return Verdict::pass();
    };
    p->solution_valid = [](const Value& x, const Value& y, size_t depth) {
        if (y.kind != Value::Seq || y.seq.empty() || !y.seq[0]) return Verdict::fail("solution must be [n]", 0);
        uint64_t n = *y.seq[0];
        size_t d = std::min(depth, x.seq.size());
        for (uint64_t m = 0;; ++m) {
            uint64_t k = cantor_pair(n, m);
            if (k >= d) break;
            if (x.seq[k] && *x.seq[k] == 0) return Verdict::fail("row has a zero", static_cast<size_t>(k) + 1);
        }
        return Verdict::pass();
    };
    p->generate = [](uint64_t seed, size_t depth) {
        auto rng = seeded(seed, 6);
        uint64_t star = rng() % 4;
        std::map<uint64_t, uint64_t> zero_at;
        Prefix x;
        for (size_t k = 0; k < depth; ++k) {
            auto [n, m] = cantor_unpair(k);
            uint64_t bit = 1;
            if (n < star) {
                if (!zero_at.count(n)) zero_at[n] = rng() % 2;
                bit = m == zero_at[n] ? 0 : 1;
            } else if (n > star) {
                if (!zero_at.count(n)) zero_at[n] = rng() % 4 == 0 ? UINT64_MAX : rng() % 3;
                bit = m == zero_at[n] ? 0 : 1;
            }
            x.emplace_back(bit);
        }
        return Value::of_seq(x);
    };
    p->candidates = [](const Value& x, size_t depth) {
        size_t d = std::min(depth, x.seq.size());
        std::map<uint64_t, bool> rows;  // row -> clean so far
        for (size_t k = 0; k < d; ++k) {
            auto [n, m] = cantor_unpair(k);
            (void)m;
            bool zero = x.seq[k] && *x.seq[k] == 0;
            auto it = rows.find(n);
            if (it == rows.end()) rows[n] = !zero;
            else if (zero) it->second = false;
        }
        std::vector<Value> out;
        for (const auto& [n, clean] : rows)
            if (clean) out.push_back(Value::of_seq(make_prefix({n})));
        return std::optional<std::vector<Value>>(out);
    };
    return p;
}

// First depth at which matrix j shows a row with kRowWindow leading ones, or 0.
size_t dml_refutation_depth(const Prefix& x, int j, size_t d)
{
    size_t best = 0;
    for (uint64_t a = 0;; ++a) {
        if (2 * cantor_pair(a, 0) + static_cast<uint64_t>(j) >= d) break;
        size_t at = 0;
        bool ones = true;
        for (uint64_t b = 0; b < kRowWindow; ++b) {
            uint64_t k = 2 * cantor_pair(a, b) + static_cast<uint64_t>(j);
            if (k >= d || !x[k] || *x[k] != 1) {
                ones = false;
                break;
            }
            at = std::max<size_t>(at, static_cast<size_t>(k) + 1);
        }
        if (ones && (best == 0 || at < best)) best = at;
    }
    return best;
}

ProblemPtr make_dml()
{
    auto p = std::make_shared<Problem>();
    p->name = "dml";
    p->instance_valid = [](const Value& x, size_t depth) {
        if (auto v = need_kind(x, Value::Seq, "instance"); !v.ok()) return v;
        size_t d = std::min(depth, x.seq.size());
        for (size_t k = 0; k < d; ++k)
            if (x.seq[k] && *x.seq[k] > 1) return Verdict::fail("matrix entry is not a bit", k + 1);
        size_t a = dml_refutation_depth(x.seq, 0, d), b = dml_refutation_depth(x.seq, 1, d);
        if (a && b) return Verdict::fail("both existentials witnessed", std::max(a, b));
        return Verdict::pass();
    };
    p->solution_valid = [](const Value& x, const Value& y, size_t depth) {
        if (y.kind != Value::Seq || y.seq.empty() || !y.seq[0] || *y.seq[0] > 1)
            return Verdict::fail("solution must be [0] or [1]", 0);
        size_t d = std::min(depth, x.seq.size());
        size_t at = dml_refutation_depth(x.seq, static_cast<int>(*y.seq[0]), d);
        if (at) return Verdict::fail("a row of the chosen matrix shows the window of ones", at);
        return Verdict::pass();
    };
    p->generate = [](uint64_t seed, size_t depth) {
        auto rng = seeded(seed, 7);
        int good = static_cast<int>(rng() % 2);
        bool other_all_rows = rng() % 3 == 0;
        uint64_t a0 = rng() % 3;
        std::map<std::pair<int, uint64_t>, uint64_t> zero_at;
        Prefix x;
        for (size_t k = 0; k < depth; ++k) {
            int j = static_cast<int>(k % 2);
            auto [a, b] = cantor_unpair(k / 2);
            bool has_zero = j == good || other_all_rows || a < a0;
            uint64_t bit = 1;
            if (has_zero) {
                auto key = std::make_pair(j, a);
                if (!zero_at.count(key)) zero_at[key] = rng() % kRowWindow;
                bit = b == zero_at[key] ? 0 : 1;
            }
            x.emplace_back(bit);
        }
        return Value::of_seq(x);
    };
    p->candidates = [](const Value&, size_t) {
        return std::optional<std::vector<Value>>(
            std::vector<Value>{Value::of_seq(make_prefix({0})), Value::of_seq(make_prefix({1}))});
    };
    return p;
}

// ---- WKL variants ---------------------------------------------------------------------------

ProblemPtr make_wkl(const std::string& name, TreeClass c)
{
    auto p = std::make_shared<Problem>();
    p->name = name;
    p->instance_valid = [c](const Value& x, size_t depth) {
        if (auto v = need_kind(x, Value::Tree, "instance"); !v.ok()) return v;
        if (x.tree.levels.empty()) return Verdict::fail("empty tree", 0);
        return validate_class(x.tree, c, std::min(depth, x.tree.depth()));
    };
    p->solution_valid = [](const Value& x, const Value& y, size_t depth) {
        if (y.kind != Value::Seq) return Verdict::fail("solution must be a bit sequence", 0);
        size_t d = std::min({depth, x.tree.depth(), y.seq.size(), kMaxTreeDepth});
        BitString cur;
        for (size_t k = 1; k <= d; ++k) {
            int b = 0;
            if (!bit_entry(y.seq[k - 1], b)) return Verdict::fail("path entry is not a bit", k);
            cur = cur.child(b);
            if (!x.tree.contains(cur)) return Verdict::fail("path leaves the tree", k);
        }
        return Verdict::pass();
    };
    p->generate = [c](uint64_t seed, size_t depth) { return Value::of_tree(generate_tree(c, seed, depth)); };
    p->candidates = [](const Value& x, size_t depth) {
        size_t d = std::min(depth, x.tree.depth());
        std::vector<Value> out;
        if (d < x.tree.levels.size())
            for (const auto& n : sample_level(x.tree.levels[d], kCandidateBudget))
                out.push_back(Value::of_seq(n.to_prefix()));
        return std::optional<std::vector<Value>>(out);
    };
    return p;
}

// ---- BE_Q ----------------------------------------------------------------------------------

ProblemPtr make_beq()
{
    auto p = std::make_shared<Problem>();
    p->name = "beq";
    p->instance_valid = [](const Value& x, size_t depth) {
        if (auto v = need_kind(x, Value::Reals, "instance"); !v.ok()) return v;
        size_t d = std::min(depth, x.reals.size());
        // |q_n - q_m| < 2^-n for all n < m: q_m lies in the open intersection (lo, hi)
        Rational lo, hi;
        for (size_t m = 0; m < d; ++m) {
            const Rational& q = x.reals[m];
            Rational r = pow2(-static_cast<int>(m));
            if (q < -r || q > 1 + r) return Verdict::fail("approximation outside [0,1]", m + 1);
            if (m > 0 && (q <= lo || q >= hi)) return Verdict::fail("not a regular Cauchy name", m + 1);
            Rational l = q - r, h = q + r;
            if (m == 0 || l > lo) lo = l;
            if (m == 0 || h < hi) hi = h;
        }
        return Verdict::pass();
    };
    p->solution_valid = [](const Value& x, const Value& y, size_t depth) {
        if (y.kind != Value::Seq) return Verdict::fail("solution must be binary digits", 0);
        size_t d = std::min(depth, x.reals.size());
        Rational lo(0);
        for (size_t k = 0; k < d; ++k) {
            if (k > y.seq.size()) break;
            if (k > 0) {
                int b = 0;
                if (!bit_entry(y.seq[k - 1], b)) return Verdict::fail("digit is not a bit", k);
                if (b) lo += pow2(-static_cast<int>(k));
            }
            Rational w = pow2(-static_cast<int>(k));
            Rational hi = lo + w;
            if (hi < x.reals[k] - w || lo > x.reals[k] + w)
                return Verdict::fail("digits leave the named real", k + 1);
        }
        return Verdict::pass();
    };
    p->generate = [](uint64_t seed, size_t depth) {
        auto rng = seeded(seed, 8);
        int64_t den = 1 + static_cast<int64_t>(rng() % 12);
        int64_t num = static_cast<int64_t>(rng() % static_cast<uint64_t>(den + 1));
        Rational alpha(num, den);
        alpha.canonicalize();
        std::vector<Rational> q;
        for (size_t n = 0; n < depth; ++n) {
            int64_t k = static_cast<int64_t>(rng() % 7) - 3;
            q.push_back(alpha + Rational(k) * pow2(-static_cast<int>(n) - 4));
        }
        return Value::of_reals(q);
    };
    p->candidates = [](const Value& x, size_t depth) {
        size_t d = std::min(depth, x.reals.size());
        std::vector<Value> out;
        if (d == 0) return std::optional<std::vector<Value>>(out);
        for (const auto& n : be_live_nodes(x.reals, d - 1)) out.push_back(Value::of_seq(n.to_prefix()));
        return std::optional<std::vector<Value>>(out);
    };
    return p;
}

// ---- IVT_lin --------------------------------------------------------------------------------

// Squared distance from point c to segment [a, b].
Rational seg_dist2(const Point& a, const Point& b, const Point& c)
{
    Rational dx = b.x - a.x, dy = b.y - a.y;
    Rational len2 = dx * dx + dy * dy;
    Rational t(0);
    if (len2 != 0) {
        t = ((c.x - a.x) * dx + (c.y - a.y) * dy) / len2;
        if (t < 0) t = 0;
        if (t > 1) t = 1;
    }
    Rational px = a.x + t * dx - c.x, py = a.y + t * dy - c.y;
    return px * px + py * py;
}

Verdict pl_stage_ok(const std::vector<Point>& pts, size_t s)
{
    if (pts.size() < 2) return Verdict::fail("stage needs at least two points", s + 1);
    if (pts.front().x != 0 || pts.back().x != 1) return Verdict::fail("stage must span [0,1]", s + 1);
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].x <= pts[i - 1].x) return Verdict::fail("stage abscissae not increasing", s + 1);
    if (!(pts.front().y < 0 && pts.back().y > 0)) return Verdict::fail("stage violates f(0) < 0 < f(1)", s + 1);
    return Verdict::pass();
}

// floor(z 2^k) for z in [0, 1], advanced one binary digit per call to next().
struct DyadicFloor {
    mpz_class r, den;
    uint64_t floor = 0;

    explicit DyadicFloor(const Rational& z) : r(z.get_num()), den(z.get_den())
    {
        if (r >= den) {
            floor = 1;
            r = 0;
        }
    }
    void next()
    {
        r <<= 1;
        floor <<= 1;
        if (r >= den) {
            r -= den;
            ++floor;
        }
    }
    uint64_t ceil() const { return floor + (r != 0 ? 1 : 0); }
};

ProblemPtr make_ivtlin()
{
    auto p = std::make_shared<Problem>();
    p->name = "ivtlin";
    p->instance_valid = [](const Value& x, size_t depth) {
        if (auto v = need_kind(x, Value::PL, "instance"); !v.ok()) return v;
        size_t d = std::min(depth, x.pl.size());
        for (size_t s = 0; s < d; ++s) {
            if (auto v = pl_stage_ok(x.pl[s], s); !v.ok()) return v;
            if (s == 0) continue;
            Rational r = pow2(-static_cast<int>(s));
            Rational r2 = r * r;
            const auto& prev = x.pl[s - 1];
            for (const auto& c : x.pl[s]) {
                bool near = false;
                for (size_t i = 1; i < prev.size() && !near; ++i) near = seg_dist2(prev[i - 1], prev[i], c) <= r2;
                if (!near) return Verdict::fail("stage point outside the neighborhood of the previous graph", s + 1);
            }
        }
        if (d >= kSettleMinDepth) {
            for (size_t s = d / 2; s + 1 < d; ++s)
                if (x.pl[s] != x.pl[s + 1]) return Verdict::fail("approximation not settled by half the observed depth", d);
        }
        return Verdict::pass();
    };
    p->solution_valid = [](const Value& x, const Value& y, size_t depth) {
        if (y.kind != Value::Seq) return Verdict::fail("solution must be binary digits", 0);
        if (!pl_stabilized(x.pl)) return Verdict::indeterminate("approximation not yet settled");
        const auto& f = x.pl.back();
        Rational L = pl_lipschitz(f);
        size_t d = std::min(depth, y.seq.size());
        auto zs = pl_zero_set(f);
        std::vector<DyadicFloor> lo, hi;
        for (const auto& [a, b] : zs) {
            lo.emplace_back(a);
            hi.emplace_back(b);
        }
        bool fast = d <= kMaxTreeDepth;
        uint64_t m = 0;
        Rational q(0), step(1), bound = 1 + L;
        for (size_t k = 1; k <= d; ++k) {
            int b = 0;
            if (!bit_entry(y.seq[k - 1], b)) return Verdict::fail("digit is not a bit", k);
            mpq_div_2exp(step.get_mpq_t(), step.get_mpq_t(), 1);
            mpq_div_2exp(bound.get_mpq_t(), bound.get_mpq_t(), 1);
            if (b) q += step;
            m = 2 * m + static_cast<uint64_t>(b);
            // within 2^-k of a zero (q = m 2^-k), |f(q)| <= L 2^-k already
            bool near = false;
            for (size_t i = 0; i < zs.size(); ++i) {
                lo[i].next();
                hi[i].next();
                near = near || (fast && m + 1 >= lo[i].ceil() && m <= hi[i].floor + 1);
            }
            if (!near && abs(pl_eval(f, q)) > bound) return Verdict::fail("digits approach a non-zero of f", k);
        }
        return Verdict::pass();
    };
    p->generate = [](uint64_t seed, size_t depth) {
        auto rng = seeded(seed, 9);
        int64_t den = 4 + static_cast<int64_t>(rng() % 9);
        int64_t num = den / 4 + static_cast<int64_t>(rng() % static_cast<uint64_t>(den / 2 + 1));
        Rational c(num, den);
        c.canonicalize();
        bool flat = rng() % 2 == 0;
        size_t settle = depth < 4 ? 0 : 1 + rng() % (depth / 2);
        Rational lo_y(-1 - static_cast<int64_t>(rng() % 3)), hi_y(1 + static_cast<int64_t>(rng() % 3));
        std::vector<std::vector<Point>> st;
        for (size_t s = 0; s < depth; ++s) {
            std::vector<Point> pts{{Rational(0), lo_y}};
            if (s < settle) {
                Rational r = pow2(-3 - static_cast<int>(s));
                pts.push_back({c - r, Rational(0)});
                pts.push_back({c + r, Rational(0)});
            } else if (flat) {
                Rational r = pow2(-4 - static_cast<int>(settle));
                pts.push_back({c - r, Rational(0)});
                pts.push_back({c + r, Rational(0)});
            } else {
                pts.push_back({c, Rational(0)});
            }
            pts.push_back({Rational(1), hi_y});
            st.push_back(std::move(pts));
        }
        return Value::of_pl(st);
    };
    p->candidates = [](const Value& x, size_t depth) -> std::optional<std::vector<Value>> {
        if (!pl_stabilized(x.pl)) return std::nullopt;
        size_t L = std::min<size_t>(std::min(depth, x.pl.size()), kMaxTreeDepth);
        std::vector<Value> out;
        Rational scale = pow2(static_cast<int>(L));
        for (const auto& [lo, hi] : pl_zero_set(x.pl.back())) {
            // nodes w with closed J_w meeting [lo, hi]
            mpz_class a = mpz_class(lo * scale);  // floor for non-negative values
            Rational hs = hi * scale;
            mpz_class b = hs.get_num() / hs.get_den();
            uint64_t top = (1ull << L) - 1;
            uint64_t ia = a.get_ui(), ib = std::min<uint64_t>(b.get_ui(), top);
            if (ia > 0 && Rational(mpz_class(ia)) == lo * scale) --ia;
            for (uint64_t v : sample_range(ia, ib, kCandidateBudget / 4))
                out.push_back(Value::of_seq(BitString{static_cast<uint32_t>(L), v}.to_prefix()));
        }
        return out;
    };
    return p;
}

}  // namespace

uint64_t cantor_pair(uint64_t n, uint64_t m)
{
    return (n + m) * (n + m + 1) / 2 + m;
}

std::pair<uint64_t, uint64_t> cantor_unpair(uint64_t k)
{
    uint64_t w = static_cast<uint64_t>((std::sqrt(8.0L * static_cast<long double>(k) + 1) - 1) / 2);
    while (w * (w + 1) / 2 > k) --w;
    while ((w + 1) * (w + 2) / 2 <= k) ++w;
    uint64_t m = k - w * (w + 1) / 2;
    return {w - m, m};
}

Entry dne_entry(const Prefix& x, uint64_t row, uint64_t col)
{
    uint64_t k = cantor_pair(row, col);
    return k < x.size() ? x[k] : std::nullopt;
}

Entry dml_entry(const Prefix& x, int matrix, uint64_t row, uint64_t col)
{
    uint64_t k = 2 * cantor_pair(row, col) + static_cast<uint64_t>(matrix);
    return k < x.size() ? x[k] : std::nullopt;
}

std::pair<Rational, Rational> dyadic_interval(const BitString& w)
{
    mpz_class den(1), num(static_cast<unsigned long>(w.bits));
    den <<= w.len;
    Rational lo(num, den), hi(num + 1, den);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

std::vector<BitString> be_live_nodes(const std::vector<Rational>& q, size_t L, size_t cap)
{
    std::vector<BitString> cur{BitString{}};
    L = std::min(L, kMaxTreeDepth);
    for (size_t k = 1; k <= L && k < q.size(); ++k) {
        std::vector<BitString> next;
        Rational w = pow2(-static_cast<int>(k));
        for (const auto& n : cur)
            for (int b = 0; b < 2; ++b) {
                BitString c = n.child(b);
                auto [lo, hi] = dyadic_interval(c);
                if (!(hi < q[k] - w || lo > q[k] + w)) next.push_back(c);
            }
        if (next.size() > cap) next.resize(cap);
        cur = std::move(next);
    }
    return cur;
}

bool pl_stabilized(const std::vector<std::vector<Point>>& stages)
{
    size_t n = stages.size();
    if (n < 2) return false;
    for (size_t s = n / 2; s + 1 < n; ++s)
        if (stages[s] != stages[s + 1]) return false;
    return stages[n - 2] == stages[n - 1];
}

std::vector<std::pair<Rational, Rational>> pl_zero_set(const std::vector<Point>& pts)
{
    std::vector<std::pair<Rational, Rational>> out;
    auto add = [&](const Rational& a, const Rational& b) {
        if (!out.empty() && out.back().second >= a) {
            if (b > out.back().second) out.back().second = b;
        } else {
            out.push_back({a, b});
        }
    };
    for (size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].y == 0) add(pts[i].x, pts[i].x);
        if (i + 1 < pts.size()) {
            const Point& a = pts[i];
            const Point& b = pts[i + 1];
            if (a.y == 0 && b.y == 0) {
                add(a.x, b.x);
            } else if ((a.y < 0 && b.y > 0) || (a.y > 0 && b.y < 0)) {
                Rational z = a.x - a.y * (b.x - a.x) / (b.y - a.y);
                add(z, z);
            }
        }
    }
    return out;
}

Rational pl_lipschitz(const std::vector<Point>& pts)
{
    Rational L(0);
    for (size_t i = 1; i < pts.size(); ++i) {
        Rational s = abs((pts[i].y - pts[i - 1].y) / (pts[i].x - pts[i - 1].x));
        if (s > L) L = s;
    }
    return L;
}

std::vector<uint64_t> sample_range(uint64_t lo, uint64_t hi, size_t budget)
{
    std::vector<uint64_t> out;
    if (hi < lo) return out;
    unsigned __int128 span = static_cast<unsigned __int128>(hi - lo) + 1;
    if (budget < 2) budget = 2;
    if (span <= budget) {
        for (uint64_t v = lo;; ++v) {
            out.push_back(v);
            if (v == hi) break;
        }
        return out;
    }
    for (size_t i = 0; i < budget; ++i) {
        unsigned __int128 off = (span - 1) * i / (budget - 1);
        uint64_t v = lo + static_cast<uint64_t>(off);
        if (out.empty() || out.back() != v) out.push_back(v);
    }
    return out;
}

// ---- combinators ----------------------------------------------------------------------------

namespace {

std::optional<std::vector<Value>> cartesian(const std::vector<std::vector<Value>>& sets)
{
    std::vector<Value> out{Value::tuple({})};
    for (const auto& s : sets) {
        std::vector<Value> next;
        for (const auto& partial : out)
            for (const auto& v : s) {
                if (next.size() >= kCandidateBudget) return next;
                Value t = partial;
                t.parts.push_back(v);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

ProblemPtr product(ProblemPtr a, ProblemPtr b)
{
    auto p = std::make_shared<Problem>();
    p->name = "(" + a->name + "x" + b->name + ")";
    p->instance_valid = [a, b](const Value& x, size_t depth) {
        if (x.kind != Value::Tuple || x.parts.size() != 2) return Verdict::fail("instance must be a pair", 0);
        return first_failure(a->instance_valid(x.parts[0], depth), b->instance_valid(x.parts[1], depth));
    };
    p->solution_valid = [a, b](const Value& x, const Value& y, size_t depth) {
        if (y.kind != Value::Tuple || y.parts.size() != 2) return Verdict::fail("solution must be a pair", 0);
        return first_failure(a->solution_valid(x.parts[0], y.parts[0], depth),
                             b->solution_valid(x.parts[1], y.parts[1], depth));
    };
    p->generate = [a, b](uint64_t seed, size_t depth) {
        return Value::tuple({a->generate(seed, depth), b->generate(mix64(seed), depth)});
    };
    p->candidates = [a, b](const Value& x, size_t depth) -> std::optional<std::vector<Value>> {
        if (x.kind != Value::Tuple || x.parts.size() != 2) return std::vector<Value>{};
        auto ca = a->candidates(x.parts[0], depth);
        auto cb = b->candidates(x.parts[1], depth);
        if (!ca || !cb) return std::nullopt;
        return cartesian({*ca, *cb});
    };
    return p;
}

Value parallel_instance(const std::vector<Value>& xs)
{
    std::vector<Value> parts{Value::of_seq(make_prefix({xs.size()}))};
    parts.insert(parts.end(), xs.begin(), xs.end());
    return Value::tuple(parts);
}

ProblemPtr finite_parallelization(ProblemPtr a)
{
    auto p = std::make_shared<Problem>();
    p->name = a->name + "*";
    auto shape = [](const Value& x) -> std::optional<size_t> {
        if (x.kind != Value::Tuple || x.parts.empty() || x.parts[0].kind != Value::Seq ||
            x.parts[0].seq.size() != 1 || !x.parts[0].seq[0])
            return std::nullopt;
        size_t n = static_cast<size_t>(*x.parts[0].seq[0]);
        if (x.parts.size() != n + 1) return std::nullopt;
        return n;
    };
    p->instance_valid = [a, shape](const Value& x, size_t depth) {
        auto n = shape(x);
        if (!n) return Verdict::fail("instance must be (n, x_1..x_n)", 0);
        Verdict v = Verdict::pass();
        for (size_t i = 1; i <= *n; ++i) v = first_failure(v, a->instance_valid(x.parts[i], depth));
        return v;
    };
    p->solution_valid = [a, shape](const Value& x, const Value& y, size_t depth) {
        auto n = shape(x);
        if (!n) return Verdict::fail("instance must be (n, x_1..x_n)", 0);
        if (y.kind != Value::Tuple || y.parts.size() != *n) return Verdict::fail("solution must be an n-tuple", 0);
        Verdict v = Verdict::pass();
        for (size_t i = 0; i < *n; ++i) v = first_failure(v, a->solution_valid(x.parts[i + 1], y.parts[i], depth));
        return v;
    };
    p->generate = [a](uint64_t seed, size_t depth) {
        size_t n = 1 + mix64(seed) % 3;
        std::vector<Value> xs;
        for (size_t i = 0; i < n; ++i) xs.push_back(a->generate(mix64(seed + 31 * (i + 1)), depth));
        return parallel_instance(xs);
    };
    p->candidates = [a, shape](const Value& x, size_t depth) -> std::optional<std::vector<Value>> {
        auto n = shape(x);
        if (!n) return std::vector<Value>{};
        std::vector<std::vector<Value>> sets;
        for (size_t i = 1; i <= *n; ++i) {
            auto c = a->candidates(x.parts[i], depth);
            if (!c) return std::nullopt;
            sets.push_back(*c);
        }
        return cartesian(sets);
    };
    return p;
}

// ---- map codes ------------------------------------------------------------------------------

namespace {

struct CodeParser {
    std::string s;
    size_t at = 0;

    void skip()
    {
        while (at < s.size() && (s[at] == ' ' || s[at] == '\t' || s[at] == '\n' || s[at] == '\r')) ++at;
    }
    std::string atom()
    {
        skip();
        size_t b = at;
        while (at < s.size() && s[at] != ' ' && s[at] != '(' && s[at] != ')' && s[at] != '\n' && s[at] != '\t') ++at;
        if (b == at) throw std::invalid_argument("map code: expected atom");
        return s.substr(b, at - b);
    }
    MonotoneMap parse()
    {
        skip();
        if (at >= s.size()) throw std::invalid_argument("map code: unexpected end");
        if (s[at] != '(') {
            std::string a = atom();
            if (a == "echo") return identity_map();
            // components of an interleaved pair <x0, y0, x1, y1, ...>
            if (a == "left" || a == "right") {
                size_t off = a == "left" ? 0 : 1;
                return {a, [off](const Prefix& p) {
                            Prefix out;
                            for (size_t i = off; i < p.size(); i += 2) {
                                if (!p[i]) break;
                                out.push_back(p[i]);
                            }
                            return out;
                        }};
            }
            throw std::invalid_argument("map code: unknown atom " + a);
        }
        ++at;
        std::string op = atom();
        MonotoneMap m;
        if (op == "const") {
            Prefix c = prefix_from_text(atom());
            m = {"(const " + prefix_to_text(c) + ")", [c](const Prefix&) { return c; }};
        } else if (op == "take") {
            size_t n = std::stoull(atom());
            m = {"(take " + std::to_string(n) + ")", [n](const Prefix& p) { return truncate(p, n); }};
        } else if (op == "compose") {
            MonotoneMap a = parse(), b = parse();
            m = compose_maps(a, b);
            m.name = "(compose " + a.name + " " + b.name + ")";
        } else if (op == "pair") {
            MonotoneMap a = parse(), b = parse();
            m = {"(pair " + a.name + " " + b.name + ")", [a, b](const Prefix& p) {
                     Prefix l = apply_map(a, p), r = apply_map(b, p), out;
                     // interleave while both sides are defined, so that the output stays monotone
                     for (size_t i = 0; i < l.size() && i < r.size() && l[i] && r[i]; ++i) {
                         out.push_back(l[i]);
                         out.push_back(r[i]);
                     }
                     return out;
                 }};
        } else if (op == "branch") {
            size_t i = std::stoull(atom());
            MonotoneMap a = parse(), b = parse();
            m = {"(branch " + std::to_string(i) + " " + a.name + " " + b.name + ")",
                 [i, a, b](const Prefix& p) {
                     if (p.size() <= i || !p[i]) return Prefix{};
                     return *p[i] == 0 ? apply_map(a, p) : apply_map(b, p);
                 }};
        } else {
            throw std::invalid_argument("map code: unknown operator " + op);
        }
        skip();
        if (at >= s.size() || s[at] != ')') throw std::invalid_argument("map code: expected ')'");
        ++at;
        return m;
    }
};

}  // namespace

MonotoneMap map_from_code(const std::string& code)
{
    CodeParser p{code};
    MonotoneMap m;
    try {
        m = p.parse();
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("map code: ") + e.what());
    }
    p.skip();
    if (p.at != p.s.size()) throw std::invalid_argument("map code: trailing input");
    return m;
}

Prefix code_to_prefix(const std::string& code)
{
    Prefix p;
    for (unsigned char c : code) p.emplace_back(static_cast<uint64_t>(c));
    return p;
}

std::optional<std::string> code_from_prefix(const Prefix& p)
{
    std::string s;
    for (const Entry& e : p) {
        if (!e || *e > 127) return std::nullopt;
        s += static_cast<char>(*e);
    }
    return s;
}

Value jump_instance(const std::string& h_code, const std::string& k_code, const Value& x)
{
    return Value::tuple({Value::of_seq(code_to_prefix(h_code)), Value::of_seq(code_to_prefix(k_code)), x});
}

ProblemPtr jump_combinator(ProblemPtr d)
{
    auto p = std::make_shared<Problem>();
    p->name = "j(" + d->name + ")";
    struct Parsed {
        MonotoneMap h, k;
        Value hx;
    };
    // The inner code acts on sequence instances; non-sequence instances accept only echo.
    auto parse = [](const Value& inst) -> std::optional<Parsed> {
        if (inst.kind != Value::Tuple || inst.parts.size() != 3 || inst.parts[0].kind != Value::Seq ||
            inst.parts[1].kind != Value::Seq)
            return std::nullopt;
        auto hc = code_from_prefix(inst.parts[0].seq);
        auto kc = code_from_prefix(inst.parts[1].seq);
        if (!hc || !kc) return std::nullopt;
        Parsed r;
        try {
            r.h = map_from_code(*hc);
            r.k = map_from_code(*kc);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
        const Value& x = inst.parts[2];
        if (x.kind == Value::Seq) r.hx = Value::of_seq(apply_map(r.h, x.seq));
        else if (r.h.name == "identity") r.hx = x;
        else return std::nullopt;
        return r;
    };
    auto image = [d, parse](const Value& inst, size_t depth) -> std::optional<std::vector<Prefix>> {
        auto r = parse(inst);
        if (!r) return std::vector<Prefix>{};
        auto ys = d->candidates(r->hx, depth);
        if (!ys) return std::nullopt;
        std::vector<Prefix> out;
        std::set<Prefix> seen;
        for (const auto& y : *ys) {
            if (y.kind != Value::Seq) return std::nullopt;
            if (d->solution_valid(r->hx, y, depth).failed()) continue;
            Prefix z = apply_map(r->k, y.seq);
            if (seen.insert(z).second) out.push_back(z);
        }
        return out;
    };
    p->instance_valid = [d, parse](const Value& inst, size_t depth) {
        auto r = parse(inst);
        if (!r) return Verdict::fail("instance must be (h-code, k-code, x) with applicable codes", 0);
        return d->instance_valid(r->hx, depth);
    };
    p->solution_valid = [image](const Value& inst, const Value& z, size_t depth) {
        if (z.kind != Value::Seq) return Verdict::fail("solution must be a sequence", 0);
        auto img = image(inst, depth);
        if (!img) return Verdict::indeterminate("inner solutions not enumerable");
        size_t worst = 0;
        for (const auto& w : *img) {
            size_t L = std::min(z.seq.size(), w.size());
            size_t i = 0;
            while (i < L && z.seq[i] == w[i]) ++i;
            if (i == L) return Verdict::pass();
            worst = std::max(worst, i + 1);
        }
        return Verdict::fail("not in the image of the outer code", worst);
    };
    p->generate = [d](uint64_t seed, size_t depth) {
        static const char* kcodes[] = {"echo", "(take 1)", "(branch 0 (const 0) (const 1))"};
        return jump_instance("echo", kcodes[mix64(seed) % 3], d->generate(seed, depth));
    };
    p->candidates = [image](const Value& inst, size_t depth) -> std::optional<std::vector<Value>> {
        auto img = image(inst, depth);
        if (!img) return std::nullopt;
        std::vector<Value> out;
        for (const auto& z : *img) out.push_back(Value::of_seq(z));
        return out;
    };
    return p;
}

ProblemPtr catalog_problem(const std::string& name)
{
    static const std::map<std::string, std::function<ProblemPtr()>> table = {
        {"llpo", make_llpo},
        {"lpo", make_lpo},
        {"limn", make_limn},
        {"rt12", make_rt12},
        {"kn", make_kn},
        {"dne", make_dne},
        {"dml", make_dml},
        {"wkl2", [] { return make_wkl("wkl2", TreeClass::Two); }},
        {"wkl-eq2", [] { return make_wkl("wkl-eq2", TreeClass::RationalTwo); }},
        {"wkl-aou", [] { return make_wkl("wkl-aou", TreeClass::Aou); }},
        {"wkl-conv", [] { return make_wkl("wkl-conv", TreeClass::Convex); }},
        {"wkl-clop", [] { return make_wkl("wkl-clop", TreeClass::Clopen); }},
        {"wkl-bclop", [] { return make_wkl("wkl-bclop", TreeClass::BasicClopen); }},
        {"beq", make_beq},
        {"ivtlin", make_ivtlin},
    };
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown problem: " + name);
    return it->second();
}

std::vector<std::string> catalog_names()
{
    return {"llpo", "lpo", "limn", "rt12", "kn", "dne", "dml", "wkl2", "wkl-eq2",
            "wkl-aou", "wkl-conv", "wkl-clop", "wkl-bclop", "beq", "ivtlin"};
}

}  // namespace ww
