#include "ww/reductions.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace ww {

Prefix pair_prefixes(const Prefix& x, const Prefix& y)
{
    size_t n = std::max(x.size(), y.size());
    Prefix out;
    out.reserve(2 * n);
    for (size_t i = 0; i < n; ++i) {
        out.push_back(i < x.size() ? x[i] : std::nullopt);
        out.push_back(i < y.size() ? y[i] : std::nullopt);
    }
    return out;
}

std::pair<Prefix, Prefix> unpair_prefixes(const Prefix& p)
{
    Prefix x, y;
    for (size_t i = 0; i < p.size(); ++i) (i % 2 ? y : x).push_back(p[i]);
    return {x, y};
}

Witness from_maps(std::string name, ProblemPtr f, ProblemPtr g, MonotoneMap h, MonotoneMap k)
{
    Witness w;
    w.name = std::move(name);
    w.f = std::move(f);
    w.g = std::move(g);
    w.inner = [h](const Value& x) { return Value::of_seq(apply_map(h, x.seq)); };
    w.outer = [k](const Value& x, const Value& y) {
        return Value::of_seq(apply_map(k, pair_prefixes(x.seq, y.seq)));
    };
    return w;
}

bool value_prefix_of(const Value& a, const Value& b)
{
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Value::Seq: return is_prefix_of(a.seq, b.seq);
    case Value::Tree:
        if (a.tree.levels.size() > b.tree.levels.size()) return false;
        return std::equal(a.tree.levels.begin(), a.tree.levels.end(), b.tree.levels.begin());
    case Value::Reals:
        return a.reals.size() <= b.reals.size() && std::equal(a.reals.begin(), a.reals.end(), b.reals.begin());
    case Value::PL: return a.pl.size() <= b.pl.size() && std::equal(a.pl.begin(), a.pl.end(), b.pl.begin());
    case Value::Tuple:
        if (a.parts.size() != b.parts.size()) return false;
        for (size_t i = 0; i < a.parts.size(); ++i)
            if (!value_prefix_of(a.parts[i], b.parts[i])) return false;
        return true;
    }
    return false;
}

namespace {

bool value_empty(const Value& v)
{
    switch (v.kind) {
    case Value::Seq: return v.seq.empty();
    case Value::Tree: return v.tree.levels.empty();
    case Value::Reals: return v.reals.empty();
    case Value::PL: return v.pl.empty();
    default:
        for (const auto& p : v.parts)
            if (value_empty(p)) return true;
        return false;
    }
}

bool is_tree_problem(const Value& x)
{
    return x.kind == Value::Tree;
}

}  // namespace

std::function<Value(const Value& y)> outer_at(const Witness& w, const Value& x)
{
    if (w.bind_outer) return w.bind_outer(x);
    return [&w, x](const Value& y) { return w.outer(x, y); };
}

SeedReport verify_witness_on(const Witness& w, const Value& x, size_t depth)
{
    SeedReport r;
    size_t dx = std::max(depth, value_depth(x));
    if (auto v = w.f->instance_valid(x, dx); v.failed()) {
        r.verdict = v;
        r.stage = v.depth;
        r.clause = 'i';
        return r;
    }
    Value hx = w.inner(x);
    size_t dg = value_depth(hx);
    if (auto v = w.g->instance_valid(hx, dg); v.failed()) {
        r.verdict = Verdict::fail("inner output is not a valid instance: " + v.reason, v.depth);
        r.stage = v.depth;
        r.clause = 'a';
        return r;
    }
    auto cands = w.g->candidates(hx, dg);
    if (!cands) {
        r.verdict = Verdict::indeterminate("candidate solutions not enumerable");
        return r;
    }
    auto k = outer_at(w, x);
    std::set<Prefix> checked;  // distinct candidates often share an output sequence
    for (const auto& y : *cands) {
        if (w.g->solution_valid(hx, y, dg).failed()) continue;
        Value z = k(y);
        if (value_empty(z)) {
            r.verdict = Verdict::indeterminate("outer map produced no output for " + value_summary(y));
            continue;
        }
        if (z.kind == Value::Seq && !checked.insert(z.seq).second) continue;
        if (auto v = w.f->solution_valid(x, z, dx); v.failed()) {
            r.verdict = Verdict::fail("outer output " + value_summary(z) + " on " + value_summary(y) +
                                          " is wrong: " + v.reason,
                                      v.depth);
            r.stage = v.depth;
            r.clause = 'b';
            return r;
        }
    }
    return r;
}

WitnessReport verify_witness(const Witness& w, const std::vector<uint64_t>& seeds, size_t depth)
{
    WitnessReport out;
    for (uint64_t seed : seeds) {
        size_t d = depth;
        Value x = w.f->generate(seed, d);
        // Compressing encodings need a longer f-instance before the g-side reaches depth.
        while (!is_tree_problem(x) && value_depth(w.inner(x)) < depth && d < 64 * depth) {
            d *= 2;
            x = w.f->generate(seed, d);
        }
        SeedReport r = verify_witness_on(w, x, depth);
        r.seed = seed;
        out.verdict = first_failure(out.verdict, r.verdict);
        out.seeds.push_back(r);
    }
    return out;
}

Verdict check_witness_monotone(const Witness& w, uint64_t seed, size_t pairs, size_t depth)
{
    std::mt19937_64 rng(mix64(seed + 17));
    Value x = w.f->generate(seed, depth);
    size_t dx = value_depth(x);
    Value hx = w.inner(x);
    std::vector<Value> ys;
    if (auto c = w.g->candidates(hx, value_depth(hx)))
        for (const auto& y : *c)
            if (!w.g->solution_valid(hx, y, value_depth(hx)).failed() && ys.size() < 4) ys.push_back(y);
    for (size_t i = 0; i < pairs; ++i) {
        size_t a = rng() % (dx + 1), b = rng() % (dx + 1);
        if (a > b) std::swap(a, b);
        Value xa = truncate_value(x, a), xb = truncate_value(x, b);
        if (!value_prefix_of(w.inner(xa), w.inner(xb)))
            return Verdict::fail(w.name + ": inner not monotone between depths " + std::to_string(a) + " and " +
                                     std::to_string(b),
                                 b);
        if (ys.empty()) continue;
        const Value& y = ys[i % ys.size()];
        // the outer map sees y at a depth proportional to x's
        size_t dy = value_depth(y);
        size_t ya = dx ? a * dy / dx : 0, yb = dx ? b * dy / dx : 0;
        if (!value_prefix_of(w.outer(xa, truncate_value(y, ya)), w.outer(xb, truncate_value(y, yb))))
            return Verdict::fail(w.name + ": outer not monotone between depths " + std::to_string(a) + " and " +
                                     std::to_string(b),
                                 b);
    }
    return Verdict::pass();
}

uint64_t string_code(const BitString& s)
{
    return (uint64_t{1} << s.len) + s.bits;
}

std::optional<BitString> string_decode(uint64_t c)
{
    if (c == 0) return std::nullopt;
    uint32_t len = 63 - static_cast<uint32_t>(__builtin_clzll(c));
    return BitString{len, c - (uint64_t{1} << len)};
}

// ---- Sigma-0-2 DNE and Lim_N ----------------------------------------------------------------

namespace {

// Least row not yet seen to contain a zero, after each delivered entry.
Prefix dne_candidate_stream(const Prefix& x)
{
    std::set<uint64_t> bad;
    uint64_t n = 0;
    Prefix out;
    for (size_t k = 0; k < x.size() && x[k]; ++k) {
        if (*x[k] == 0) bad.insert(cantor_unpair(k).first);
        while (bad.count(n)) ++n;
        out.emplace_back(n);
    }
    return out;
}

// Row t claims "the final run of a starts at t"; entry (t, m) at stream position k reads a up
// to k and is 1 while a is constant on [t, k] and t starts a run.
Prefix limn_run_matrix(const Prefix& a)
{
    size_t L = defined_length(a);
    Prefix out;
    for (size_t k = 0; k < L; ++k) {
        uint64_t t = cantor_unpair(k).first;
        bool one = t == 0 || *a[t - 1] != *a[t];
        for (size_t i = t; one && i <= k; ++i) one = *a[i] == *a[t];
        out.emplace_back(one ? 1 : 0);
    }
    return out;
}

}  // namespace

std::pair<Witness, Witness> red_dne_limn()
{
    ProblemPtr dne = catalog_problem("dne"), limn = catalog_problem("limn");
    Witness fwd;
    fwd.name = "dne-limn";
    fwd.f = dne;
    fwd.g = limn;
    fwd.inner = [](const Value& x) { return Value::of_seq(dne_candidate_stream(x.seq)); };
    fwd.outer = [](const Value&, const Value& y) { return Value::of_seq(truncate(y.seq, 1)); };

    Witness back;
    back.name = "dne-limn/back";
    back.f = limn;
    back.g = dne;
    back.inner = [](const Value& x) { return Value::of_seq(limn_run_matrix(x.seq)); };
    back.outer = [](const Value& x, const Value& y) {
        if (y.seq.empty() || !y.seq[0]) return Value::of_seq({});
        uint64_t t = *y.seq[0];
        if (t >= defined_length(x.seq)) return Value::of_seq({});
        return Value::of_seq({x.seq[t]});
    };
    return {fwd, back};
}

// ---- Sigma-0-2 DML and RT^1_2 -----------------------------------------------------------------

namespace {

// c_j(a, b) = 0 iff f(a + 1 + b) = j: matrix j has a zero in every row iff color j is unbounded.
Prefix coloring_to_matrices(const Prefix& f)
{
    size_t L = defined_length(f);
    Prefix out;
    for (uint64_t k = 0;; ++k) {
        uint64_t j = k % 2;
        auto [a, b] = cantor_unpair(k / 2);
        uint64_t idx = a + 1 + b;
        if (idx >= L) break;
        out.emplace_back(*f[idx] == j ? 0 : 1);
    }
    return out;
}

// f(a) = 0 if the least b falsifying a row entry falsifies matrix 0, else 1.
Prefix matrices_to_coloring(const Prefix& c)
{
    Prefix out;
    for (uint64_t a = 0;; ++a) {
        std::optional<uint64_t> color;
        for (uint64_t b = 0; !color; ++b) {
            Entry e0 = dml_entry(c, 0, a, b);
            if (!e0) break;
            if (*e0 == 0) {
                color = 0;
                break;
            }
            Entry e1 = dml_entry(c, 1, a, b);
            if (!e1) break;
            if (*e1 == 0) color = 1;
        }
        if (!color) break;
        out.emplace_back(*color);
    }
    return out;
}

}  // namespace

std::pair<Witness, Witness> red_dml_rt12()
{
    ProblemPtr dml = catalog_problem("dml"), rt = catalog_problem("rt12");
    Witness fwd;
    fwd.name = "dml-rt12";
    fwd.f = rt;
    fwd.g = dml;
    fwd.inner = [](const Value& x) { return Value::of_seq(coloring_to_matrices(x.seq)); };
    fwd.outer = [](const Value& x, const Value& y) {
        if (y.seq.empty() || !y.seq[0]) return Value::of_seq({});
        uint64_t j = *y.seq[0];
        Prefix h;
        for (size_t n = 0; n < x.seq.size() && x.seq[n]; ++n) h.emplace_back(*x.seq[n] == j ? 1 : 0);
        return Value::of_seq(h);
    };

    Witness back;
    back.name = "dml-rt12/back";
    back.f = dml;
    back.g = rt;
    back.inner = [](const Value& x) { return Value::of_seq(matrices_to_coloring(x.seq)); };
    back.outer = [](const Value& x, const Value& y) {
        Prefix f = matrices_to_coloring(x.seq);
        for (size_t a = 0; a < y.seq.size() && a < f.size() && y.seq[a]; ++a)
            if (*y.seq[a] == 1) return Value::of_seq({f[a]});
        return Value::of_seq({});
    };
    return {fwd, back};
}

// ---- WKL_clop <= Lim_N ----------------------------------------------------------------------

namespace {

BitString strip_trailing_zeros(BitString s)
{
    while (s.len > 0 && (s.bits & 1u) == 0) s = s.prefix(s.len - 1);
    return s;
}

}  // namespace

Witness red_clop_le_limn()
{
    Witness w;
    w.name = "clop-limn";
    w.f = catalog_problem("wkl-clop");
    w.g = catalog_problem("limn");
    // The leftmost path of a clopen tree is eventually stem 0^omega; emit the current stem.
    w.inner = [](const Value& x) {
        Prefix out;
        for (const auto& l : x.tree.levels) {
            if (l.empty()) break;
            out.emplace_back(string_code(strip_trailing_zeros(BitString{l.k, l.runs.front().lo})));
        }
        return Value::of_seq(out);
    };
    w.outer = [](const Value& x, const Value& y) {
        if (y.seq.empty() || !y.seq[0]) return Value::of_seq({});
        auto stem = string_decode(*y.seq[0]);
        if (!stem) return Value::of_seq({});
        Prefix p = stem->to_prefix();
        while (p.size() < x.tree.depth()) p.emplace_back(0);
        return Value::of_seq(p);
    };
    return w;
}

std::vector<std::string> reduction_names()
{
    return {"dne-limn", "dml-rt12", "aou-clop", "two-clop", "clop-limn", "beq-wkl2", "ivtlin-clop"};
}

std::vector<Witness> shipped_witnesses(const std::string& name)
{
    auto both = [](std::pair<Witness, Witness> p) { return std::vector<Witness>{p.first, p.second}; };
    if (name == "dne-limn") return both(red_dne_limn());
    if (name == "dml-rt12") return both(red_dml_rt12());
    if (name == "aou-clop") return {red_aou_le_clop()};
    if (name == "two-clop") return {red_two_le_clop()};
    if (name == "clop-limn") return {red_clop_le_limn()};
    if (name == "beq-wkl2") return both(red_beq_wkl2());
    if (name == "ivtlin-clop") return both(red_ivtlin_clop());
    throw std::invalid_argument("unknown reduction: " + name);
}

std::vector<Witness> all_shipped_witnesses()
{
    std::vector<Witness> out;
    for (const auto& n : reduction_names())
        for (auto& w : shipped_witnesses(n)) out.push_back(std::move(w));
    return out;
}

}  // namespace ww
