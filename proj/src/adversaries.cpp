#include "ww/adversaries.hpp"

#include "ww/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ww {

const char* certificate_kind_name(Certificate::Kind k)
{
    switch (k) {
    case Certificate::Refutation: return "refutation";
    case Certificate::IIViolation: return "ii-violation";
    case Certificate::NonTotal: return "non-total";
    default: return "none";
    }
}

std::string run_to_text(const AdversaryRun& r)
{
    std::ostringstream o;
    o << "adversary " << r.adversary << " strategy=" << r.strategy << "\n";
    o << "problems f=" << r.f->name << " g=" << r.g->name << " class=" << tree_class_name(r.tree_class) << "\n";
    o << "bounds max_stage=" << r.max_stage << " stages=" << r.stages << " max_rounds=" << r.max_rounds << "\n";
    o << "stage log:\n";
    for (const auto& e : r.log) o << "stage " << e.stage << ": action=" << e.action << " data=" << e.data << "\n";
    o << "built: " << value_summary(r.built) << "\n";
    o << "safety: " << verdict_to_text(r.safety) << "\n";
    o << "actions: " << r.actions << " ceiling: " << r.ceiling << " (" << r.ceiling_rule << ")\n";
    o << "certificate: kind=" << certificate_kind_name(r.cert.kind) << " round=" << r.cert.round;
    if (r.cert.refuted) o << " refuted=" << value_summary(*r.cert.refuted);
    o << "\n";
    if (!r.cert.note.empty()) o << "certificate note: " << r.cert.note << "\n";
    o << "continuation:";
    for (const auto& x : r.cert.continuation) o << " " << value_summary(x) << ";";
    o << "\n";
    if (r.replay) o << "replay:\n" << transcript_to_text(*r.replay);
    o << "result: " << (r.victory() ? "I-wins" : "Undecided") << "\n";
    return o.str();
}

namespace {

struct RunBuilder {
    AdversaryRun r;

    RunBuilder(std::string adversary, const std::string& strategy, ProblemPtr f, ProblemPtr g, TreeClass c,
               size_t max_stage, size_t rounds)
    {
        r.adversary = std::move(adversary);
        r.strategy = strategy;
        r.f = std::move(f);
        r.g = std::move(g);
        r.tree_class = c;
        r.max_stage = max_stage;
        r.max_rounds = rounds;
    }

    void event(size_t s, std::string action, std::string data, bool is_action)
    {
        r.log.push_back({s, std::move(action), std::move(data)});
        if (is_action) ++r.actions;
    }

    void check(const LevelTree& t, size_t s)
    {
        r.stages = s;
        Verdict v = validate_class(t, r.tree_class, s);
        if (!v.ok() && r.safety.ok()) r.safety = Verdict::fail("stage " + std::to_string(s) + ": " + v.reason, s);
    }

    void horizon(size_t max_stage)
    {
        if (max_stage > kMaxTreeDepth)
            event(kMaxTreeDepth, "horizon", "tree depth limit reached; later stages add no observations", false);
    }
};

size_t stage_limit(size_t max_stage)
{
    return std::min(max_stage, kMaxTreeDepth);
}

std::string bits_text(const Value& v, size_t cap = 24)
{
    if (v.kind != Value::Seq) return value_summary(v);
    std::string s;
    for (size_t i = 0; i < v.seq.size() && i < cap; ++i) s += v.seq[i] ? std::to_string(*v.seq[i]) : "_";
    if (v.seq.size() > cap) s += "...";
    return s.empty() ? "()" : s;
}

std::string node_text(const BitString& b)
{
    return b.len == 0 ? "()" : b.text();
}

// alpha leaves the tree within the observed levels.
bool refuted_in(const LevelTree& t, const Value& alpha, size_t depth)
{
    if (alpha.kind != Value::Seq) return true;
    BitString cur;
    size_t d = std::min({depth, t.depth(), alpha.seq.size()});
    for (size_t k = 1; k <= d; ++k) {
        const Entry& e = alpha.seq[k - 1];
        if (!e || *e > 1) return true;
        cur = cur.child(static_cast<int>(*e));
        if (!t.contains(cur)) return true;
    }
    return false;
}

std::optional<BitString> prefix_bits(const Value& v, size_t n)
{
    if (v.kind != Value::Seq || v.seq.size() < n) return std::nullopt;
    return BitString::from_prefix(truncate(v.seq, n));
}

struct Sweep {
    bool clean = true;      // no violation, every branch declared
    bool violation = false;
    std::vector<Value> declared;
    size_t max_queries = 0;
    size_t query_nodes = 0;
};

Sweep sweep(const PlayTree& t)
{
    Sweep s;
    if (t.truncated) s.clean = false;
    std::set<std::string> seen;
    for (const auto& l : t.leaves) {
        size_t q = l.replies.size() - (l.kind == PlayLeaf::Declared ? 1 : 0);
        s.max_queries = std::max(s.max_queries, q);
        switch (l.kind) {
        case PlayLeaf::Declared:
            if (seen.insert(value_to_text(l.value)).second) s.declared.push_back(l.value);
            break;
        case PlayLeaf::Violation:
            s.violation = true;
            s.clean = false;
            break;
        default: s.clean = false;
        }
    }
    s.query_nodes = t.nodes - t.leaves.size();
    return s;
}

// Explores the final position and replays a branch on which I wins.
void certify(AdversaryRun& r, const StrategyII& s, const Chooser& choose)
{
    size_t D = r.stages;
    PlayTree t = explore_plays(*r.g, r.built, s, r.max_rounds, D, choose);
    size_t need = std::min(D, declared_depth_needed(*r.f, r.built, D));
    int best = 0;
    for (const auto& l : t.leaves) {
        int rank = 0;
        Certificate c;
        c.round = l.replies.empty() ? 0 : l.replies.size() - 1;
        if (l.kind == PlayLeaf::Declared) {
            Verdict v = r.f->solution_valid(r.built, l.value, D);
            if (v.failed()) {
                rank = 3;
                c.kind = Certificate::Refutation;
                c.refuted = l.value;
                c.note = v.reason;
            } else if (value_depth(l.value) < need) {
                rank = 1;
                c.kind = Certificate::NonTotal;
                c.refuted = l.value;
                c.note = "declaration never delivered to the needed length";
            }
        } else if (l.kind == PlayLeaf::Violation) {
            rank = 2;
            c.kind = Certificate::IIViolation;
            c.note = l.check.reason;
        } else if (l.kind == PlayLeaf::Stall) {
            rank = 1;
            c.kind = Certificate::NonTotal;
            c.round = l.replies.size();
            c.note = "II never declares while I obeys";
        }
        if (rank > best) {
            best = rank;
            c.continuation.assign(l.moves.begin() + 1, l.moves.end());
            r.cert = c;
        }
    }
    if (best == 0) {
        r.cert = Certificate{};
        r.cert.note = t.leaves.empty() ? "no play" : "no branch defeats the strategy at the final depth";
    }
    r.replay = play_game(*r.f, *r.g, replay_player(r.built, r.cert.continuation, r.g), s, r.max_rounds, D);
}

Value leftmost_path(const Value& tree, size_t depth)
{
    size_t d = std::min(depth, tree.tree.depth());
    const Level& l = tree.tree.levels[d];
    return Value::of_seq(BitString{static_cast<uint32_t>(d), l.runs.front().lo}.to_prefix());
}

std::vector<Value> level_answers(const Value& tree, size_t depth)
{
    std::vector<Value> out;
    size_t d = std::min(depth, tree.tree.depth());
    for (const auto& n : tree.tree.levels[d].nodes(4)) out.push_back(Value::of_seq(n.to_prefix()));
    return out;
}

BitString padded(const BitString& s, uint32_t k)
{
    if (k <= s.len) return s.prefix(k);
    return {k, s.bits << (k - s.len)};
}

}  // namespace

// ---- WKL_aou against (WKL_{<=2})* ----------------------------------------------------------------

AdversaryRun adv_aou_vs_two_star(const StrategyII& s, size_t max_stage)
{
    RunBuilder b("aou-vs-two-star", s.name, catalog_problem("wkl-aou"),
                 finite_parallelization(catalog_problem("wkl2")), TreeClass::Aou, max_stage, 4);
    const ProblemPtr g = b.r.g;
    Chooser choose = valid_answers(g);
    LevelTree T = LevelTree::root();
    std::optional<BitString> sigma;
    bool held = false;
    size_t S = stage_limit(max_stage);
    for (size_t st = 1; st <= S; ++st) {
        uint32_t k = static_cast<uint32_t>(st);
        T.push(sigma ? Level::of(k, {padded(*sigma, k)}) : Level::full(k));
        b.check(T, st);
        if (sigma) continue;
        PlayTree pt = explore_plays(*g, Value::of_tree(T), s, b.r.max_rounds, st, choose);
        Sweep sw = sweep(pt);
        if (sw.violation && !held) {
            held = true;
            b.event(st, "hold", "II's trees do not look like 2-trees; T stays full", false);
        }
        if (!sw.clean) continue;
        size_t trees = 0;
        for (const auto& l : pt.leaves) {
            size_t t = 0;
            for (const auto& y : l.replies)
                if (!y.declare && y.value.kind == Value::Tuple) t += y.value.parts.size() - 1;
            trees = std::max(trees, t);
        }
        size_t L = trees + 1;
        if (L > kMaxTreeDepth) continue;
        std::set<uint64_t> used;
        bool ready = true;
        for (const auto& a : sw.declared) {
            auto p = prefix_bits(a, L);
            if (!p) {
                if (a.kind == Value::Seq && a.seq.size() >= L) continue;  // not a bit string: never a path
                ready = false;
                break;
            }
            used.insert(p->bits);
        }
        if (!ready) continue;
        uint64_t pick = 0;
        while (used.count(pick)) ++pick;
        sigma = BitString{static_cast<uint32_t>(L), pick};
        b.event(st, "collapse",
                "sigma=" + sigma->text() + " length=" + std::to_string(L) + " declared=" + std::to_string(sw.declared.size()),
                true);
    }
    b.horizon(max_stage);
    b.r.ceiling = 1;
    b.r.ceiling_rule = "the construction acts at most once";
    b.r.built = Value::of_tree(T);
    certify(b.r, s, choose);
    return b.r;
}

// ---- rational WKL_{=2} against (WKL_aou)* then (WKL_aou)* ------------------------------------------

namespace {

// Player I's single choice per aou-tree: its leftmost node.
Chooser leftmost_parallel(ProblemPtr g)
{
    return [g](const std::vector<Value>&, const Value& q, size_t depth) -> std::optional<std::vector<Value>> {
        if (q.kind != Value::Tuple || q.parts.empty()) return std::vector<Value>{};
        std::vector<Value> parts;
        for (size_t i = 1; i < q.parts.size(); ++i) {
            if (q.parts[i].kind != Value::Tree || q.parts[i].tree.levels.empty()) return std::vector<Value>{};
            parts.push_back(leftmost_path(q.parts[i], depth));
        }
        Value a = Value::tuple(parts);
        if (!g->solution_valid(q, a, depth).ok()) return std::vector<Value>{};
        return std::vector<Value>{a};
    };
}

bool same_choice(const Value& a, const Value& b)
{
    return value_prefix_of(a, b) || value_prefix_of(b, a);
}

}  // namespace

AdversaryRun adv_two_vs_aou_game(const StrategyII& s, size_t max_stage)
{
    RunBuilder b("two-vs-aou-game", s.name, catalog_problem("wkl-eq2"),
                 finite_parallelization(catalog_problem("wkl-aou")), TreeClass::RationalTwo, max_stage, 3);
    const ProblemPtr g = b.r.g;
    Chooser choose = leftmost_parallel(g);
    LevelTree T = LevelTree::root();
    BitString l{1, 0}, r{1, 1};
    std::optional<Value> last_x, last_y;
    std::optional<std::string> C;
    size_t visits5 = 0, visits6 = 0, max_s = 0, max_c = 0;
    bool held = false;
    size_t S = stage_limit(max_stage);
    for (size_t st = 1; st <= S; ++st) {
        T.push(Level::of(static_cast<uint32_t>(st), {l, r}));
        b.check(T, st);
        BitString v = meet(l, r);
        BitString nl = l.child(1), nr = r.child(0);
        PlayTree pt = explore_plays(*g, Value::of_tree(T), s, b.r.max_rounds, st, choose);
        Sweep sw = sweep(pt);
        if (sw.violation && !held) {
            held = true;
            b.event(st, "hold", "II's trees do not look like aou-trees; defaults only", false);
        }
        if (!sw.violation && !pt.truncated && pt.leaves.size() == 1 && pt.leaves[0].kind == PlayLeaf::Declared) {
            const PlayLeaf& leaf = pt.leaves[0];
            const Value& alpha = leaf.value;
            std::optional<Value> x, y;
            if (leaf.moves.size() > 1) x = leaf.moves[1];
            if (leaf.moves.size() > 2) y = leaf.moves[2];
            if (leaf.replies.size() > 1 && leaf.replies[0].value.kind == Value::Tuple)
                max_s = std::max(max_s, leaf.replies[0].value.parts.size() - 1);
            if (leaf.replies.size() > 2 && leaf.replies[1].value.kind == Value::Tuple)
                max_c = std::max(max_c, leaf.replies[1].value.parts.size() - 1);
            if (last_x && x && !same_choice(*last_x, *x)) {
                ++visits5;
                C.reset();
                b.event(st, "step5", "S-answer re-chosen after a collapse; visit " + std::to_string(visits5), false);
            } else if (last_y && y && !same_choice(*last_y, *y)) {
                ++visits6;
                std::string nb = bits_text(*x);
                if (!C) {
                    C = nb;
                    b.event(st, "step6", "R-answer re-chosen; C=[" + nb + "] c=" + std::to_string(max_c), false);
                } else {
                    b.event(st, "step6'", "R-answer re-chosen inside C; C'=[" + nb + "]", false);
                    C = nb;
                }
            }
            if (x) last_x = x;
            if (y) last_y = y;
            if (!refuted_in(T, alpha, st) && alpha.kind == Value::Seq && alpha.seq.size() > v.len &&
                alpha.seq[v.len] && *alpha.seq[v.len] <= 1) {
                int bit = static_cast<int>(*alpha.seq[v.len]);
                std::string data = "v=" + node_text(v) + " alpha(|v|)=" + std::to_string(bit) +
                                   " step=" + (C ? "3'" : "3");
                if (bit == 0) {
                    nl = r.child(0);
                    nr = r.child(1);
                    b.event(st, "shift-right", data, true);
                } else {
                    nl = l.child(0);
                    nr = l.child(1);
                    b.event(st, "shift-left", data, true);
                }
            }
        }
        l = nl;
        r = nr;
    }
    b.horizon(max_stage);
    // one shift per representative play: the first, one per S-collapse (at most n+1), and at
    // most c+1 per R-collapse neighborhood between them
    b.r.ceiling = 1 + max_s + (max_s + 1) * (max_c + 1);
    b.r.ceiling_rule = "1 + (n+1) + (n+2)(c+1) with n+1 S-trees and c+1 R-trees";
    b.r.built = Value::of_tree(T);
    certify(b.r, s, choose);
    return b.r;
}

// ---- WKL_clop against (WKL_aou x WKL_{<=2})^Game ----------------------------------------------------

namespace {

// One element for the aou component, both elements for the 2-tree component.
Chooser mixed_chooser(ProblemPtr g)
{
    return [g](const std::vector<Value>&, const Value& q, size_t depth) -> std::optional<std::vector<Value>> {
        if (q.kind != Value::Tuple || q.parts.size() != 2 || q.parts[0].kind != Value::Tree ||
            q.parts[1].kind != Value::Tree || q.parts[0].tree.levels.empty() || q.parts[1].tree.levels.empty())
            return std::vector<Value>{};
        Value a = leftmost_path(q.parts[0], depth);
        std::vector<Value> out;
        for (const auto& bnode : level_answers(q.parts[1], depth)) {
            Value ans = Value::tuple({a, bnode});
            if (g->solution_valid(q, ans, depth).ok()) out.push_back(ans);
        }
        return out;
    };
}

std::optional<BitString> avoiding_extension(const BitString& sigma, size_t H, const std::vector<Value>& threats)
{
    uint32_t e = static_cast<uint32_t>(H - sigma.len);
    std::set<uint64_t> used;
    for (const auto& a : threats)
        if (auto p = prefix_bits(a, H); p && sigma.is_prefix_of(*p)) used.insert(p->bits & ((e == 64) ? ~0ull : ((1ull << e) - 1)));
    for (uint64_t c = 0; e >= 63 || c < (1ull << e); ++c)
        if (!used.count(c)) return sigma.append(BitString{e, c});
    return std::nullopt;
}

}  // namespace

AdversaryRun adv_clop_vs_mixed(const StrategyII& s, size_t max_stage)
{
    ProblemPtr g = product(catalog_problem("wkl-aou"), catalog_problem("wkl2"));
    RunBuilder b("clop-vs-mixed", s.name, catalog_problem("wkl-clop"), g, TreeClass::BasicClopen, max_stage, 6);
    Chooser choose = mixed_chooser(g);
    LevelTree T = LevelTree::root();
    BitString sigma;
    size_t passes = 0, a_queries = 0;
    bool held = false, blocked = false;
    size_t S = stage_limit(max_stage);
    for (size_t st = 1; st <= S; ++st) {
        T.push(Level::cone(sigma, static_cast<uint32_t>(st)));
        b.check(T, st);
        PlayTree pt = explore_plays(*g, Value::of_tree(T), s, b.r.max_rounds, st, choose);
        Sweep sw = sweep(pt);
        a_queries = std::max(a_queries, sw.query_nodes);
        if (sw.violation && !held) {
            held = true;
            b.event(st, "hold", "II's pairs do not look like (aou-tree, 2-tree); stem kept", false);
        }
        if (!sw.clean) continue;
        std::vector<Value> threats;
        for (const auto& a : sw.declared)
            if (!refuted_in(T, a, st)) threats.push_back(a);
        if (threats.empty()) continue;
        size_t n = sw.max_queries;
        size_t k = passes + 1;
        size_t H = k * (n + 2);
        if (H <= sigma.len) H = sigma.len + n + 2;
        if (H > kMaxTreeDepth) {
            if (!blocked) b.event(st, "blocked", "horizon " + std::to_string(H) + " exceeds the tree depth limit", false);
            blocked = true;
            continue;
        }
        bool ready = std::all_of(threats.begin(), threats.end(), [&](const Value& a) {
            return a.kind == Value::Seq && a.seq.size() >= H;
        });
        if (!ready) continue;
        auto tau = avoiding_extension(sigma, H, threats);
        if (!tau) continue;
        if (passes > 0)
            b.event(st, "step4", "an A-answer was re-chosen; pass " + std::to_string(k), false);
        b.event(st, "stem",
                "sigma=" + tau->text() + " horizon=" + std::to_string(k) + "*(" + std::to_string(n) + "+2)=" +
                    std::to_string(H) + " (product reading) threats=" + std::to_string(threats.size()),
                true);
        sigma = *tau;
        ++passes;
    }
    b.horizon(max_stage);
    b.r.ceiling = 1 + a_queries;
    b.r.ceiling_rule = "1 + number of A-trees, each collapsing at most once";
    b.r.built = Value::of_tree(T);
    certify(b.r, s, choose);
    return b.r;
}

// ---- WKL_{<=2} against a semicontinuous bound ---------------------------------------------------

Prefix two_tree_code(const LevelTree& t, size_t depth)
{
    Prefix out;
    for (size_t k = 1; k <= depth && k < t.levels.size(); ++k) {
        auto ns = t.levels[k].nodes(2);
        if (ns.size() != 2) break;
        out.emplace_back(ns[0].bits);
        out.emplace_back(ns[1].bits);
    }
    return out;
}

ProblemPtr bounded_index_problem()
{
    auto p = std::make_shared<Problem>();
    p->name = "index";
    p->instance_valid = [](const Value& x, size_t) {
        if (x.kind != Value::Seq || x.seq.size() != 1 || !x.seq[0]) return Verdict::fail("instance must be [b]", 0);
        return Verdict::pass();
    };
    p->solution_valid = [](const Value& x, const Value& y, size_t) {
        if (y.kind != Value::Seq || y.seq.empty() || !y.seq[0]) return Verdict::fail("solution must be [n]", 0);
        if (x.seq.empty() || !x.seq[0] || *y.seq[0] >= *x.seq[0]) return Verdict::fail("index not below the bound", 1);
        return Verdict::pass();
    };
    p->generate = [](uint64_t seed, size_t) { return Value::of_seq(make_prefix({1 + seed % 4})); };
    p->candidates = [](const Value& x, size_t) -> std::optional<std::vector<Value>> {
        std::vector<Value> out;
        if (x.kind != Value::Seq || x.seq.empty() || !x.seq[0]) return out;
        for (uint64_t n = 0; n < std::min<uint64_t>(*x.seq[0], kCandidateBudget); ++n)
            out.push_back(Value::of_seq(make_prefix({n})));
        return out;
    };
    return p;
}

StrategyII semibound_game_strategy(const SemiboundStrategy& sb)
{
    StrategyII s;
    s.name = sb.name;
    s.respond = [sb](size_t round, const std::vector<Value>& xs) -> std::optional<IIMove> {
        size_t d = xs[0].tree.depth();
        if (round == 0) return IIMove{false, Value::of_seq(make_prefix({sb.bound(d)}))};
        if (round == 1 && xs[1].kind == Value::Seq && !xs[1].seq.empty() && xs[1].seq[0]) {
            Prefix out = apply_map(sb.family(static_cast<size_t>(*xs[1].seq[0])), two_tree_code(xs[0].tree, d));
            return IIMove{true, Value::of_seq(truncate(out, d))};
        }
        return std::nullopt;
    };
    return s;
}

AdversaryRun adv_two_vs_semibound(const SemiboundStrategy& sb, size_t max_stage)
{
    RunBuilder b("two-vs-semibound", sb.name, catalog_problem("wkl2"), bounded_index_problem(), TreeClass::Two,
                 max_stage, 2);
    LevelTree T = LevelTree::root();
    BitString l{1, 0}, r{1, 1};
    std::set<size_t> inactive;
    uint64_t max_b = 0;
    size_t S = stage_limit(max_stage);
    for (size_t st = 1; st <= S; ++st) {
        T.push(Level::of(static_cast<uint32_t>(st), {l, r}));
        b.check(T, st);
        BitString v = meet(l, r);
        BitString nl = l.child(1), nr = r.child(0);
        uint64_t bs = sb.bound(st);
        max_b = std::max(max_b, bs);
        Prefix code = two_tree_code(T, st);
        for (uint64_t n = 0; n < bs && n < kCandidateBudget; ++n) {
            if (inactive.count(n)) continue;
            Prefix out = apply_map(sb.family(n), code);
            if (out.size() <= v.len || !out[v.len] || *out[v.len] > 1) continue;
            int bit = static_cast<int>(*out[v.len]);
            std::string data = "n=" + std::to_string(n) + " v=" + node_text(v) + " g(n)(|v|)=" + std::to_string(bit);
            if (bit == 0) {
                nl = r.child(0);
                nr = r.child(1);
                b.event(st, "shift-right", data, true);
            } else {
                nl = l.child(0);
                nr = l.child(1);
                b.event(st, "shift-left", data, true);
            }
            inactive.insert(n);
            break;
        }
        l = nl;
        r = nr;
    }
    b.horizon(max_stage);
    b.r.ceiling = static_cast<size_t>(max_b);
    b.r.ceiling_rule = "each index below the bound receives attention at most once";
    b.r.built = Value::of_tree(T);
    certify(b.r, semibound_game_strategy(sb), valid_answers(b.r.g));
    return b.r;
}

// ---- WKL_conv against (RT12 x Lim_N x WKL_{<=2})^Game ---------------------------------------------

namespace {

Prefix selector(const Prefix& c, uint64_t color)
{
    Prefix h;
    for (const auto& e : c) h.emplace_back(e && *e == color ? 1 : 0);
    return h;
}

// Current true outcome of a 2-tree query at clock t: both paths when the two level-t nodes
// extend the level-(t-1) nodes, otherwise the left node alone.
std::vector<BitString> wkl_outcome(const LevelTree& B, size_t t, std::string& label)
{
    size_t k = std::min(t, B.depth());
    auto ns = B.levels[k].nodes(2);
    if (k >= 2 && ns.size() == 2) {
        auto ps = B.levels[k - 1].nodes(2);
        if (ps.size() == 2 && ps[0].is_prefix_of(ns[0]) && ps[1].is_prefix_of(ns[1])) {
            label = std::to_string(meet(ns[0], ns[1]).len);
            return ns;
        }
    }
    label = "inf";
    return {ns.front()};
}

}  // namespace

AdversaryRun adv_conv_vs_triple(const StrategyII& s, size_t max_stage)
{
    ProblemPtr g = product(product(catalog_problem("rt12"), catalog_problem("limn")), catalog_problem("wkl2"));
    RunBuilder b("conv-vs-triple", s.name, catalog_problem("wkl-conv"), g, TreeClass::Convex, max_stage, 5);
    LevelTree T = LevelTree::root();
    BitString sigma;
    std::map<std::string, size_t> clock;
    std::map<std::string, std::string> wkl_prev;
    std::set<std::string> threat_seen;
    size_t S = stage_limit(max_stage);

    struct Walk {
        bool complete = true;
        std::vector<Value> declared;
    };

    for (size_t st = 1; st <= S; ++st) {
        T.push(Level::cone(sigma, static_cast<uint32_t>(st)));
        b.check(T, st);
        Walk w;
        std::set<std::string> seen;
        // depth-first over the current true multi-path
        std::function<void(const std::string&, std::vector<Value>&)> walk = [&](const std::string& key,
                                                                               std::vector<Value>& xs) {
            size_t round = xs.size() - 1;
            auto y = s.respond(round, xs);
            if (!y) {
                w.complete = false;
                return;
            }
            if (y->declare) {
                if (seen.insert(value_to_text(y->value)).second) w.declared.push_back(y->value);
                return;
            }
            if (!g->instance_valid(y->value, st).ok() || round + 1 >= b.r.max_rounds || round + 1 >= st) {
                w.complete = false;
                return;
            }
            size_t t = ++clock[key];
            const Value& c = y->value.parts[0].parts[0];
            const Value& a = y->value.parts[0].parts[1];
            const Value& B = y->value.parts[1];
            if (c.seq.size() < t || !c.seq[t - 1] || a.seq.empty()) {
                w.complete = false;
                return;
            }
            uint64_t color = *c.seq[t - 1];
            const Entry& lim = a.seq[std::min(t, a.seq.size()) - 1];
            if (!lim) {
                w.complete = false;
                return;
            }
            std::string label;
            auto paths = wkl_outcome(B.tree, t, label);
            auto prev = wkl_prev.find(key);
            if (prev != wkl_prev.end() && prev->second != label)
                b.event(st, "substitute", "node " + (key.empty() ? std::string("root") : key) + " 2-tree outcome " +
                                              prev->second + "->" + label,
                        false);
            wkl_prev[key] = label;
            Value rl = Value::tuple({Value::of_seq(selector(c.seq, color)), Value::of_seq({lim})});
            for (size_t i = 0; i < paths.size(); ++i) {
                std::string child = key + "/c" + std::to_string(color) + ".l" + std::to_string(*lim) + ".w" + label +
                                    (paths.size() > 1 ? (i ? "R" : "L") : "");
                xs.push_back(Value::tuple({rl, Value::of_seq(paths[i].to_prefix())}));
                walk(child, xs);
                xs.pop_back();
            }
        };
        std::vector<Value> xs{Value::of_tree(T)};
        walk("", xs);
        if (!w.complete) continue;
        std::vector<Value> threats;
        for (const auto& a : w.declared)
            if (!refuted_in(T, a, st)) threats.push_back(a);
        if (threats.empty()) continue;
        size_t m = threats.size();
        size_t H = sigma.len + m;
        if (H > kMaxTreeDepth) continue;
        bool ready = std::all_of(threats.begin(), threats.end(), [&](const Value& a) {
            return a.kind == Value::Seq && a.seq.size() >= H;
        });
        if (!ready) continue;
        // diagonal: bit |sigma|+i differs from threat i there
        BitString tau = sigma;
        for (size_t i = 0; i < m; ++i) {
            const Entry& e = threats[i].seq[sigma.len + i];
            tau = tau.child(e && *e == 0 ? 1 : 0);
        }
        for (const auto& a : threats) threat_seen.insert(value_to_text(a));
        b.event(st, "stem", "sigma=" + tau.text() + " multi-path values=" + std::to_string(m), true);
        sigma = tau;
    }
    b.horizon(max_stage);
    b.r.ceiling = threat_seen.size();
    b.r.ceiling_rule = "each action refutes at least one new declared value";
    b.r.built = Value::of_tree(T);
    certify(b.r, s, valid_answers(g));
    return b.r;
}

// ---- bound extraction for (RT12 x Lim_N)^Game -----------------------------------------------------

ProblemPtr rt_lim_problem()
{
    static ProblemPtr p = product(catalog_problem("rt12"), catalog_problem("limn"));
    return p;
}

Value bound_instance(uint64_t seed, size_t depth)
{
    return catalog_problem("limn")->generate(seed, depth);
}

BoundStream bound_extract(const Value& x0, const StrategyII& s, size_t max_stage, size_t depth)
{
    BoundStream out;
    out.strategy = s.name;
    out.max_stage = max_stage;
    out.depth = depth;
    std::map<std::string, size_t> clock;
    std::set<std::string> in_b;
    Value root = truncate_value(x0, depth);
    for (size_t st = 1; st <= max_stage; ++st) {
        std::vector<Value> xs{root};
        std::string key;
        // the accessible nodes form one path: each node has one passable edge per stage
        while (xs.size() - 1 < st) {
            size_t round = xs.size() - 1;
            auto y = s.respond(round, xs);
            if (!y) break;
            if (y->declare) {
                if (in_b.insert(value_to_text(y->value)).second) {
                    out.values.push_back(y->value);
                    out.first_stage.push_back(st);
                    out.log.push_back({st, "enumerate", "node " + (key.empty() ? std::string("root") : key) +
                                                            " value=" + value_summary(y->value)});
                }
                break;
            }
            if (y->value.kind != Value::Tuple || y->value.parts.size() != 2 ||
                y->value.parts[0].kind != Value::Seq || y->value.parts[1].kind != Value::Seq)
                break;
            size_t t = ++clock[key];
            const Prefix& c = y->value.parts[0].seq;
            const Prefix& a = y->value.parts[1].seq;
            if (c.size() < t || !c[t - 1] || *c[t - 1] > 1 || a.empty()) break;
            const Entry& lim = a[std::min(st, a.size()) - 1];
            if (!lim) break;
            uint64_t color = *c[t - 1];
            key += "/" + std::to_string(color) + "." + std::to_string(*lim);
            xs.push_back(Value::tuple({Value::of_seq(selector(c, color)), Value::of_seq({lim})}));
        }
        out.sizes.push_back(out.values.size());
    }
    return out;
}

std::string bound_to_text(const BoundStream& b)
{
    std::ostringstream o;
    o << "bound strategy=" << b.strategy << "\n";
    o << "bounds max_stage=" << b.max_stage << " depth=" << b.depth << "\n";
    o << "stage log:\n";
    for (const auto& e : b.log) o << "stage " << e.stage << ": action=" << e.action << " data=" << e.data << "\n";
    o << "sizes:";
    size_t prev = SIZE_MAX;
    for (size_t s = 0; s < b.sizes.size(); ++s)
        if (b.sizes[s] != prev) {
            o << " s" << (s + 1) << "=" << b.sizes[s];
            prev = b.sizes[s];
        }
    o << "\n";
    o << "B (" << b.values.size() << "):\n";
    for (size_t i = 0; i < b.values.size(); ++i)
        o << "  " << value_summary(b.values[i]) << " from stage " << b.first_stage[i] << "\n";
    return o.str();
}

}  // namespace ww
