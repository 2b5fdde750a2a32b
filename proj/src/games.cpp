#include "ww/games.hpp"

#include "ww/reductions.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ww {

const char* player_name(Player p)
{
    return p == Player::I ? "I" : "II";
}

const char* outcome_name(Outcome o)
{
    switch (o) {
    case Outcome::IIWins: return "II-wins";
    case Outcome::IWins: return "I-wins";
    default: return "Undecided";
    }
}

size_t declared_depth_needed(const Problem& f, const Value& x0, size_t depth)
{
    auto cs = f.candidates(x0, depth);
    if (!cs || cs->empty()) return 0;
    size_t need = SIZE_MAX;
    for (const auto& c : *cs) need = std::min(need, value_depth(c));
    return need;
}

Transcript play_game(const Problem& f, const Problem& g, const StrategyI& si, const StrategyII& sii,
                     size_t max_rounds, size_t depth)
{
    Transcript t;
    t.f = f.name;
    t.g = g.name;
    t.strategy_i = si.name;
    t.strategy_ii = sii.name;
    t.max_rounds = max_rounds;
    t.depth = depth;

    auto finish = [&](Outcome o, std::string note) {
        t.verdict = o;
        t.note = std::move(note);
        return t;
    };

    auto x0 = si.move(0, {}, depth);
    if (!x0) {
        t.rounds.push_back({Player::I, 0, false, Value{}, Verdict::fail("no first move", 0)});
        return finish(Outcome::IIWins, "I violates the rule first");
    }
    Verdict v0 = f.instance_valid(*x0, depth);
    t.rounds.push_back({Player::I, 0, false, *x0, v0});
    if (v0.failed()) return finish(Outcome::IIWins, "I violates the rule first");
    size_t need = std::min(depth, declared_depth_needed(f, *x0, depth));

    std::vector<Value> xs{truncate_value(*x0, depth)};
    std::vector<IIMove> ys;
    for (size_t n = 0; n < max_rounds; ++n) {
        auto y = sii.respond(n, xs);
        if (!y) {
            t.rounds.push_back({Player::II, n, false, Value{}, Verdict::fail("no move at this depth", depth)});
            return finish(Outcome::IWins, "II stalls while I obeys");
        }
        if (y->declare) {
            Verdict c = f.solution_valid(*x0, y->value, depth);
            size_t got = value_depth(y->value);
            if (c.ok() && got < need)
                c = Verdict::fail("declared value delivered to " + std::to_string(got) + " of " +
                                      std::to_string(need),
                                  got + 1);
            t.rounds.push_back({Player::II, n, true, y->value, c});
            t.declared = y->value;
            if (c.failed()) return finish(Outcome::IWins, "declared value is not a solution");
            if (c.kind == Verdict::Indeterminate) {
                t.verdict = Outcome::Undecided;
                t.note = "declaration undecided: " + c.reason;
                return t;
            }
            return finish(Outcome::IIWins, "II declares a valid solution");
        }
        Verdict c = g.instance_valid(y->value, depth);
        t.rounds.push_back({Player::II, n, false, y->value, c});
        if (c.failed()) return finish(Outcome::IWins, "II violates the rule first");
        ys.push_back(*y);
        auto x = si.move(n + 1, ys, depth);
        if (!x) {
            t.rounds.push_back({Player::I, n + 1, false, Value{}, Verdict::fail("no answer", 0)});
            return finish(Outcome::IIWins, "I violates the rule first");
        }
        Verdict a = g.solution_valid(y->value, *x, depth);
        t.rounds.push_back({Player::I, n + 1, false, *x, a});
        if (a.failed()) return finish(Outcome::IIWins, "I violates the rule first");
        xs.push_back(truncate_value(*x, depth));
    }
    return finish(Outcome::Undecided, "no decision within " + std::to_string(max_rounds) + " rounds");
}

std::optional<std::pair<Player, size_t>> check_rules(const Transcript& t)
{
    for (const auto& r : t.rounds) {
        // a wrong declaration is a loss, not a rule violation
        if (r.player == Player::II && r.declare) continue;
        if (r.check.failed()) return std::make_pair(r.player, r.index);
    }
    return std::nullopt;
}

std::string transcript_to_text(const Transcript& t)
{
    std::ostringstream o;
    o << "game f=" << t.f << " g=" << t.g << "\n";
    o << "strategies I=" << t.strategy_i << " II=" << t.strategy_ii << "\n";
    o << "bounds max_rounds=" << t.max_rounds << " depth=" << t.depth << "\n";
    for (const auto& r : t.rounds) {
        o << "round " << r.index << " " << player_name(r.player) << " ";
        if (r.player == Player::I) o << "move=";
        else o << (r.declare ? "declare=" : "query=");
        o << value_summary(r.move) << " check=" << verdict_to_text(r.check) << "\n";
    }
    o << "verdict: " << outcome_name(t.verdict);
    if (t.verdict == Outcome::Undecided) o << "(depth=" << t.depth << ")";
    o << "\n";
    o << "declared: " << (t.declared ? value_summary(*t.declared) : std::string("none")) << "\n";
    if (!t.note.empty()) o << "note: " << t.note << "\n";
    return o.str();
}

namespace {

std::vector<Value> valid_candidates(const Problem& g, const Value& q, size_t depth, bool& enumerable)
{
    enumerable = true;
    auto cs = g.candidates(q, depth);
    if (!cs) {
        enumerable = false;
        return {};
    }
    std::vector<Value> out;
    for (auto& c : *cs)
        if (g.solution_valid(q, c, depth).ok()) out.push_back(std::move(c));
    return out;
}

bool comparable(const Value& a, const Value& b)
{
    return value_prefix_of(a, b) || value_prefix_of(b, a);
}

}  // namespace

StrategyI obeying_player(ProblemPtr f, ProblemPtr g, uint64_t seed)
{
    StrategyI s;
    s.name = "obeying(seed=" + std::to_string(seed) + ")";
    s.move = [f, g, seed](size_t round, const std::vector<IIMove>& ys, size_t depth) -> std::optional<Value> {
        if (round == 0) return f->generate(seed, depth);
        bool en = true;
        auto cs = valid_candidates(*g, ys[round - 1].value, depth, en);
        if (cs.empty()) return std::nullopt;
        return cs[mix64(seed + round) % cs.size()];
    };
    return s;
}

StrategyI replay_player(const Value& x0, std::vector<Value> continuation, ProblemPtr g)
{
    StrategyI s;
    s.name = "replay";
    s.move = [x0, continuation, g](size_t round, const std::vector<IIMove>& ys, size_t depth) -> std::optional<Value> {
        if (round == 0) return x0;
        bool en = true;
        auto cs = valid_candidates(*g, ys[round - 1].value, depth, en);
        if (cs.empty()) return std::nullopt;
        if (round - 1 < continuation.size()) {
            const Value& want = continuation[round - 1];
            for (const auto& c : cs)
                if (comparable(truncate_value(want, depth), c)) return c;
        }
        return cs.front();
    };
    return s;
}

// ---- code strategies -------------------------------------------------------------------------

StrategyII code_strategy(std::string name, const std::vector<CodeRound>& rounds, bool repeat)
{
    std::vector<std::pair<bool, MonotoneMap>> maps;
    for (const auto& r : rounds) maps.emplace_back(r.declare, map_from_code(r.code));
    StrategyII s;
    s.name = std::move(name);
    s.respond = [maps, repeat](size_t round, const std::vector<Value>& xs) -> std::optional<IIMove> {
        if (maps.empty()) return std::nullopt;
        if (round >= maps.size() && !repeat) return std::nullopt;
        const auto& [declare, m] = maps[std::min(round, maps.size() - 1)];
        Prefix p;
        for (size_t i = 0; i < xs.size(); ++i) {
            if (xs[i].kind != Value::Seq) return std::nullopt;
            p = i == 0 ? xs[0].seq : pair_prefixes(p, xs[i].seq);
        }
        return IIMove{declare, Value::of_seq(apply_map(m, p))};
    };
    return s;
}

StrategyII code_strategy_from_text(std::string name, const std::string& text)
{
    std::vector<CodeRound> rounds;
    bool repeat = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        std::string rest;
        std::getline(ls, rest);
        if (kw == "repeat") {
            repeat = true;
            continue;
        }
        if (kw != "query" && kw != "declare") throw std::invalid_argument("strategy: unknown keyword " + kw);
        map_from_code(rest);  // validates
        rounds.push_back({kw == "declare", rest});
    }
    if (rounds.empty()) throw std::invalid_argument("strategy: no rounds");
    return code_strategy(std::move(name), rounds, repeat);
}

namespace {

struct NamedCode {
    const char* name;
    std::vector<CodeRound> rounds;
    bool repeat;
};

const std::vector<NamedCode>& named_codes()
{
    static const std::vector<NamedCode> v = {
        {"echo", {{false, "echo"}, {true, "right"}}, false},
        {"declare-now", {{true, "echo"}}, false},
        {"const-0", {{true, "(const 0)"}}, false},
        {"const-1", {{true, "(const 1)"}}, false},
        {"two-queries", {{false, "echo"}, {false, "left"}, {true, "right"}}, false},
        {"never-declares", {{false, "(const 0,0,0,0)"}}, true},
        {"silent", {}, false},
    };
    return v;
}

}  // namespace

std::vector<std::string> code_strategy_names()
{
    std::vector<std::string> out;
    for (const auto& n : named_codes()) out.emplace_back(n.name);
    return out;
}

StrategyII named_code_strategy(const std::string& name)
{
    for (const auto& n : named_codes())
        if (name == n.name) return code_strategy(n.name, n.rounds, n.repeat);
    throw std::invalid_argument("unknown strategy " + name);
}

// ---- compositional product -------------------------------------------------------------------

Value star_instance(const Value& x0, const std::string& h0, const std::string& h1, const std::string& k)
{
    return Value::tuple({x0, Value::of_seq(code_to_prefix(h0)), Value::of_seq(code_to_prefix(h1)),
                         Value::of_seq(code_to_prefix(k))});
}

namespace {

struct StarCodes {
    MonotoneMap h0, h1, k;
};

std::optional<StarCodes> star_codes(const Value& x)
{
    if (x.kind != Value::Tuple || x.parts.size() != 4 || x.parts[0].kind != Value::Seq) return std::nullopt;
    std::string c[3];
    for (int i = 0; i < 3; ++i) {
        if (x.parts[i + 1].kind != Value::Seq) return std::nullopt;
        auto s = code_from_prefix(x.parts[i + 1].seq);
        if (!s) return std::nullopt;
        c[i] = *s;
    }
    try {
        return StarCodes{map_from_code(c[0]), map_from_code(c[1]), map_from_code(c[2])};
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

// All K-outputs over rule-obeying continuations; status Fail when II's play breaks the rule.
struct StarOutputs {
    Verdict status;
    std::vector<Prefix> outs;
};

StarOutputs star_outputs(const Problem& h, const Problem& g, const Value& x, size_t depth)
{
    StarOutputs r;
    auto codes = star_codes(x);
    if (!codes) {
        r.status = Verdict::fail("instance must be (x0, H0, H1, K) with valid map codes", 0);
        return r;
    }
    const Prefix x0 = truncate(x.parts[0].seq, depth);
    Value u0 = Value::of_seq(apply_map(codes->h0, x0));
    if (Verdict v = g.instance_valid(u0, depth); !v.ok()) {
        r.status = v.failed() ? Verdict::fail("first query invalid: " + v.reason, v.depth) : v;
        return r;
    }
    bool en = true;
    auto x1s = valid_candidates(g, u0, depth, en);
    if (!en) {
        r.status = Verdict::indeterminate("first query answers not enumerable");
        return r;
    }
    std::set<Prefix> seen;
    for (const auto& x1 : x1s) {
        if (x1.kind != Value::Seq) continue;
        Prefix p1 = pair_prefixes(x0, x1.seq);
        Value u1 = Value::of_seq(apply_map(codes->h1, p1));
        if (Verdict v = h.instance_valid(u1, depth); !v.ok()) {
            r.status = v.failed() ? Verdict::fail("second query invalid: " + v.reason, v.depth) : v;
            return r;
        }
        auto x2s = valid_candidates(h, u1, depth, en);
        if (!en) {
            r.status = Verdict::indeterminate("second query answers not enumerable");
            return r;
        }
        for (const auto& x2 : x2s) {
            if (x2.kind != Value::Seq) continue;
            Prefix z = truncate(apply_map(codes->k, pair_prefixes(p1, x2.seq)), depth);
            if (seen.insert(z).second) r.outs.push_back(z);
        }
    }
    return r;
}

}  // namespace

ProblemPtr star_product(ProblemPtr h, ProblemPtr g)
{
    auto p = std::make_shared<Problem>();
    p->name = "(" + h->name + "*" + g->name + ")";
    p->instance_valid = [h, g](const Value& x, size_t depth) {
        auto r = star_outputs(*h, *g, x, depth);
        if (r.status.failed()) return r.status;
        if (Verdict v = g->instance_valid(x.parts[0], depth); v.failed()) return v;
        return r.status;
    };
    p->solution_valid = [h, g](const Value& x, const Value& z, size_t depth) {
        if (z.kind != Value::Seq) return Verdict::fail("solution must be a sequence", 0);
        auto r = star_outputs(*h, *g, x, depth);
        if (!r.status.ok()) return r.status;
        Prefix want = truncate(z.seq, depth);
        for (const auto& o : r.outs)
            if (o == want) return Verdict::pass();
        return Verdict::fail("not K of any rule-obeying continuation", std::min(depth, want.size()));
    };
    p->generate = [g](uint64_t seed, size_t depth) {
        return star_instance(g->generate(seed, depth), "echo", "left", "(pair (compose left right) right)");
    };
    p->candidates = [h, g](const Value& x, size_t depth) -> std::optional<std::vector<Value>> {
        auto r = star_outputs(*h, *g, x, depth);
        if (r.status.kind == Verdict::Indeterminate) return std::nullopt;
        std::vector<Value> out;
        for (auto& o : r.outs) out.push_back(Value::of_seq(std::move(o)));
        return out;
    };
    return p;
}

// ---- play trees ------------------------------------------------------------------------------

const char* leaf_kind_name(PlayLeaf::Kind k)
{
    switch (k) {
    case PlayLeaf::Declared: return "declared";
    case PlayLeaf::Violation: return "violation";
    case PlayLeaf::Stall: return "stall";
    case PlayLeaf::Exhausted: return "exhausted";
    case PlayLeaf::NoAnswer: return "no-answer";
    default: return "unknown";
    }
}

Chooser valid_answers(ProblemPtr g)
{
    return [g](const std::vector<Value>&, const Value& q, size_t depth) -> std::optional<std::vector<Value>> {
        bool en = true;
        auto cs = valid_candidates(*g, q, depth, en);
        if (!en) return std::nullopt;
        return cs;
    };
}

PlayTree explore_plays(const Problem& g, const Value& x0, const StrategyII& s, size_t max_rounds, size_t depth,
                       const Chooser& choose, size_t leaf_budget)
{
    struct Node {
        std::vector<Value> moves;  // truncated to depth
        std::vector<IIMove> replies;
    };
    PlayTree t;
    std::deque<Node> queue;
    queue.push_back({{truncate_value(x0, depth)}, {}});
    while (!queue.empty()) {
        Node n = std::move(queue.front());
        queue.pop_front();
        ++t.nodes;
        if (t.leaves.size() >= leaf_budget) {
            t.truncated = true;
            break;
        }
        size_t round = n.moves.size() - 1;
        PlayLeaf leaf;
        leaf.moves = n.moves;
        leaf.replies = n.replies;
        auto y = s.respond(round, n.moves);
        if (!y) {
            leaf.kind = PlayLeaf::Stall;
            t.leaves.push_back(std::move(leaf));
            continue;
        }
        leaf.replies.push_back(*y);
        if (y->declare) {
            leaf.kind = PlayLeaf::Declared;
            leaf.value = y->value;
            t.leaves.push_back(std::move(leaf));
            continue;
        }
        if (Verdict v = g.instance_valid(y->value, depth); v.failed()) {
            leaf.kind = PlayLeaf::Violation;
            leaf.check = v;
            t.leaves.push_back(std::move(leaf));
            continue;
        }
        if (round + 1 >= max_rounds) {
            leaf.kind = PlayLeaf::Exhausted;
            t.leaves.push_back(std::move(leaf));
            continue;
        }
        auto answers = choose(n.moves, y->value, depth);
        if (!answers || answers->empty()) {
            leaf.kind = answers ? PlayLeaf::NoAnswer : PlayLeaf::Unknown;
            t.leaves.push_back(std::move(leaf));
            continue;
        }
        for (const auto& a : *answers) {
            Node c{n.moves, leaf.replies};
            c.moves.push_back(truncate_value(a, depth));
            queue.push_back(std::move(c));
        }
    }
    return t;
}

ClosureResult eval_game_closure(ProblemPtr g, const Value& x0, const StrategyII& s, size_t max_rounds,
                                size_t depth)
{
    ClosureResult r;
    PlayTree t = explore_plays(*g, x0, s, max_rounds, depth, valid_answers(g));
    std::set<std::string> seen;
    Verdict status = Verdict::pass();
    for (const auto& l : t.leaves) {
        switch (l.kind) {
        case PlayLeaf::Declared:
            if (seen.insert(value_to_text(l.value)).second) {
                r.values.push_back(l.value);
                r.plays.emplace_back(l.moves.begin() + 1, l.moves.end());
            }
            break;
        case PlayLeaf::Violation:
            status = first_failure(status, Verdict::fail("II violates the rule at round " +
                                                             std::to_string(l.moves.size() - 1) + ": " +
                                                             l.check.reason,
                                                         l.check.depth));
            break;
        case PlayLeaf::Stall:
            status = first_failure(status, Verdict::indeterminate("no move on some branch at this depth"));
            break;
        case PlayLeaf::Exhausted:
            status = first_failure(status, Verdict::indeterminate("round bound reached on some branch"));
            break;
        case PlayLeaf::Unknown:
            status = first_failure(status, Verdict::indeterminate("answers not enumerable"));
            break;
        case PlayLeaf::NoAnswer: break;  // I cannot obey here: not a rule-obeying continuation
        }
    }
    if (t.truncated) status = first_failure(status, Verdict::indeterminate("play tree exceeds the leaf budget"));
    r.status = status;
    return r;
}

}  // namespace ww
