#ifndef WW_GAMES_HPP
#define WW_GAMES_HPP

#include "ww/problems.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ww {

// A move of Player II: a query to g, or a declaration of victory with a value for f.
struct IIMove {
    bool declare = false;
    Value value;
};

// Player II sees I's moves x_0..x_n, each truncated to the play depth. nullopt: no move
// (yet); at a fixed depth that is a stall.
struct StrategyII {
    std::string name;
    std::function<std::optional<IIMove>(size_t round, const std::vector<Value>& xs)> respond;
};

// Player I: round 0 is the instance x_0, round n+1 answers II's n-th query. Unrestricted.
struct StrategyI {
    std::string name;
    std::function<std::optional<Value>(size_t round, const std::vector<IIMove>& ys, size_t depth)> move;
};

enum class Player { I, II };
enum class Outcome { IIWins, IWins, Undecided };

const char* player_name(Player p);
const char* outcome_name(Outcome o);

struct Round {
    Player player = Player::I;
    size_t index = 0;
    bool declare = false;
    Value move;
    Verdict check;
};

struct Transcript {
    std::string f, g, strategy_i, strategy_ii;
    size_t max_rounds = 0, depth = 0;
    std::vector<Round> rounds;
    Outcome verdict = Outcome::Undecided;
    std::optional<Value> declared;
    std::string note;
};

// Least length a declared f-solution must reach at this depth: the shortest enumerated
// f-candidate, 0 when f has none.
size_t declared_depth_needed(const Problem& f, const Value& x0, size_t depth);

// Plays G(f, g). II wins on I's earlier rule violation or a valid declaration; I wins on II's
// earlier violation, a stall, or a declaration that is wrong or not delivered to the needed
// length. Undecided when max_rounds pass without a decision.
Transcript play_game(const Problem& f, const Problem& g, const StrategyI& si, const StrategyII& sii,
                     size_t max_rounds, size_t depth);

// Earliest rule failure in round order and its owner.
std::optional<std::pair<Player, size_t>> check_rules(const Transcript& t);

std::string transcript_to_text(const Transcript& t);

// Player I answering each query with a valid candidate of g (the seed picks among them) after
// opening with f.generate(seed, depth).
StrategyI obeying_player(ProblemPtr f, ProblemPtr g, uint64_t seed);
// Player I opening with x0, then answering with the valid candidate closest to a recorded
// continuation move (first valid candidate when none matches).
StrategyI replay_player(const Value& x0, std::vector<Value> continuation, ProblemPtr g);

// Strategies on sequence games given by map codes. Round n reads the nested pairing
// <...<<x_0, x_1>, x_2>..., x_n>; after the listed rounds the last one repeats if `repeat`.
struct CodeRound {
    bool declare = false;
    std::string code;
};
StrategyII code_strategy(std::string name, const std::vector<CodeRound>& rounds, bool repeat = false);
// Lines: "query CODE", "declare CODE", "repeat"; '#' starts a comment.
// Throws std::invalid_argument on malformed text.
StrategyII code_strategy_from_text(std::string name, const std::string& text);
std::vector<std::string> code_strategy_names();
// Throws std::invalid_argument for unknown names.
StrategyII named_code_strategy(const std::string& name);

// h * g as a two-query game: instance Tuple(x_0, code H0, code H1, code K); II queries
// g with u_0 = H0(x_0), then h with u_1 = H1(<x_0, x_1>), and declares K(<<x_0, x_1>, x_2>).
ProblemPtr star_product(ProblemPtr h, ProblemPtr g);
Value star_instance(const Value& x0, const std::string& h0, const std::string& h1, const std::string& k);

// ---- play trees ------------------------------------------------------------------------------

// Answers Player I considers for a query, given the moves so far; nullopt: not enumerable.
using Chooser = std::function<std::optional<std::vector<Value>>(const std::vector<Value>& xs,
                                                                  const Value& query, size_t depth)>;
// All candidates of g passing g.solution_valid.
Chooser valid_answers(ProblemPtr g);

struct PlayLeaf {
    enum Kind { Declared, Violation, Stall, Exhausted, NoAnswer, Unknown };
    Kind kind = Declared;
    std::vector<Value> moves;  // x_0, x_1, ... (x_0 as given)
    std::vector<IIMove> replies;
    Value value;               // declared value
    Verdict check;             // the failing check for Violation
};

const char* leaf_kind_name(PlayLeaf::Kind k);

struct PlayTree {
    std::vector<PlayLeaf> leaves;
    size_t nodes = 0;
    bool truncated = false;  // leaf budget reached
};

// Breadth-first over I's answers to II's queries.
PlayTree explore_plays(const Problem& g, const Value& x0, const StrategyII& s, size_t max_rounds, size_t depth,
                       const Chooser& choose, size_t leaf_budget = 1u << 14);

struct ClosureResult {
    Verdict status;
    std::vector<Value> values;               // distinct declared values, in discovery order
    std::vector<std::vector<Value>> plays;   // a play (x_1, x_2, ...) for each value
};

// Declared values over all rule-obeying continuations: the finite-depth g^Game(x_0, s).
// Fail if II violates the rule on some branch; Indeterminate on stalls, round exhaustion or
// non-enumerable candidates.
ClosureResult eval_game_closure(ProblemPtr g, const Value& x0, const StrategyII& s, size_t max_rounds,
                                size_t depth);

}  // namespace ww

#endif
