#ifndef WW_ADVERSARIES_HPP
#define WW_ADVERSARIES_HPP

#include "ww/games.hpp"

#include <string>
#include <vector>

namespace ww {

struct StageEvent {
    size_t stage = 0;
    std::string action;
    std::string data;
};

struct Certificate {
    enum Kind { None, Refutation, IIViolation, NonTotal };
    Kind kind = None;
    std::vector<Value> continuation;  // I's moves x_1, x_2, ...
    std::optional<Value> refuted;     // the declared value shown wrong
    size_t round = 0;                 // II's round of the decisive move
    std::string note;
};

const char* certificate_kind_name(Certificate::Kind k);

struct AdversaryRun {
    std::string adversary, strategy;
    ProblemPtr f, g;
    TreeClass tree_class = TreeClass::Unrestricted;
    size_t max_stage = 0, stages = 0, max_rounds = 0;
    Value built;                       // I's first move at the last stage
    std::vector<StageEvent> log;
    Verdict safety;                    // class validator at every stage, first failure kept
    size_t actions = 0;                // non-default stages
    size_t ceiling = 0;                // bound on actions derived from the construction
    std::string ceiling_rule;
    Certificate cert;
    std::optional<Transcript> replay;  // play_game with the built instance and the continuation

    bool victory() const { return replay && replay->verdict == Outcome::IWins; }
};

std::string run_to_text(const AdversaryRun& r);

// Tree-building adversaries; stage s shows the strategy the tree built so far (depth s, at
// most kMaxTreeDepth).
AdversaryRun adv_aou_vs_two_star(const StrategyII& s, size_t max_stage);
AdversaryRun adv_two_vs_aou_game(const StrategyII& s, size_t max_stage);
AdversaryRun adv_clop_vs_mixed(const StrategyII& s, size_t max_stage);
AdversaryRun adv_conv_vs_triple(const StrategyII& s, size_t max_stage);

// A semicontinuous bound: candidates g(n), n < b, each a monotone map reading the code of the
// tree (level k gives entries l_k, r_k as numbers); b_s is the stage-s approximation of b.
struct SemiboundStrategy {
    std::string name;
    std::function<MonotoneMap(size_t n)> family;
    std::function<uint64_t(size_t s)> bound;
};
AdversaryRun adv_two_vs_semibound(const SemiboundStrategy& sb, size_t max_stage);
// The game form of a semibound strategy: II queries [b] and declares g(n) on I's answer [n].
StrategyII semibound_game_strategy(const SemiboundStrategy& sb);
// Instance [b], solutions [n] with n < b.
ProblemPtr bounded_index_problem();
Prefix two_tree_code(const LevelTree& t, size_t depth);

struct BoundStream {
    std::string strategy;
    size_t max_stage = 0, depth = 0;
    std::vector<Value> values;         // B in order of enumeration
    std::vector<size_t> first_stage;   // stage at which each value entered B
    std::vector<size_t> sizes;         // |B_s| for s = 1..max_stage
    std::vector<StageEvent> log;
};

// Enumerates declared values at accessible nodes of the (RT12 x Lim_N) play tree.
BoundStream bound_extract(const Value& x0, const StrategyII& s, size_t max_stage, size_t depth);
std::string bound_to_text(const BoundStream& b);

// Corpora. Adversary names: aou-vs-two-star, two-vs-aou-game, clop-vs-mixed,
// two-vs-semibound, conv-vs-triple.
std::vector<std::string> adversary_names();
std::vector<StrategyII> adversary_corpus(const std::string& adversary);
std::vector<StrategyII> sabotage_corpus(const std::string& adversary);
std::vector<SemiboundStrategy> semibound_corpus();
std::vector<SemiboundStrategy> semibound_sabotage();
std::vector<StrategyII> bound_corpus();
// Throws std::invalid_argument for unknown adversary names.
AdversaryRun run_adversary(const std::string& adversary, const std::string& strategy, size_t max_stage);

// The (RT12 x Lim_N) game problem and a generated first move for bound extraction.
ProblemPtr rt_lim_problem();
Value bound_instance(uint64_t seed, size_t depth);

}  // namespace ww

#endif
