#ifndef WW_REDUCTIONS_HPP
#define WW_REDUCTIONS_HPP

#include "ww/problems.hpp"

#include <string>
#include <vector>

namespace ww {

// A reduction f <= g: inner maps f-instances to g-instances, outer maps (x, y) to f-solutions.
// Both act on finite approximations and must be monotone in them.
struct Witness {
    std::string name;
    ProblemPtr f, g;
    std::function<Value(const Value& x)> inner;
    std::function<Value(const Value& x, const Value& y)> outer;
    // Optional: outer with x fixed, doing per-instance work once.
    std::function<std::function<Value(const Value& y)>(const Value& x)> bind_outer;
};

std::function<Value(const Value& y)> outer_at(const Witness& w, const Value& x);

// Paired prefix <x(0), y(0), x(1), y(1), ...>, the shorter side padded with blanks.
Prefix pair_prefixes(const Prefix& x, const Prefix& y);
std::pair<Prefix, Prefix> unpair_prefixes(const Prefix& p);

// Witness on sequence problems from an inner map and an outer map on the paired prefix.
Witness from_maps(std::string name, ProblemPtr f, ProblemPtr g, MonotoneMap h, MonotoneMap k);

struct SeedReport {
    uint64_t seed = 0;
    Verdict verdict;
    size_t stage = 0;    // depth of the refutation
    char clause = '-';   // 'a': inner output invalid, 'b': outer output wrong, 'i': f-instance invalid
};

struct WitnessReport {
    Verdict verdict;
    std::vector<SeedReport> seeds;
};

// For each seed: generate x, grow it until inner delivers depth, check (a) the g-instance and
// (b) every unrefuted g-candidate y against f through outer.
WitnessReport verify_witness(const Witness& w, const std::vector<uint64_t>& seeds, size_t depth);
SeedReport verify_witness_on(const Witness& w, const Value& x, size_t depth);

// Approximation order on values: a is extended by b.
bool value_prefix_of(const Value& a, const Value& b);

// Inner and outer are checked on `pairs` truncation pairs of generated instances.
Verdict check_witness_monotone(const Witness& w, uint64_t seed, size_t pairs, size_t depth);

// Shipped reductions. Names: dne-limn, dml-rt12, aou-clop, two-clop, clop-limn, beq-wkl2,
// ivtlin-clop. Directions are reported as "<name>" and "<name>/back" where both exist.
std::vector<std::string> reduction_names();
std::vector<Witness> shipped_witnesses(const std::string& name);
std::vector<Witness> all_shipped_witnesses();

std::pair<Witness, Witness> red_dne_limn();
std::pair<Witness, Witness> red_dml_rt12();
Witness red_aou_le_clop();
Witness red_two_le_clop();
Witness red_clop_le_limn();
std::pair<Witness, Witness> red_beq_wkl2();
std::pair<Witness, Witness> red_ivtlin_clop();

// Tree constructions exposed for tests.
LevelTree beq_backward_tree(const std::vector<Rational>& q);        // the live-node 2-tree T
LevelTree beq_backward_star(const LevelTree& t);                      // its rational refinement
std::vector<Rational> beq_forward_name(const LevelTree& t);
std::vector<std::vector<Point>> ivt_forward_stages(const LevelTree& t);
LevelTree ivt_backward_tree(const std::vector<std::vector<Point>>& stages);

// Encodes a bit-string as a natural number (1 << len) + bits.
uint64_t string_code(const BitString& s);
std::optional<BitString> string_decode(uint64_t c);

}  // namespace ww

#endif
