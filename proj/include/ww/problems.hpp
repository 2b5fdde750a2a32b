#ifndef WW_PROBLEMS_HPP
#define WW_PROBLEMS_HPP

#include "ww/core.hpp"
#include "ww/trees.hpp"
#include "ww/value.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ww {

// Cap on enumerated candidate solutions; larger sets are sampled deterministically.
constexpr size_t kCandidateBudget = 4096;

// Observation depth from which discrete-limit streams are expected to have settled by half
// the observed depth.
constexpr size_t kSettleMinDepth = 16;

// A row of a Sigma-0-2 matrix showing this many leading ones is taken as witnessing the
// existential (the row-window promise of the matrix encodings).
constexpr size_t kRowWindow = 4;

struct Problem {
    std::string name;
    std::function<Verdict(const Value& x, size_t depth)> instance_valid;
    std::function<Verdict(const Value& x, const Value& y, size_t depth)> solution_valid;
    std::function<Value(uint64_t seed, size_t depth)> generate;
    // Candidate solutions at depth; nullopt when the set is not enumerable.
    std::function<std::optional<std::vector<Value>>(const Value& x, size_t depth)> candidates;
};

using ProblemPtr = std::shared_ptr<const Problem>;

// Throws std::invalid_argument for unknown names.
ProblemPtr catalog_problem(const std::string& name);
std::vector<std::string> catalog_names();

ProblemPtr product(ProblemPtr p, ProblemPtr q);
ProblemPtr finite_parallelization(ProblemPtr p);
ProblemPtr jump_combinator(ProblemPtr d);

// Instance builder for finite_parallelization.
Value parallel_instance(const std::vector<Value>& xs);

// Cantor pairing used by the matrix encodings.
uint64_t cantor_pair(uint64_t n, uint64_t m);
std::pair<uint64_t, uint64_t> cantor_unpair(uint64_t k);

// Sigma-0-2 matrix access: entry (row, col) of the stream, if delivered.
Entry dne_entry(const Prefix& x, uint64_t row, uint64_t col);
Entry dml_entry(const Prefix& x, int matrix, uint64_t row, uint64_t col);

// Nodes of length L meeting every constraint [q_k - 2^-k, q_k + 2^-k], k <= L.
std::vector<BitString> be_live_nodes(const std::vector<Rational>& q, size_t L, size_t cap = kCandidateBudget);
// Dyadic interval of a bit-string.
std::pair<Rational, Rational> dyadic_interval(const BitString& w);

// Piecewise linear helpers for IVT_lin instances.
bool pl_stabilized(const std::vector<std::vector<Point>>& stages);
// Zero set of a PL function on [0,1]: closed intervals [lo, hi] (lo == hi for points).
std::vector<std::pair<Rational, Rational>> pl_zero_set(const std::vector<Point>& pts);
Rational pl_lipschitz(const std::vector<Point>& pts);

// Deterministic sample of at most budget values from [lo, hi], always including both ends.
std::vector<uint64_t> sample_range(uint64_t lo, uint64_t hi, size_t budget);

// Monotone map codes used by the jump combinator and by strategy files:
//   echo | left | right | (const 1,0,1) | (take n) | (compose A B) | (pair A B) | (branch i A B)
// left/right project an interleaved pair; pair interleaves two outputs.
// Throws std::invalid_argument on malformed code.
MonotoneMap map_from_code(const std::string& code);
// Text code carried inside a sequence value (one entry per character).
Prefix code_to_prefix(const std::string& code);
std::optional<std::string> code_from_prefix(const Prefix& p);
Value jump_instance(const std::string& h_code, const std::string& k_code, const Value& x);

}  // namespace ww

#endif
