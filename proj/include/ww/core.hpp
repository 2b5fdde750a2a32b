#ifndef WW_CORE_HPP
#define WW_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ww {

// One entry of a finite approximation; nullopt is the "no information yet" symbol.
using Entry = std::optional<uint64_t>;
using Prefix = std::vector<Entry>;

Prefix make_prefix(std::initializer_list<uint64_t> xs);
Prefix prefix_of(const std::vector<uint64_t>& xs);
bool is_prefix_of(const Prefix& p, const Prefix& q);
Prefix truncate(const Prefix& p, size_t n);
// Number of leading defined entries.
size_t defined_length(const Prefix& p);

std::string prefix_to_text(const Prefix& p);
// Throws std::invalid_argument on malformed text.
Prefix prefix_from_text(const std::string& s);

struct Verdict {
    enum Kind { Pass, Fail, Indeterminate };
    Kind kind = Pass;
    std::string reason;
    size_t depth = 0;

    static Verdict pass() { return {}; }
    static Verdict fail(std::string why, size_t d) { return {Fail, std::move(why), d}; }
    static Verdict indeterminate(std::string why) { return {Indeterminate, std::move(why), 0}; }

    bool ok() const { return kind == Pass; }
    bool failed() const { return kind == Fail; }
};

std::string verdict_to_text(const Verdict& v);

// Combine: the earliest Fail wins, then Indeterminate, else Pass.
Verdict first_failure(const Verdict& a, const Verdict& b);

struct MonotoneMap {
    std::string name;
    std::function<Prefix(const Prefix&)> evaluator;
    size_t fuel = 1u << 20;
};

// Reads at most m.fuel entries of p.
Prefix apply_map(const MonotoneMap& m, const Prefix& p);
// Indeterminate when p is longer than the fuel allows.
std::pair<Prefix, Verdict> apply_map_checked(const MonotoneMap& m, const Prefix& p);
MonotoneMap compose_maps(const MonotoneMap& m1, const MonotoneMap& m2);
Verdict check_monotonicity(const MonotoneMap& m,
                           const std::vector<std::pair<Prefix, Prefix>>& samples);

MonotoneMap identity_map();
MonotoneMap empty_map();
MonotoneMap scale_map(uint64_t factor);

// splitmix64 step, used to derive per-seed streams deterministically.
uint64_t mix64(uint64_t x);

}  // namespace ww

#endif
