#ifndef WW_VALUE_HPP
#define WW_VALUE_HPP

#include "ww/core.hpp"
#include "ww/trees.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ww {

using Rational = mpq_class;

struct Point {
    Rational x, y;
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
};

// A finite approximation of an instance or solution: a sequence prefix, a tree, the
// approximations q_0, q_1, ... of a regular Cauchy name, the stages of a piecewise linear
// approximation, or a tuple of such values.
struct Value {
    enum Kind { Seq, Tree, Reals, PL, Tuple };
    Kind kind = Seq;
    Prefix seq;
    LevelTree tree;
    std::vector<Rational> reals;
    std::vector<std::vector<Point>> pl;
    std::vector<Value> parts;

    static Value of_seq(Prefix p);
    static Value of_tree(LevelTree t);
    static Value of_reals(std::vector<Rational> r);
    static Value of_pl(std::vector<std::vector<Point>> s);
    static Value tuple(std::vector<Value> parts);

    bool operator==(const Value& o) const;
    bool operator!=(const Value& o) const { return !(*this == o); }
};

const char* value_kind_name(Value::Kind k);

std::string rational_text(const Rational& q);
Rational rational_from_text(const std::string& s);
Rational pow2(int e);  // 2^e, e may be negative

// Block format: a header line naming the kind, then the body in its module format.
std::string value_to_text(const Value& v);
// Throws std::invalid_argument on malformed input.
Value value_from_text(const std::string& s);

// Short single-line rendering for logs and transcripts.
std::string value_summary(const Value& v);

// Truncation of a value to an observation depth (entries, levels, approximations, stages).
Value truncate_value(const Value& v, size_t depth);
// Natural observation depth of a value.
size_t value_depth(const Value& v);

// Piecewise linear evaluation; points must have increasing x.
Rational pl_eval(const std::vector<Point>& pts, const Rational& x);
// Binary digits b_0..b_{n-1} -> sum b_i 2^{-i-1}; Fails (nullopt) on non-bit entries.
std::optional<Rational> dyadic_of(const Prefix& bits, size_t n);

}  // namespace ww

#endif
