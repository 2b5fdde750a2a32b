#include "ww/value.hpp"

#include <sstream>
#include <stdexcept>

namespace ww {

Value Value::of_seq(Prefix p)
{
    Value v;
    v.kind = Seq;
    v.seq = std::move(p);
    return v;
}

Value Value::of_tree(LevelTree t)
{
    Value v;
    v.kind = Tree;
    v.tree = std::move(t);
    return v;
}

Value Value::of_reals(std::vector<Rational> r)
{
    Value v;
    v.kind = Reals;
    v.reals = std::move(r);
    return v;
}

Value Value::of_pl(std::vector<std::vector<Point>> s)
{
    Value v;
    v.kind = PL;
    v.pl = std::move(s);
    return v;
}

Value Value::tuple(std::vector<Value> parts)
{
    Value v;
    v.kind = Tuple;
    v.parts = std::move(parts);
    return v;
}

bool Value::operator==(const Value& o) const
{
    if (kind != o.kind) return false;
    switch (kind) {
    case Seq: return seq == o.seq;
    case Tree: return tree == o.tree;
    case Reals: return reals == o.reals;
    case PL: return pl == o.pl;
    default: return parts == o.parts;
    }
}

const char* value_kind_name(Value::Kind k)
{
    switch (k) {
    case Value::Seq: return "seq";
    case Value::Tree: return "tree";
    case Value::Reals: return "reals";
    case Value::PL: return "pl";
    default: return "tuple";
    }
}

std::string rational_text(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_text(const std::string& s)
{
    std::string t;
    for (char c : s)
        if (c != ' ' && c != '\t' && c != '\r') t += c;
    if (t.empty()) throw std::invalid_argument("empty rational");
    for (char c : t)
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw std::invalid_argument("bad rational: " + s);
    try {
        Rational q(t);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational: " + s);
    }
}

Rational pow2(int e)
{
    Rational q(1);
    if (e >= 0) {
        mpz_class n(1);
        n <<= static_cast<unsigned>(e);
        q = n;
    } else {
        mpz_class d(1);
        d <<= static_cast<unsigned>(-e);
        q = Rational(mpz_class(1), d);
    }
    return q;
}

namespace {

void write_block(std::ostringstream& os, const Value& v)
{
    switch (v.kind) {
    case Value::Seq:
        os << "seq\n" << prefix_to_text(v.seq) << "\nend\n";
        break;
    case Value::Tree:
        os << "tree\n" << tree_to_text(v.tree) << "end\n";
        break;
    case Value::Reals:
        os << "reals\n";
        for (size_t n = 0; n < v.reals.size(); ++n) os << n << ": " << rational_text(v.reals[n]) << '\n';
        os << "end\n";
        break;
    case Value::PL:
        os << "pl\n";
        for (size_t s = 0; s < v.pl.size(); ++s) {
            os << s << ':';
            for (size_t i = 0; i < v.pl[s].size(); ++i)
                os << (i ? ";" : " ") << rational_text(v.pl[s][i].x) << ',' << rational_text(v.pl[s][i].y);
            os << '\n';
        }
        os << "end\n";
        break;
    case Value::Tuple:
        os << "tuple " << v.parts.size() << '\n';
        for (const auto& p : v.parts) write_block(os, p);
        break;
    }
}

struct Lines {
    std::vector<std::string> ls;
    size_t at = 0;
    const std::string& next()
    {
        if (at >= ls.size()) throw std::invalid_argument("unexpected end of value text");
        return ls[at++];
    }
};

std::vector<std::string> body_until_end(Lines& in)
{
    std::vector<std::string> body;
    for (;;) {
        const std::string& l = in.next();
        if (l == "end") return body;
        body.push_back(l);
    }
}

size_t parse_index(const std::string& line, size_t expect)
{
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("missing ':' in line: " + line);
    size_t n = 0;
    try {
        n = std::stoull(line.substr(0, colon));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad index in line: " + line);
    }
    if (n != expect) throw std::invalid_argument("indices out of order at line: " + line);
    return colon;
}

Value read_block(Lines& in)
{
    std::string head = in.next();
    if (head == "seq") {
        auto body = body_until_end(in);
        if (body.size() > 1) throw std::invalid_argument("seq block has more than one line");
        return Value::of_seq(body.empty() ? Prefix{} : prefix_from_text(body[0]));
    }
    if (head == "tree") {
        std::string text;
        for (const auto& l : body_until_end(in)) text += l + "\n";
        return Value::of_tree(tree_from_text(text));
    }
    if (head == "reals") {
        std::vector<Rational> rs;
        for (const auto& l : body_until_end(in)) {
            size_t c = parse_index(l, rs.size());
            rs.push_back(rational_from_text(l.substr(c + 1)));
        }
        return Value::of_reals(std::move(rs));
    }
    if (head == "pl") {
        std::vector<std::vector<Point>> st;
        for (const auto& l : body_until_end(in)) {
            size_t c = parse_index(l, st.size());
            std::vector<Point> pts;
            std::stringstream ss(l.substr(c + 1));
            std::string tok;
            while (std::getline(ss, tok, ';')) {
                auto comma = tok.find(',');
                if (comma == std::string::npos) throw std::invalid_argument("bad point: " + tok);
                pts.push_back({rational_from_text(tok.substr(0, comma)), rational_from_text(tok.substr(comma + 1))});
            }
            st.push_back(std::move(pts));
        }
        return Value::of_pl(std::move(st));
    }
    if (head.rfind("tuple ", 0) == 0) {
        size_t n = 0;
        try {
            n = std::stoull(head.substr(6));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad tuple header: " + head);
        }
        std::vector<Value> parts;
        for (size_t i = 0; i < n; ++i) parts.push_back(read_block(in));
        return Value::tuple(std::move(parts));
    }
    throw std::invalid_argument("unknown value kind: " + head);
}

}  // namespace

std::string value_to_text(const Value& v)
{
    std::ostringstream os;
    write_block(os, v);
    return os.str();
}

Value value_from_text(const std::string& s)
{
    Lines in;
    std::istringstream is(s);
    std::string l;
    while (std::getline(is, l)) {
        if (!l.empty() && l.back() == '\r') l.pop_back();
        if (!l.empty() && l[0] == '#') continue;
        in.ls.push_back(l);
    }
    while (!in.ls.empty() && in.ls.back().empty()) in.ls.pop_back();
    Value v = read_block(in);
    if (in.at != in.ls.size()) throw std::invalid_argument("trailing content after value");
    return v;
}

std::string value_summary(const Value& v)
{
    switch (v.kind) {
    case Value::Seq: return "[" + prefix_to_text(v.seq) + "]";
    case Value::Tree: {
        std::string s = "tree(depth=" + std::to_string(v.tree.depth());
        if (!v.tree.levels.empty()) {
            const Level& l = v.tree.levels.back();
            s += ", last=";
            if (l.size() <= 4) {
                auto ns = l.nodes();
                for (size_t i = 0; i < ns.size(); ++i) s += (i ? "|" : "") + ns[i].text();
            } else {
                s += std::to_string(l.size()) + " nodes";
            }
        }
        return s + ")";
    }
    case Value::Reals:
        return "reals(n=" + std::to_string(v.reals.size()) +
               (v.reals.empty() ? "" : ", last=" + rational_text(v.reals.back())) + ")";
    case Value::PL: return "pl(stages=" + std::to_string(v.pl.size()) + ")";
    default: {
        std::string s = "(";
        for (size_t i = 0; i < v.parts.size(); ++i) s += (i ? ", " : "") + value_summary(v.parts[i]);
        return s + ")";
    }
    }
}

Value truncate_value(const Value& v, size_t depth)
{
    switch (v.kind) {
    case Value::Seq: return Value::of_seq(truncate(v.seq, depth));
    case Value::Tree: return Value::of_tree(v.tree.truncated(depth));
    case Value::Reals: {
        std::vector<Rational> r(v.reals.begin(), v.reals.begin() + static_cast<std::ptrdiff_t>(std::min(depth, v.reals.size())));
        return Value::of_reals(std::move(r));
    }
    case Value::PL: {
        std::vector<std::vector<Point>> s(v.pl.begin(), v.pl.begin() + static_cast<std::ptrdiff_t>(std::min(depth, v.pl.size())));
        return Value::of_pl(std::move(s));
    }
    default: {
        std::vector<Value> parts;
        for (const auto& p : v.parts) parts.push_back(truncate_value(p, depth));
        return Value::tuple(std::move(parts));
    }
    }
}

size_t value_depth(const Value& v)
{
    switch (v.kind) {
    case Value::Seq: return v.seq.size();
    case Value::Tree: return v.tree.depth();
    case Value::Reals: return v.reals.size();
    case Value::PL: return v.pl.size();
    default: {
        size_t d = SIZE_MAX;
        for (const auto& p : v.parts) d = std::min(d, value_depth(p));
        return d == SIZE_MAX ? 0 : d;
    }
    }
}

Rational pl_eval(const std::vector<Point>& pts, const Rational& x)
{
    if (pts.empty()) return 0;
    if (x <= pts.front().x) return pts.front().y;
    for (size_t i = 1; i < pts.size(); ++i) {
        if (x <= pts[i].x) {
            const Point& a = pts[i - 1];
            const Point& b = pts[i];
            if (b.x == a.x) return b.y;
            return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
        }
    }
    return pts.back().y;
}

std::optional<Rational> dyadic_of(const Prefix& bits, size_t n)
{
    Rational q(0);
    for (size_t i = 0; i < n && i < bits.size(); ++i) {
        if (!bits[i] || *bits[i] > 1) return std::nullopt;
        if (*bits[i]) q += pow2(-static_cast<int>(i) - 1);
    }
    return q;
}

}  // namespace ww
