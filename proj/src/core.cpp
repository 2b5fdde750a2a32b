#include "ww/core.hpp"

#include <sstream>
#include <stdexcept>

namespace ww {

Prefix make_prefix(std::initializer_list<uint64_t> xs)
{
    Prefix p;
    for (uint64_t x : xs) p.emplace_back(x);
    return p;
}

Prefix prefix_of(const std::vector<uint64_t>& xs)
{
    Prefix p;
    p.reserve(xs.size());
    for (uint64_t x : xs) p.emplace_back(x);
    return p;
}

bool is_prefix_of(const Prefix& p, const Prefix& q)
{
    if (p.size() > q.size()) return false;
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != q[i]) return false;
    return true;
}

Prefix truncate(const Prefix& p, size_t n)
{
    if (p.size() <= n) return p;
    return Prefix(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n));
}

size_t defined_length(const Prefix& p)
{
    size_t n = 0;
    while (n < p.size() && p[n]) ++n;
    return n;
}

std::string prefix_to_text(const Prefix& p)
{
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += p[i] ? std::to_string(*p[i]) : "_";
    }
    return out;
}

Prefix prefix_from_text(const std::string& s)
{
    Prefix p;
    if (s.empty()) return p;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t a = tok.find_first_not_of(" \t");
        size_t b = tok.find_last_not_of(" \t\r\n");
        if (a == std::string::npos) throw std::invalid_argument("empty prefix entry");
        tok = tok.substr(a, b - a + 1);
        if (tok == "_") {
            p.emplace_back(std::nullopt);
            continue;
        }
        for (char c : tok)
            if (c < '0' || c > '9') throw std::invalid_argument("bad prefix entry: " + tok);
        p.emplace_back(std::stoull(tok));
    }
    if (!s.empty() && s.back() == ',') throw std::invalid_argument("trailing comma in prefix");
    return p;
}

std::string verdict_to_text(const Verdict& v)
{
    switch (v.kind) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail(" + v.reason + ", depth=" + std::to_string(v.depth) + ")";
    default: return "Indeterminate(" + v.reason + ")";
    }
}

Verdict first_failure(const Verdict& a, const Verdict& b)
{
    if (a.failed() && b.failed()) return a.depth <= b.depth ? a : b;
    if (a.failed()) return a;
    if (b.failed()) return b;
    if (a.kind == Verdict::Indeterminate) return a;
    return b;
}

Prefix apply_map(const MonotoneMap& m, const Prefix& p)
{
    if (!m.evaluator) return {};
    return m.evaluator(truncate(p, m.fuel));
}

std::pair<Prefix, Verdict> apply_map_checked(const MonotoneMap& m, const Prefix& p)
{
    Prefix out = apply_map(m, p);
    if (p.size() > m.fuel) return {out, Verdict::indeterminate("fuel exhausted")};
    return {out, Verdict::pass()};
}

MonotoneMap compose_maps(const MonotoneMap& m1, const MonotoneMap& m2)
{
    MonotoneMap r;
    r.name = m1.name + ";" + m2.name;
    r.fuel = m1.fuel;
    r.evaluator = [m1, m2](const Prefix& p) { return apply_map(m2, apply_map(m1, p)); };
    return r;
}

Verdict check_monotonicity(const MonotoneMap& m,
                           const std::vector<std::pair<Prefix, Prefix>>& samples)
{
    for (const auto& [p, q] : samples)
        if (!is_prefix_of(p, q)) throw std::invalid_argument("sample pair not in prefix relation");
    for (const auto& [p, q] : samples) {
        Prefix mp = apply_map(m, p), mq = apply_map(m, q);
        if (!is_prefix_of(mp, mq))
            return Verdict::fail("map " + m.name + " not monotone on " + prefix_to_text(p) +
                                     " <= " + prefix_to_text(q),
                                 q.size());
    }
    return Verdict::pass();
}

MonotoneMap identity_map()
{
    return {"identity", [](const Prefix& p) { return p; }};
}

MonotoneMap empty_map()
{
    return {"empty", [](const Prefix&) { return Prefix{}; }};
}

MonotoneMap scale_map(uint64_t factor)
{
    return {"scale" + std::to_string(factor), [factor](const Prefix& p) {
                Prefix out;
                out.reserve(p.size());
                for (const Entry& e : p) out.push_back(e ? Entry(*e * factor) : std::nullopt);
                return out;
            }};
}

uint64_t mix64(uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace ww
