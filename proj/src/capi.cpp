#include "ww/ww.h"

#include "ww/adversaries.hpp"
#include "ww/reductions.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

struct ww_problem {
    ww::ProblemPtr p;
};

struct ww_result {
    std::string text;
    int outcome = WW_OUTCOME_EXPECTED;
};

namespace {

thread_local std::string last_error;

struct Unknown : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Parse : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadArgument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
int guard(F&& f)
{
    last_error.clear();
    try {
        f();
        return WW_OK;
    } catch (const BadArgument& e) {
        last_error = e.what();
        return WW_ERR_ARGUMENT;
    } catch (const Unknown& e) {
        last_error = e.what();
        return WW_ERR_UNKNOWN;
    } catch (const Parse& e) {
        last_error = e.what();
        return WW_ERR_PARSE;
    } catch (const std::invalid_argument& e) {
        last_error = e.what();
        return WW_ERR_PARSE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return WW_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return WW_ERR_INTERNAL;
    }
}

void need(bool ok, const char* what)
{
    if (!ok) throw BadArgument(what);
}

bool listed(const std::vector<std::string>& names, const std::string& n)
{
    return std::find(names.begin(), names.end(), n) != names.end();
}

// NAME, NAME* (finite parallelization) or A+B (product).
ww::ProblemPtr resolve_problem(const std::string& expr)
{
    auto plus = expr.find('+');
    if (plus != std::string::npos)
        return ww::product(resolve_problem(expr.substr(0, plus)), resolve_problem(expr.substr(plus + 1)));
    if (!expr.empty() && expr.back() == '*') return ww::finite_parallelization(resolve_problem(expr.substr(0, expr.size() - 1)));
    if (!listed(ww::catalog_names(), expr)) throw Unknown("unknown problem '" + expr + "'");
    return ww::catalog_problem(expr);
}

int verdict_code(const ww::Verdict& v)
{
    return v.kind == ww::Verdict::Pass ? WW_PASS : v.kind == ww::Verdict::Fail ? WW_FAIL : WW_INDETERMINATE;
}

ww_result* make(std::string text, int outcome)
{
    auto* r = new ww_result;
    r->text = std::move(text);
    r->outcome = outcome;
    return r;
}

void report(std::ostringstream& o, const ww::Witness& w, const std::vector<uint64_t>& seeds, size_t depth, size_t& pass,
            size_t& fail, size_t& ind)
{
    o << "direction " << w.name << " f=" << w.f->name << " g=" << w.g->name << " depth=" << depth
      << " seeds=" << seeds.size() << "\n";
    ww::WitnessReport rep = ww::verify_witness(w, seeds, depth);
    for (const auto& s : rep.seeds) {
        o << "seed " << s.seed << ": " << ww::verdict_to_text(s.verdict);
        if (s.verdict.kind == ww::Verdict::Fail) o << " stage=" << s.stage << " clause=" << s.clause;
        o << "\n";
        if (s.verdict.kind == ww::Verdict::Pass) ++pass;
        else if (s.verdict.kind == ww::Verdict::Fail) ++fail;
        else ++ind;
    }
}

int verify_outcome(size_t fail, size_t ind)
{
    return fail ? WW_OUTCOME_FAILED : ind ? WW_OUTCOME_UNDECIDED : WW_OUTCOME_EXPECTED;
}

std::vector<uint64_t> seed_range(uint64_t first, size_t n)
{
    std::vector<uint64_t> s(n);
    for (size_t i = 0; i < n; ++i) s[i] = first + i;
    return s;
}

ww::Witness witness_from_text(const std::string& text)
{
    std::istringstream in(text);
    std::string line, f, g, inner, outer;
    size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
        auto sp = line.find_first_of(" \t");
        if (sp == std::string::npos) throw Parse("witness line " + std::to_string(no) + ": missing value");
        std::string key = line.substr(0, sp), val = line.substr(line.find_first_not_of(" \t", sp));
        if (key == "f") f = val;
        else if (key == "g") g = val;
        else if (key == "inner") inner = val;
        else if (key == "outer") outer = val;
        else throw Parse("witness line " + std::to_string(no) + ": unknown key '" + key + "'");
    }
    if (f.empty() || g.empty() || inner.empty() || outer.empty())
        throw Parse("witness needs f, g, inner and outer lines");
    ww::MonotoneMap h, k;
    try {
        h = ww::map_from_code(inner);
        k = ww::map_from_code(outer);
    } catch (const std::invalid_argument& e) {
        throw Parse(std::string("witness map code: ") + e.what());
    }
    return ww::from_maps("file", resolve_problem(f), resolve_problem(g), h, k);
}

}  // namespace

extern "C" {

const char* ww_version(void)
{
    return "1.0.0";
}

const char* ww_status_text(int status)
{
    switch (status) {
    case WW_OK: return "ok";
    case WW_ERR_ARGUMENT: return "bad argument";
    case WW_ERR_UNKNOWN: return "unknown name";
    case WW_ERR_PARSE: return "malformed input";
    case WW_ERR_INTERNAL: return "internal error";
    default: return "unrecognized status";
    }
}

const char* ww_last_error(void)
{
    return last_error.c_str();
}

int ww_list(int kind, const char* adversary, ww_result** out)
{
    return guard([&] {
        need(out != nullptr, "null output");
        std::vector<std::string> names;
        switch (kind) {
        case WW_LIST_PROBLEMS: names = ww::catalog_names(); break;
        case WW_LIST_REDUCTIONS: names = ww::reduction_names(); break;
        case WW_LIST_ADVERSARIES:
            if (!adversary) {
                names = ww::adversary_names();
                break;
            }
            if (!listed(ww::adversary_names(), adversary)) throw Unknown(std::string("unknown adversary '") + adversary + "'");
            if (std::string(adversary) == "two-vs-semibound")
                for (const auto& s : ww::semibound_corpus()) names.push_back(s.name);
            else
                for (const auto& s : ww::adversary_corpus(adversary)) names.push_back(s.name);
            break;
        case WW_LIST_CODE_STRATEGIES: names = ww::code_strategy_names(); break;
        case WW_LIST_BOUND_STRATEGIES:
            for (const auto& s : ww::bound_corpus()) names.push_back(s.name);
            break;
        default: throw BadArgument("unknown list kind");
        }
        std::string text;
        for (const auto& n : names) text += n + "\n";
        *out = make(text, WW_OUTCOME_EXPECTED);
    });
}

int ww_problem_open(const char* name, ww_problem** out)
{
    return guard([&] {
        need(name && out, "null argument");
        *out = new ww_problem{resolve_problem(name)};
    });
}

void ww_problem_close(ww_problem* p)
{
    delete p;
}

const char* ww_problem_name(const ww_problem* p)
{
    return p ? p->p->name.c_str() : "";
}

int ww_problem_generate(const ww_problem* p, uint64_t seed, size_t depth, ww_result** out)
{
    return guard([&] {
        need(p && out, "null argument");
        need(depth > 0, "depth must be positive");
        ww::Value x = p->p->generate(seed, depth);
        ww::Verdict v = p->p->instance_valid(x, depth);
        *out = make(ww::value_to_text(x), v.ok() ? WW_OUTCOME_EXPECTED : WW_OUTCOME_FAILED);
    });
}

int ww_problem_check_instance(const ww_problem* p, const char* text, size_t depth, int* verdict)
{
    return guard([&] {
        need(p && text && verdict, "null argument");
        need(depth > 0, "depth must be positive");
        *verdict = verdict_code(p->p->instance_valid(ww::value_from_text(text), depth));
    });
}

int ww_problem_check_solution(const ww_problem* p, const char* instance, const char* solution, size_t depth,
                              int* verdict)
{
    return guard([&] {
        need(p && instance && solution && verdict, "null argument");
        need(depth > 0, "depth must be positive");
        *verdict = verdict_code(p->p->solution_valid(ww::value_from_text(instance), ww::value_from_text(solution), depth));
    });
}

int ww_verify_reduction(const char* name, uint64_t first_seed, size_t seeds, size_t depth, ww_result** out)
{
    return guard([&] {
        need(name && out, "null argument");
        need(depth > 0, "depth must be positive");
        need(seeds > 0, "seed count must be positive");
        if (!listed(ww::reduction_names(), name)) throw Unknown(std::string("unknown reduction '") + name + "'");
        std::ostringstream o;
        size_t pass = 0, fail = 0, ind = 0;
        o << "reduction " << name << "\n";
        for (const auto& w : ww::shipped_witnesses(name)) report(o, w, seed_range(first_seed, seeds), depth, pass, fail, ind);
        o << "summary: pass=" << pass << " fail=" << fail << " indeterminate=" << ind << "\n";
        *out = make(o.str(), verify_outcome(fail, ind));
    });
}

int ww_verify_witness_text(const char* text, uint64_t first_seed, size_t seeds, size_t depth, ww_result** out)
{
    return guard([&] {
        need(text && out, "null argument");
        need(depth > 0, "depth must be positive");
        need(seeds > 0, "seed count must be positive");
        ww::Witness w = witness_from_text(text);
        std::ostringstream o;
        size_t pass = 0, fail = 0, ind = 0;
        o << "reduction file\n";
        report(o, w, seed_range(first_seed, seeds), depth, pass, fail, ind);
        o << "summary: pass=" << pass << " fail=" << fail << " indeterminate=" << ind << "\n";
        *out = make(o.str(), verify_outcome(fail, ind));
    });
}

int ww_play(const char* f, const char* g, const char* strategy, int strategy_is_text, uint64_t seed, size_t max_rounds,
            size_t depth, ww_result** out)
{
    return guard([&] {
        need(f && g && strategy && out, "null argument");
        need(depth > 0, "depth must be positive");
        need(max_rounds > 0, "max rounds must be positive");
        ww::ProblemPtr pf = resolve_problem(f), pg = resolve_problem(g);
        ww::StrategyII s;
        if (strategy_is_text) {
            try {
                s = ww::code_strategy_from_text("file", strategy);
            } catch (const std::invalid_argument& e) {
                throw Parse(e.what());
            }
        } else {
            if (!listed(ww::code_strategy_names(), strategy)) throw Unknown(std::string("unknown strategy '") + strategy + "'");
            s = ww::named_code_strategy(strategy);
        }
        ww::Transcript t = ww::play_game(*pf, *pg, ww::obeying_player(pf, pg, seed), s, max_rounds, depth);
        int oc = t.verdict == ww::Outcome::IIWins  ? WW_OUTCOME_EXPECTED
                 : t.verdict == ww::Outcome::IWins ? WW_OUTCOME_FAILED
                                                   : WW_OUTCOME_UNDECIDED;
        *out = make(ww::transcript_to_text(t), oc);
    });
}

int ww_adversary(const char* adversary, const char* strategy, size_t max_stage, ww_result** out)
{
    return guard([&] {
        need(adversary && strategy && out, "null argument");
        need(max_stage > 0, "max stage must be positive");
        if (!listed(ww::adversary_names(), adversary)) throw Unknown(std::string("unknown adversary '") + adversary + "'");
        ww::AdversaryRun r;
        try {
            r = ww::run_adversary(adversary, strategy, max_stage);
        } catch (const std::invalid_argument& e) {
            throw Unknown(e.what());
        }
        int oc = r.victory() && r.safety.ok() ? WW_OUTCOME_EXPECTED
                 : !r.replay || r.replay->verdict == ww::Outcome::Undecided ? WW_OUTCOME_UNDECIDED
                                                                            : WW_OUTCOME_FAILED;
        *out = make(ww::run_to_text(r), oc);
    });
}

int ww_bound(const char* strategy, uint64_t seed, size_t max_stage, size_t depth, ww_result** out)
{
    return guard([&] {
        need(strategy && out, "null argument");
        need(depth > 0, "depth must be positive");
        need(max_stage > 0, "max stage must be positive");
        for (const auto& s : ww::bound_corpus())
            if (s.name == strategy) {
                ww::BoundStream b = ww::bound_extract(ww::bound_instance(seed, depth), s, max_stage, depth);
                *out = make(ww::bound_to_text(b), WW_OUTCOME_EXPECTED);
                return;
            }
        throw Unknown(std::string("unknown bound strategy '") + strategy + "'");
    });
}

const char* ww_result_text(const ww_result* r)
{
    return r ? r->text.c_str() : "";
}

int ww_result_outcome(const ww_result* r)
{
    return r ? r->outcome : WW_OUTCOME_UNDECIDED;
}

void ww_result_free(ww_result* r)
{
    delete r;
}

}  // extern "C"
