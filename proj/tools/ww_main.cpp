#include "ww/ww.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kUndecided = 3 };

struct Common {
    std::string output;
    std::string format = "text";
    uint64_t seed = 0;
};

bool read_file(const std::string& path, std::string& text)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream s;
    s << in.rdbuf();
    text = s.str();
    return true;
}

uint64_t effective_seed(uint64_t flag)
{
    const char* env = std::getenv("WW_SEED");
    if (!env || !*env) return flag;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') {
        std::cerr << "ww: WW_SEED is not a natural number: " << env << "\n";
        std::exit(kUsage);
    }
    return v;
}

int exit_of(int outcome)
{
    return outcome == WW_OUTCOME_EXPECTED ? kOk : outcome == WW_OUTCOME_UNDECIDED ? kUndecided : kFailed;
}

// Writes the result; a failed call becomes a usage/input error.
int finish(int status, ww_result* r, const Common& c, const std::string& command)
{
    if (status != WW_OK) {
        std::cerr << "ww " << command << ": " << ww_status_text(status) << ": " << ww_last_error() << "\n";
        return status == WW_ERR_INTERNAL ? kFailed : kUsage;
    }
    int code = exit_of(ww_result_outcome(r));
    std::string text = ww_result_text(r);
    ww_result_free(r);
    if (c.format == "structured") {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["exit"] = code;
        j["output"] = text;
        text = j.dump(2) + "\n";
    }
    if (c.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.output, std::ios::binary);
        if (!out) {
            std::cerr << "ww " << command << ": cannot write " << c.output << "\n";
            return kUsage;
        }
        out << text;
    }
    return code;
}

void add_common(CLI::App* app, Common& c, bool seeded)
{
    app->add_option("-o,--output", c.output, "Output path (default stdout)");
    app->add_option("--format", c.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    if (seeded) app->add_option("--seed", c.seed, "Seed (WW_SEED overrides)");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reduction games, witnesses and adversaries on finite approximations"};
    app.require_subcommand(1);
    Common c;

    auto* gen = app.add_subcommand("gen-instance", "Generate an instance file");
    std::string gen_problem;
    size_t gen_depth = 16;
    gen->add_option("--problem", gen_problem, "Problem name")->required();
    gen->add_option("--depth", gen_depth, "Generation depth")->check(CLI::PositiveNumber);
    add_common(gen, c, true);

    auto* ver = app.add_subcommand("verify-reduction", "Check a reduction witness on seeded instances");
    std::string ver_name, ver_file;
    size_t ver_seeds = 100, ver_depth = 32;
    auto* name_opt = ver->add_option("--name", ver_name, "Shipped reduction name");
    ver->add_option("--witness", ver_file, "Witness file (f, g, inner, outer lines)")->excludes(name_opt);
    ver->add_option("--seeds", ver_seeds, "Number of seeds")->check(CLI::PositiveNumber);
    ver->add_option("--depth", ver_depth, "Verification depth")->check(CLI::PositiveNumber);
    add_common(ver, c, true);

    auto* play = app.add_subcommand("play", "Play a reduction game against an obeying Player I");
    std::string play_f, play_g, play_strategy, play_file;
    size_t play_rounds = 8, play_depth = 16;
    play->add_option("--f", play_f, "Problem f (NAME, NAME*, A+B)")->required();
    play->add_option("--g", play_g, "Problem g (NAME, NAME*, A+B)")->required();
    auto* strat_opt = play->add_option("--strategy", play_strategy, "Named code strategy");
    play->add_option("--strategy-file", play_file, "Strategy file")->excludes(strat_opt);
    play->add_option("--max-rounds", play_rounds, "Round budget")->check(CLI::PositiveNumber);
    play->add_option("--depth", play_depth, "Observation depth")->check(CLI::PositiveNumber);
    add_common(play, c, true);

    auto* adv = app.add_subcommand("adversary", "Run an adversary against a corpus strategy");
    std::string adv_name, adv_strategy;
    size_t adv_stage = 1000;
    adv->add_option("--name", adv_name, "Adversary name")->required();
    adv->add_option("--strategy", adv_strategy, "Corpus strategy name")->required();
    adv->add_option("--max-stage", adv_stage, "Stage budget")->check(CLI::PositiveNumber);
    add_common(adv, c, false);

    auto* bnd = app.add_subcommand("bound", "Extract the semicontinuous bound stream");
    std::string bnd_strategy;
    size_t bnd_stage = 100, bnd_depth = 32;
    bnd->add_option("--strategy", bnd_strategy, "Bound corpus strategy name")->required();
    bnd->add_option("--max-stage", bnd_stage, "Stage budget")->check(CLI::PositiveNumber);
    bnd->add_option("--depth", bnd_depth, "Depth of the limit stream")->check(CLI::PositiveNumber);
    add_common(bnd, c, true);

    auto* lst = app.add_subcommand("list", "List problems, reductions, adversaries or strategies");
    std::string lst_what = "problems", lst_adv;
    lst->add_option("what", lst_what, "problems|reductions|adversaries|strategies|bound-strategies")
        ->check(CLI::IsMember({"problems", "reductions", "adversaries", "strategies", "bound-strategies"}));
    lst->add_option("--adversary", lst_adv, "List this adversary's corpus");
    add_common(lst, c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    uint64_t seed = effective_seed(c.seed);
    ww_result* r = nullptr;

    if (*gen) {
        ww_problem* p = nullptr;
        int st = ww_problem_open(gen_problem.c_str(), &p);
        if (st == WW_OK) {
            st = ww_problem_generate(p, seed, gen_depth, &r);
            ww_problem_close(p);
        }
        return finish(st, r, c, "gen-instance");
    }
    if (*ver) {
        if (ver_name.empty() == ver_file.empty()) {
            std::cerr << "ww verify-reduction: give exactly one of --name or --witness\n";
            return kUsage;
        }
        int st;
        if (!ver_name.empty()) {
            st = ww_verify_reduction(ver_name.c_str(), seed, ver_seeds, ver_depth, &r);
        } else {
            std::string text;
            if (!read_file(ver_file, text)) {
                std::cerr << "ww verify-reduction: cannot read " << ver_file << "\n";
                return kUsage;
            }
            st = ww_verify_witness_text(text.c_str(), seed, ver_seeds, ver_depth, &r);
        }
        return finish(st, r, c, "verify-reduction");
    }
    if (*play) {
        if (play_strategy.empty() == play_file.empty()) {
            std::cerr << "ww play: give exactly one of --strategy or --strategy-file\n";
            return kUsage;
        }
        std::string text = play_strategy;
        if (!play_file.empty() && !read_file(play_file, text)) {
            std::cerr << "ww play: cannot read " << play_file << "\n";
            return kUsage;
        }
        int st = ww_play(play_f.c_str(), play_g.c_str(), text.c_str(), play_file.empty() ? 0 : 1, seed, play_rounds,
                         play_depth, &r);
        return finish(st, r, c, "play");
    }
    if (*adv) {
        int st = ww_adversary(adv_name.c_str(), adv_strategy.c_str(), adv_stage, &r);
        return finish(st, r, c, "adversary");
    }
    if (*bnd) {
        int st = ww_bound(bnd_strategy.c_str(), seed, bnd_stage, bnd_depth, &r);
        return finish(st, r, c, "bound");
    }

    int kind = lst_what == "problems"      ? WW_LIST_PROBLEMS
               : lst_what == "reductions"  ? WW_LIST_REDUCTIONS
               : lst_what == "adversaries" ? WW_LIST_ADVERSARIES
               : lst_what == "strategies"  ? WW_LIST_CODE_STRATEGIES
                                           : WW_LIST_BOUND_STRATEGIES;
    int st = ww_list(kind, lst_adv.empty() ? nullptr : lst_adv.c_str(), &r);
    return finish(st, r, c, "list");
}
