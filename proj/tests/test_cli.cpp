#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "")
{
    std::string cmd = env + (env.empty() ? "" : " ") + std::string(WW_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string temp_file(const std::string& name, const std::string& body)
{
    std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/ww_cli_" + name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("usage errors exit 2")
    {
        CHECK(run("gen-instance --problem nope").code == 2);
        CHECK(run("gen-instance --problem llpo --depth 0").code == 2);
        CHECK(run("frobnicate").code == 2);
        CHECK(run("adversary --name aou-vs-two-star --strategy nope").code == 2);
        CHECK(run("play --f llpo --g llpo --strategy-file /nonexistent/file").code == 2);
    }

    TEST_CASE("gen-instance is seeded")
    {
        Run a = run("gen-instance --problem wkl2 --seed 4");
        Run b = run("gen-instance --problem wkl2 --seed 4");
        Run c = run("gen-instance --problem wkl2 --seed 5");
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out != c.out);
        Run e = run("gen-instance --problem wkl2 --seed 5", "WW_SEED=4");
        CHECK(e.out == a.out);
    }

    TEST_CASE("play and adversary outcomes")
    {
        Run p = run("play --f llpo --g llpo --strategy echo");
        CHECK(p.code == 0);
        CHECK(p.out.find("verdict: II-wins") != std::string::npos);
        CHECK(run("play --f llpo --g llpo --strategy never-declares").code == 3);
        CHECK(run("play --f llpo --g llpo --strategy silent").code == 1);
        Run a = run("adversary --name aou-vs-two-star --strategy echo --max-stage 40");
        CHECK(a.code == 0);
        CHECK(a.out.find("safety: Pass") != std::string::npos);
    }

    TEST_CASE("verify-reduction")
    {
        Run ok = run("verify-reduction --name dne-limn --seeds 5 --depth 16");
        CHECK(ok.code == 0);
        CHECK(ok.out.find("summary: pass=10 fail=0") != std::string::npos);
        std::string bad = temp_file("bad.wit", "# flipped outer\nf llpo\ng llpo\ninner echo\nouter (const 1,1,1,1)\n");
        Run b = run("verify-reduction --witness " + bad + " --seeds 5 --depth 16");
        CHECK(b.code == 1);
        CHECK(b.out.find("clause=b") != std::string::npos);
        std::string good = temp_file("good.wit", "f llpo\ng llpo\ninner echo\nouter right\n");
        CHECK(run("verify-reduction --witness " + good + " --seeds 5 --depth 16").code == 0);
    }

    TEST_CASE("structured output and files")
    {
        Run s = run("list problems --format structured");
        CHECK(s.code == 0);
        CHECK(s.out.find("\"command\": \"list\"") != std::string::npos);
        CHECK(s.out.find("llpo\\n") != std::string::npos);
        std::string path = temp_file("out.txt", "");
        CHECK(run("bound --strategy rt-branch --max-stage 20 -o " + path).code == 0);
        std::ifstream in(path);
        std::string first;
        std::getline(in, first);
        CHECK_FALSE(first.empty());
    }
}
