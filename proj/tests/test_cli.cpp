// End-to-end tests of the crownic command-line tool. The binary path arrives
// as argv[1] (wired in CMake); every test spawns it through the shell and
// inspects exit code, stdout, and stderr. The crownic library itself serves
// as the in-process oracle for round trips.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <crownic/closure.hpp>
#include <crownic/crown.hpp>
#include <crownic/factorize.hpp>
#include <crownic/generators.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace crownic;
using nlohmann::json;

namespace {

std::string g_cli;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Spawns the tool via the shell; args is the raw argument string.
RunResult run(const std::string& args) {
    static int counter = 0;
    std::string errfile = "cli_stderr_" + std::to_string(counter++) + ".tmp";
    std::string cmd = g_cli + " " + args + " 2>" + errfile;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(errfile);
    std::remove(errfile.c_str());
    return r;
}

std::string quoted_map(const PartialInjection& a) {
    return "'" + a.to_json_string() + "'";
}

}  // namespace

TEST_CASE("membership exits and diagnosis") {
    auto bad = run("member --n 6 --map '{\"n\":6,\"map\":[1,null,3,4,null,2]}'");
    CHECK(bad.code == 1);
    CHECK(bad.out == "not a member: condition 2 fails at 2\n");

    auto badj = run("member --n 6 --map '{\"n\":6,\"map\":[1,null,3,4,null,2]}' --format json");
    CHECK(badj.code == 1);
    json j = json::parse(badj.out);
    CHECK(j["member"] == false);
    CHECK(j["violated"] == "2");
    CHECK(j["witness"] == 2);

    auto good = run("member --n 6 --map '{\"n\":6,\"map\":[1,2,3,4,5,6]}'");
    CHECK(good.code == 0);
    CHECK(good.out == "member\n");

    // words are an equally good input source
    auto word = run("member --n 6 --word 'S1 S2' --format json");
    CHECK(word.code == 0);
    CHECK(json::parse(word.out)["member"] == true);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("member --n 6").code == 2);                  // no input
    CHECK(run("member --n 6 --map '{\"n\":6,\"map\":[1,2,3,4,5,6]}' --word S1").code == 2);
    CHECK(run("member --n 5 --map '{\"n\":5,\"map\":[1,2,3,4,5]}'").code == 2);
    CHECK(run("member --n 6 --map '{\"n\":4,\"map\":[1,2,3,4]}'").code == 2);  // n mismatch
    CHECK(run("member --n 6 --map 'not json'").code == 2);
    CHECK(run("member --n 6 --map '{\"n\":6,\"map\":[1,2,3,4,5,6]}' --format yaml").code == 2);
    CHECK(run("factorize --n 6 --word 'BOGUS'").code == 2);
    CHECK(run("verify --n 10").code == 2);                 // outside the verify range
    CHECK(run("prg3 --n 2").code == 2);
    CHECK(run("member --n 6 --map @no_such_file.json").code == 2);
}

TEST_CASE("size caps exit 2 and point at the override") {
    auto closed = run("close --n 12");
    CHECK(closed.code == 2);
    CHECK(closed.err.find("--cap-override") != std::string::npos);
    auto enumd = run("enum --n 10");
    CHECK(enumd.code == 2);
    CHECK(enumd.err.find("--cap-override") != std::string::npos);
}

TEST_CASE("pinned factorizations") {
    auto eps4 = run("factorize --n 8 --map '{\"n\":8,\"map\":[1,2,3,null,5,6,7,8]}'");
    CHECK(eps4.code == 0);
    CHECK(eps4.out == "S1^2 EN S1^2\n");

    auto refl = run("factorize --n 6 --word S2");
    CHECK(refl.code == 0);
    CHECK(refl.out == "S2\n");

    // a non-member lands the full diagnosis on stderr and nothing on stdout
    auto bad = run("factorize --n 6 --map '{\"n\":6,\"map\":[1,null,3,4,null,2]}'");
    CHECK(bad.code == 1);
    CHECK(bad.out.empty());
    CHECK(bad.err.find("\"violated\":\"2\"") != std::string::npos);
}

TEST_CASE("factorize output round trips through the library") {
    auto icn = brute_force_icn(6);
    for (std::size_t k = 0; k < icn.size(); k += 37) {
        const auto& a = icn[k];
        auto r = run("factorize --n 6 --map " + quoted_map(a) + " --format json");
        REQUIRE(r.code == 0);
        json j = json::parse(r.out);
        CHECK(PartialInjection::from_json_string(j["input"].dump()) == a);
        CHECK(eval_word(parse_word(j["word_text"].get<std::string>(), 6), 6) == a);
        // the token array and the text spell the same word
        Word w;
        for (const auto& tok : j["word"]) w.push_back(parse_word(tok.get<std::string>(), 6).at(0));
        CHECK(eval_word(w, 6) == a);
    }
}

TEST_CASE("enum streams exactly the oracle") {
    auto r = run("enum --n 4");
    REQUIRE(r.code == 0);
    std::vector<PartialInjection> seen;
    std::istringstream lines(r.out);
    for (std::string line; std::getline(lines, line);)
        seen.push_back(PartialInjection::from_json_string(line));
    auto oracle = brute_force_icn(4);
    CHECK(seen.size() == oracle.size());
    CHECK(seen == oracle);  // same sorted order
}

TEST_CASE("count compares closure against the oracle") {
    auto r = run("count --n 4 --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["closure"] == 61);
    CHECK(j["oracle"] == 61);
    CHECK(j["equal"] == true);

    auto text = run("count --n 6");
    CHECK(text.code == 0);
    CHECK(text.out.find("closure 571") != std::string::npos);
    CHECK(text.out.find("equal") != std::string::npos);
}

TEST_CASE("close reports census and stays deterministic") {
    auto r = run("close --n 6 --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["elements"] == 571);
    auto want = close(generator_catalog(6).elements());
    for (const auto& [rank, count] : want.census)
        CHECK(j["census"][std::to_string(rank)] == count);

    auto t1 = run("close --n 8 --format jsonl --threads 1");
    auto t2 = run("close --n 8 --format jsonl --threads 2");
    auto t0 = run("close --n 8 --format jsonl --threads 0");
    REQUIRE(t1.code == 0);
    CHECK(t1.out == t2.out);
    CHECK(t1.out == t0.out);

    auto again = run("close --n 6 --format json");
    CHECK(again.out == r.out);
}

TEST_CASE("prg3 reports the five conditions") {
    auto r = run("prg3 --n 8 --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["all"] == true);
    CHECK(j["rank_counts"] == json({{"4", 2}, {"5", 4}, {"6", 2}, {"7", 2}, {"8", 2}}));
    CHECK(j["sizes_d"] == json::array({2, 4}));

    auto six = run("prg3 --n 6");
    CHECK(six.code == 0);
    CHECK(six.out.find("sizes for (d): 2\n") != std::string::npos);
}

TEST_CASE("verify prints the matrix and discloses the n = 4 redundancy") {
    auto two = run("verify --n 2");
    CHECK(two.code == 0);
    CHECK(two.out.find("minimal rank 3") != std::string::npos);
    CHECK(two.out.find("21 small subsets") != std::string::npos);
    CHECK(two.out.rfind("PASS\n") == two.out.size() - 5);

    auto four = run("verify --n 4");
    CHECK(four.code == 0);
    CHECK(four.out.find("DO(1) redundant") != std::string::npos);
    CHECK(four.out.find("DE(1) redundant") != std::string::npos);

    auto six = run("verify --n 6 --format json");
    CHECK(six.code == 0);
    json j = json::parse(six.out);
    CHECK(j["pass"] == true);
    CHECK(j["sections"].size() == 5);
    for (const auto& s : j["sections"]) CHECK(s["ok"] == true);

    // identical invocation, identical bytes
    auto again = run("verify --n 6 --format json");
    CHECK(again.out == six.out);
}

TEST_CASE("out flag and file inputs") {
    std::string mapfile = "cli_map.tmp";
    std::string outfile = "cli_out.tmp";
    {
        std::ofstream f(mapfile);
        f << "{\"n\":6,\"map\":[1,2,3,4,5,6]}";
    }
    auto r = run("member --n 6 --map @" + mapfile + " --out " + outfile);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(outfile) == "member\n");
    std::remove(mapfile.c_str());
    std::remove(outfile.c_str());
}

int run_all(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-crownic-binary> [doctest args]\n");
        return 1;
    }
    g_cli = argv[1];
    doctest::Context ctx;
    // hand doctest everything except the binary path
    std::vector<char*> rest;
    rest.push_back(argv[0]);
    for (int i = 2; i < argc; ++i) rest.push_back(argv[i]);
    ctx.applyCommandLine(static_cast<int>(rest.size()), rest.data());
    return ctx.run();
}

int main(int argc, char** argv) { return run_all(argc, argv); }
