#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "msidon/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
    int status;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int status = msidon::run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("count json output") {
    auto r = run({"count", "--n", "6", "--k", "2", "--method", "naive", "--format", "json"});
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == 58);
    CHECK(j["n"] == 6);
    CHECK(j["method"] == "naive");
}

TEST_CASE("check reports the violation") {
    auto r = run({"check", "--set", "1,8,9,3,4,6", "--k", "3"});
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["sidon"] == false);
    CHECK(j["violation"]["product"] == 72);

    auto ok = run({"check", "--set", "2,3,5,7", "--k", "2"});
    json j2 = json::parse(ok.out);
    CHECK(j2["sidon"] == true);
}

TEST_CASE("exit codes") {
    CHECK(run({"frobnicate"}).status == 1);
    CHECK(run({"count"}).status == 1);                          // missing --n
    CHECK(run({"count", "--n", "25", "--method", "naive"}).status == 2);  // over budget
    CHECK(run({"count", "--n", "25", "--method", "naive", "--budget", "bogus=3"}).status == 1);
    CHECK(run({"extremal", "--n", "70"}).status == 2);
    CHECK(run({"pfg-search", "--kmax", "11"}).status == 2);
    CHECK(run({"check", "--set", "1,2,3,6", "--k", "1"}).status == 1);
}

TEST_CASE("budget override changes the verdict") {
    auto blocked = run({"count", "--n", "21", "--method", "naive"});
    CHECK(blocked.status == 2);
    auto allowed = run({"count", "--n", "21", "--method", "naive", "--budget", "naive_n=21"});
    CHECK(allowed.status == 0);
}

TEST_CASE("thread count does not change results") {
    std::vector<std::string> base{"count", "--n", "20", "--k", "2", "--method", "backtrack"};
    std::string ref;
    for (const char* t : {"1", "2", "8"}) {
        auto args = base;
        args.push_back("--threads");
        args.push_back(t);
        auto r = run(args);
        CHECK(r.status == 0);
        if (ref.empty())
            ref = r.out;
        else
            CHECK(r.out == ref);
    }
    // beta and pfg-search: byte-identical across thread counts
    std::vector<std::vector<std::string>> bases;
    bases.push_back({"beta", "--kmax", "2000"});
    bases.push_back({"pfg-search", "--kmax", "6"});
    for (const std::vector<std::string>& base2 : bases) {
        std::string ref2;
        for (const char* t : {"1", "2", "8"}) {
            auto args = base2;
            args.push_back("--threads");
            args.push_back(t);
            auto r = run(args);
            CHECK(r.status == 0);
            if (ref2.empty())
                ref2 = r.out;
            else
                CHECK(r.out == ref2);
        }
    }
}

TEST_CASE("reports re-parse and formats render") {
    const char* commands[] = {
        "alpha --kmax 1000",
        "beta --kmax 100",
        "tfunc --n 100",
        "extremal --n 12 --k 2",
        "construct --family erdos --n 30 --samples 5",
        "construct --family 3sidon --n 50 --gpar 4 --samples 5",
        "decompose --set 22,26,6 --n 30 --k 2",
        "decompose --set 11,22,33,5 --n 33 --k 3",
        "pfg-search --kmax 4",
        "liouville --kmax 10",
    };
    for (const char* line : commands) {
        std::istringstream words(line);
        std::vector<std::string> cmd;
        for (std::string w; words >> w;) cmd.push_back(w);

        auto r = run(cmd);
        CHECK(r.status == 0);
        json parsed;
        CHECK_NOTHROW(parsed = json::parse(r.out));

        for (const char* format : {"csv", "text"}) {
            auto alt = cmd;
            alt.push_back("--format");
            alt.push_back(format);
            CHECK(run(alt).status == 0);
        }
    }
}

TEST_CASE("graph file round trip through verify-container") {
    const char* path = "cli_test_graph.txt";
    {
        std::ofstream f(path);
        f << "5 5\n1 2\n2 3\n3 4\n4 5\n1 5\n";
    }
    auto r = run({"verify-container", "--graph", path, "--R", "3.033", "--beta", "0.1", "--q", "5",
                  "--s", "5"});
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["verdict"] == "holds");
    std::remove(path);
}

TEST_CASE("tfunc exact value appears for small n") {
    auto r = run({"tfunc", "--n", "30"});
    json j = json::parse(r.out);
    CHECK(j["exact_T"] == 144);
    CHECK(j["p0"] == 11);
    CHECK(j["k0"] == 2);
}

TEST_CASE("beta acceptance numbers via CLI") {
    auto r = run({"beta", "--kmax", "30000"});
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    double bm = j["beta_minus_partial"];
    CHECK(bm > 5.2366);
    CHECK(bm < 5.2468);
}

}  // TEST_SUITE
