#include "cmt/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace {

struct TempJson {
    std::string path;
    TempJson(const std::string& name, const std::string& content)
        : path("/tmp/cmt_cli_" + name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempJson() { std::remove(path.c_str()); }
};

struct RunOutcome {
    int code;
    std::string out;
    std::string err;
};

RunOutcome run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cmt::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kS3 = R"({"signature": {"X": ["0","1"], "Y": ["0","1"]},
  "rows": [{"assignment": {"X":"0","Y":"0"}, "count": 2},
           {"assignment": {"X":"0","Y":"1"}, "count": 1}]})";

const char* kCoin = R"({"signature": {"X": ["heads","tails"], "Y": ["heads","tails"]},
  "rows": [{"assignment": {"X":"heads","Y":"heads"}},
           {"assignment": {"X":"heads","Y":"tails"}},
           {"assignment": {"X":"tails","Y":"heads"}},
           {"assignment": {"X":"tails","Y":"tails"}}]})";

const char* kEmpty = R"({"signature": {"X": ["0","1"], "Y": ["0","1"]}, "rows": []})";

} // namespace

TEST_CASE("prob prints an exact fraction") {
    TempJson s3("s3.json", kS3);
    RunOutcome r = run_cli({"prob", s3.path, "Y=0"});
    CHECK(r.code == 0);
    CHECK(r.out == "2/3\n");
}

TEST_CASE("check reports the verdict through the exit code") {
    TempJson coin("coin.json", kCoin);
    RunOutcome truthy = run_cli({"check", coin.path, "Pr(X=heads | Y=tails) >= 1/2"});
    CHECK(truthy.code == 0);
    CHECK(truthy.out == "true\n");

    RunOutcome traced =
        run_cli({"check", coin.path, "Pr(X=heads) == 1/2 \\/ NE", "--trace"});
    CHECK(traced.code == 0);
    CHECK(traced.out.find("global disjunction") != std::string::npos);

    RunOutcome tensor = run_cli({"check", coin.path, "Pr((X=heads | Y=tails)) == 3/4"});
    CHECK(tensor.code == 0);

    RunOutcome falsy = run_cli({"check", coin.path, "Pr(X=heads) > 1/2"});
    CHECK(falsy.code == 1);
    CHECK(falsy.out == "false\n");
}

TEST_CASE("the empty model satisfies falsum") {
    TempJson none("empty.json", kEmpty);
    RunOutcome r = run_cli({"check", none.path, "bot"});
    CHECK(r.code == 0);
    CHECK(r.out == "true\n");
}

TEST_CASE("parse errors exit 2 with a position") {
    TempJson coin("coin2.json", kCoin);
    RunOutcome syntax = run_cli({"check", coin.path, "X=heads &"});
    CHECK(syntax.code == 2);
    CHECK(syntax.err.find("parse error at offset") != std::string::npos);

    RunOutcome unknown = run_cli({"check", coin.path, "Z=1"});
    CHECK(unknown.code == 2);

    RunOutcome usage = run_cli({"frobnicate"});
    CHECK(usage.code == 2);
}

TEST_CASE("validation errors exit 3") {
    TempJson bad("bad.json", R"({"signature": {"X": ["0","1"], "Y": ["0","1"]},
        "functions": {"Y": {"args": ["X"], "table": {"0": "0", "1": "1"}}},
        "rows": [{"assignment": {"X":"0","Y":"1"}}]})");
    RunOutcome r = run_cli({"check", bad.path, "top"});
    CHECK(r.code == 3);
    CHECK(r.err.find("incompatible") != std::string::npos);
}

TEST_CASE("batch files report any false line in the exit code") {
    TempJson coin("coin3.json", kCoin);
    TempJson batch("batch.txt", "Pr(X=heads) == 1/2\nPr(X=heads) == 1\n");
    RunOutcome r = run_cli({"check", coin.path, "--file", batch.path});
    CHECK(r.code == 1);
    CHECK(r.out == "true\nfalse\n");
}

TEST_CASE("normal form reports leaves and the maximal rung") {
    TempJson sig("sig.json", R"({"X": ["0","1"], "Y": ["0","1"]})");
    RunOutcome r = run_cli({"nf", "Y=1 => (X=1 ~> Pr(Y=1) >= 1/2)", "--sig", sig.path});
    CHECK(r.code == 0);
    CHECK(r.out.find("max rung: 3") != std::string::npos);

    RunOutcome c = run_cli({"classify", "Pr(Y=1 | X=1) >= 1/2", "--sig", sig.path, "--json"});
    CHECK(c.code == 0);
    CHECK(c.out.find("\"max_rung\": 1") != std::string::npos);
}

TEST_CASE("SEM commands round-trip through files") {
    TempJson sem("sem.json", R"({"signature": {"X": ["0","1","2"], "Y": ["1","2","3"]},
        "functions": {"Y": {"args": ["X"], "table": {"0":"1", "1":"2", "2":"3"}}},
        "exo_dist": [{"u": {"X":"0"}, "p": "1/6"},
                     {"u": {"X":"1"}, "p": "1/3"},
                     {"u": {"X":"2"}, "p": "1/2"}]})");
    std::string model_path = "/tmp/cmt_cli_from_sem.json";
    RunOutcome from = run_cli({"from-sem", sem.path, "--out", model_path});
    CHECK(from.code == 0);
    RunOutcome p = run_cli({"prob", model_path, "Y=3"});
    CHECK(p.out == "1/2\n");
    RunOutcome to = run_cli({"to-sem", model_path});
    CHECK(to.code == 0);
    CHECK(to.out.find("\"1/6\"") != std::string::npos);
    std::remove(model_path.c_str());
}

TEST_CASE("markov flags dependent exogenous variables") {
    TempJson coupled("coupled.json", R"({"signature": {"X": ["0","1"], "Y": ["0","1"]},
        "rows": [{"assignment": {"X":"0","Y":"0"}}, {"assignment": {"X":"1","Y":"1"}}]})");
    RunOutcome r = run_cli({"markov", coupled.path});
    CHECK(r.code == 1);
    CHECK(r.out.find("markovian: false") != std::string::npos);
}

TEST_CASE("define-check agrees on a small class") {
    TempJson cls("class.json", std::string("[") + kS3 + "]");
    RunOutcome r = run_cli({"define-check", cls.path, "--bound", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("defines exactly") != std::string::npos);
}

TEST_CASE("the suite runs a single named check") {
    RunOutcome r = run_cli({"suite", "--check", "worked-examples", "--seed", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[PASS] worked-examples") != std::string::npos);
}

TEST_CASE("intervene and rescale-canon write model files") {
    TempJson s3("s3b.json", kS3);
    RunOutcome forced = run_cli({"intervene", s3.path, "X=1"});
    CHECK(forced.code == 0);
    CHECK(forced.out.find("\"X\": \"1\"") != std::string::npos);

    RunOutcome canon = run_cli({"rescale-canon", s3.path});
    CHECK(canon.code == 0);

    RunOutcome psi = run_cli({"psi", std::string("/tmp/cmt_cli_psi_class.json")});
    CHECK(psi.code == 2);  // missing file is a usage error
}
