#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "conjlab/cli.hpp"
#include "conjlab/errors.hpp"
#include "conjlab/io.hpp"
#include "conjlab/lattice.hpp"

using namespace conjlab;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> ls;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) ls.push_back(line);
    return ls;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/conjlab_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("map ingestion") {
    const PLUnimodalMap g = parse_map_json(
        R"({"vertices": [["0","0"],["1/5","1/2"],["1/2","1"],["1","0"]]})");
    CHECK(g == thm5_map());
    CHECK_THROWS_AS(parse_map_json(R"({"vertices": [["0","0"],["0.5","1"],["1","0"]]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_map_json(R"({"vertices": [[0,0],[1,1]]})"), ParseError);
    CHECK_THROWS_AS(parse_map_json(R"({"points": []})"), ParseError);
    CHECK_THROWS_AS(parse_map_json("not json"), ParseError);

    CHECK(load_map("tent") == tent_map());
    CHECK(load_map("thm5") == thm5_map());
    CHECK(load_map("skew:1/5") == make_skew_tent(Rational(1, 5)));
    CHECK_THROWS_AS(load_map("/nonexistent/file.json"), ParseError);

    const PLUnimodalMap back = parse_map_json(map_to_json(thm5_map()));
    CHECK(back == thm5_map());
}

TEST_CASE("cmd lattice") {
    const RunResult r3 = run({"lattice", "--map", "tent", "--depth", "3"});
    CHECK(r3.code == 0);
    const auto ls = lines_of(r3.out);
    REQUIRE(ls.size() == 6);  // header + 5 rows
    CHECK(ls[0] == "n,k,mu,mu_dec");
    CHECK(ls[1].rfind("3,0,0/1,", 0) == 0);
    CHECK(ls[3].rfind("3,2,1/2,", 0) == 0);

    const RunResult r1 = run({"lattice", "--map", "tent", "--depth", "1"});
    CHECK(lines_of(r1.out).size() == 3);

    const RunResult deep = run({"lattice", "--map", "tent", "--depth", "40"});
    CHECK(deep.code == 2);
    CHECK(deep.err.find("depth cap") != std::string::npos);
}

TEST_CASE("lattice CSV rows round-trip to the exact rationals") {
    const RunResult r4 = run({"lattice", "--map", "thm5", "--depth", "4"});
    const Lattice L = lattice_level(thm5_map(), 4);
    const auto ls = lines_of(r4.out);
    REQUIRE(ls.size() == L.points.size() + 1);
    for (size_t i = 1; i < ls.size(); ++i) {
        std::stringstream ss(ls[i]);
        std::string n, k, mu;
        std::getline(ss, n, ',');
        std::getline(ss, k, ',');
        std::getline(ss, mu, ',');
        CHECK(parse_rational(mu) == L.points[i - 1]);
    }
}

TEST_CASE("cmd carcass") {
    const RunResult tent = run({"carcass", "--map", "tent"});
    CHECK(tent.code == 0);
    CHECK(tent.out.find("n0,2") != std::string::npos);

    const RunResult g = run({"carcass", "--map", "thm5"});
    CHECK(g.code == 0);
    CHECK(g.out.find("n0,3") != std::string::npos);
    CHECK(g.out.find("kink,1/5,") != std::string::npos);

    const std::string bad = write_temp(
        "noncarcass.json",
        R"({"vertices": [["0","0"],["1/3","1/3"],["1/2","1"],["1","0"]]})");
    const RunResult nc = run({"carcass", "--map", bad});
    CHECK(nc.code == 1);
    CHECK(nc.out.find("not_carcass_within,12") != std::string::npos);
    std::remove(bad.c_str());
}

TEST_CASE("cmd expand") {
    const RunResult a = run({"expand", "--map", "tent", "--x", "2/3", "--depth", "8"});
    CHECK(a.code == 0);
    CHECK(a.out.find("bits,10101010") != std::string::npos);
    CHECK(a.out.find("finite,false") != std::string::npos);

    const RunResult z = run({"expand", "--map", "thm5", "--x", "0", "--depth", "8"});
    CHECK(z.out.find("bits,00000000") != std::string::npos);
    CHECK(z.out.find("finite,true") != std::string::npos);

    const RunResult o = run({"expand", "--map", "thm5", "--x", "1", "--depth", "8"});
    CHECK(o.out.find("bits,11111111") != std::string::npos);

    const RunResult tr =
        run({"expand", "--map", "tent", "--x", "1/2", "--depth", "4", "--trace"});
    CHECK(tr.out.find("n,bit,k,a,b,len") != std::string::npos);
    CHECK(tr.out.find("1,1,1,1/2,1/1,1/2") != std::string::npos);
}

TEST_CASE("cmd slopes") {
    const RunResult s = run({"slopes", "--map", "tent", "--map2", "skew:1/5", "--x", "0",
                             "--depth", "30"});
    CHECK(s.code == 0);
    const auto ls = lines_of(s.out);
    CHECK(ls[0] == "n,left,right,left_dec,right_dec");
    CHECK(ls[1].rfind("1,1/1,1/1,", 0) == 0);
    CHECK(ls[2].rfind("2,2/5,2/5,", 0) == 0);
    CHECK(s.out.find("classification_left,Zero") != std::string::npos);
    CHECK(s.out.find("classification_right,Zero") != std::string::npos);

    const RunResult c = run({"slopes", "--map", "tent", "--map2", "thm5", "--x", "2/3"});
    CHECK(c.out.find("classification_left,ConvergesTo,1/1") != std::string::npos);
}

TEST_CASE("cmd conj-eval") {
    const RunResult e = run({"conj-eval", "--map", "tent", "--map2", "skew:1/5", "--x", "1/2"});
    CHECK(e.code == 0);
    CHECK(e.out.find("exact,true") != std::string::npos);
    CHECK(e.out.find("h_lo,1/5,") != std::string::npos);

    const RunResult t = run({"conj-eval", "--map", "tent", "--map2", "thm5", "--x", "2/3",
                             "--tol", "1/1048576"});
    CHECK(t.code == 0);
    CHECK(t.out.find("depth,lo,hi,width") != std::string::npos);
    CHECK(t.out.find("exact,false") != std::string::npos);
}

TEST_CASE("cmd quotients") {
    const RunResult q = run({"quotients", "--map", "tent", "--map2", "tent", "--x", "1/2",
                             "--samples", "1/4,3/4"});
    CHECK(q.code == 0);
    const auto ls = lines_of(q.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[1].rfind("1/4,1/1,1/1,", 0) == 0);
}

TEST_CASE("cmd verify") {
    const RunResult v1 = run({"verify", "--map", "tent", "--seed", "5"});
    CHECK(v1.code == 0);
    CHECK(v1.out.find("RESULT,PASS") != std::string::npos);
    CHECK(v1.out.find("PASS,lattice-cardinality") != std::string::npos);

    const RunResult v2 =
        run({"verify", "--map", "tent", "--map2", "skew:1/5", "--seed", "5", "--depth", "6"});
    CHECK(v2.code == 0);
    CHECK(v2.out.find("PASS,lemma-1.3") != std::string::npos);

    const std::string bad = write_temp("corrupt.json", R"({"vertices": [["0","0"]]})");
    const RunResult v3 = run({"verify", "--map", bad});
    CHECK(v3.code == 2);
    std::remove(bad.c_str());
}

TEST_CASE("cmd thm5-demo is deterministic and complete") {
    const RunResult d1 = run({"thm5-demo"});
    const RunResult d2 = run({"thm5-demo"});
    CHECK(d1.code == 0);
    CHECK(d1.out == d2.out);
    CHECK(d1.out.find("n0_g2,3") != std::string::npos);
    CHECK(d1.out.find("x_star,2/3,") != std::string::npos);
    CHECK(d1.out.find("20,1/1,1/1") != std::string::npos);
    CHECK(d1.out.find("pl_detector,NotStabilized") != std::string::npos);
    CHECK(d1.out.find("spread_left_lo,") != std::string::npos);
}

TEST_CASE("cmd verify is byte-deterministic") {
    const std::vector<std::string> args{"verify", "--map", "tent", "--map2", "skew:1/5",
                                        "--seed", "11", "--depth", "6"};
    const RunResult a = run(args);
    const RunResult b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("json output carries the schema tag") {
    const RunResult j = run({"lattice", "--map", "tent", "--depth", "2", "--format", "json"});
    CHECK(j.code == 0);
    CHECK(j.out.find("\"schema\": \"conjlab/1\"") != std::string::npos);

    const RunResult d = run({"thm5-demo", "--format", "json"});
    CHECK(d.code == 0);
    CHECK(d.out.find("\"schema\": \"conjlab/1\"") != std::string::npos);
    CHECK(d.out.find("\"pl_detector\": \"NotStabilized\"") != std::string::npos);
}

TEST_CASE("--out writes the report to a file") {
    const std::string path = "/tmp/conjlab_test_out.csv";
    const RunResult r = run({"lattice", "--map", "tent", "--depth", "2", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("n,k,mu") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"lattice"}).code == 2);                       // missing required options
    CHECK(run({"unknown-command"}).code == 2);
    CHECK(run({}).code == 2);                                // subcommand required
    CHECK(run({"expand", "--map", "tent", "--x", "0.5", "--depth", "4"}).code == 2);
    CHECK(run({"lattice", "--map", "tent", "--depth", "3", "--format", "xml"}).code == 2);
}

TEST_CASE("CONJLAB_DEPTH_CAP overrides the caps") {
    setenv("CONJLAB_DEPTH_CAP", "4", 1);
    const RunResult ok = run({"lattice", "--map", "tent", "--depth", "4"});
    CHECK(ok.code == 0);
    const RunResult blocked = run({"lattice", "--map", "tent", "--depth", "5"});
    CHECK(blocked.code == 2);
    setenv("CONJLAB_DEPTH_CAP", "banana", 1);
    CHECK(run({"lattice", "--map", "tent", "--depth", "3"}).code == 2);
    unsetenv("CONJLAB_DEPTH_CAP");
    CHECK(run({"lattice", "--map", "tent", "--depth", "5"}).code == 0);
}
