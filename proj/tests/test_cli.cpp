#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jacpair/atlas.hpp"
#include "jacpair/cli.hpp"
#include "jacpair/divisor.hpp"
#include "jacpair/graph.hpp"
#include "jacpair/pairing.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace jacpair;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    TempFile(const std::string& p, const std::string& body) : path(p) {
        std::ofstream f(p, std::ios::binary);
        f << body;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("jacobian of the 4-cycle") {
    TempFile g("cli_c4.txt", emit_graph(cycle_graph(4)));
    Run r = cli({"jacobian", g.path});
    CHECK(r.code == 0);
    CHECK(r.out == "factors: 4\n");

    Run p = cli({"--pretty", "jacobian", g.path});
    CHECK(p.code == 0);
    CHECK(p.out.find("Z/4") != std::string::npos);
}

TEST_CASE("pairing on the 5-banana") {
    TempFile g("cli_b5.txt", emit_graph(banana_graph(5)));
    Run r = cli({"pairing", g.path, "--d1", "1:1,0:-1", "--d2", "1:1,0:-1"});
    CHECK(r.code == 0);
    CHECK(r.out == "1/5\n");

    // zero pairing prints an exact fraction too
    Run z = cli({"pairing", g.path, "--d1", "1:5,0:-5", "--d2", "1:1,0:-1"});
    CHECK(z.code == 0);
    CHECK(z.out == "0/1\n");
}

TEST_CASE("reduce matches the library") {
    TempFile g("cli_c4r.txt", emit_graph(cycle_graph(4)));
    Run r = cli({"reduce", g.path, "--divisor", "2:5", "--base", "0"});
    CHECK(r.code == 0);
    Divisor want = dhar_reduce(cycle_graph(4), parse_divisor("2:5", 4), 0);
    CHECK(r.out == emit_divisor(want) + "\n");
}

TEST_CASE("realize then classify round trips through files") {
    Run rea = cli({"realize", "2^3:D", "-o", "cli_realized.txt"});
    REQUIRE(rea.code == 0);
    std::string body = slurp("cli_realized.txt");
    CHECK(body.find("# spec: 2^3:D") != std::string::npos);

    Run cls = cli({"classify", "cli_realized.txt"});
    CHECK(cls.code == 0);
    CHECK(cls.out == "2^3:D\n");
    std::remove("cli_realized.txt");

    // stdout emission parses as a graph despite trailing comments
    Run direct = cli({"realize", "3^1:res"});
    CHECK(direct.code == 0);
    CHECK(parse_graph(direct.out) == banana_graph(3));
}

TEST_CASE("realize failure modes map to exit codes") {
    Run unreal = cli({"realize", "E:2"});
    CHECK(unreal.code == 1);
    CHECK(unreal.err.find("error:") == 0);
    Run bad = cli({"realize", "2^2:C"});
    CHECK(bad.code == 2); // grammar violation: C needs r >= 3
}

TEST_CASE("verify-q reports and exit codes") {
    Run filt = cli({"verify-q", "1000"});
    CHECK(filt.code == 0);
    CHECK(filt.out.find("checked=14 failures=0") == 0);

    Run all = cli({"verify-q", "50", "--all"});
    CHECK(all.code == 1);
    CHECK(all.err.find(" 3") != std::string::npos);
    CHECK(all.err.find(" 11") != std::string::npos);

    Run certs = cli({"verify-q", "1000", "--emit-certificates"});
    CHECK(certs.code == 0);
    CHECK(certs.out.find("p\tq\ta\tratio\n") == 0);
    CHECK(certs.out.find("73\t7\t") != std::string::npos);

    Run jobs = cli({"verify-q", "1000", "--emit-certificates", "--jobs", "4"});
    CHECK(jobs.out == certs.out);
}

TEST_CASE("census output and atomic file write") {
    Run r = cli({"census", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == census_tsv(census(4)));

    Run w = cli({"census", "8", "-o", "cli_census.tsv", "--jobs", "2"});
    CHECK(w.code == 0);
    CHECK(w.out.empty());
    CHECK(slurp("cli_census.tsv") == census_tsv(census(8)));
    std::remove("cli_census.tsv");
}

TEST_CASE("check-absence verdicts") {
    Run absent = cli({"check-absence", "2,4", "--max-trees", "8"});
    CHECK(absent.code == 0);
    CHECK(absent.out == "ABSENT\n");

    Run present = cli({"check-absence", "8", "--max-trees", "8"});
    CHECK(present.code == 0);
    CHECK(present.out.find("PRESENT\n") == 0);
    // the witness graph is embedded and parseable
    std::size_t start = present.out.find("\n# parts:");
    REQUIRE(start != std::string::npos);
    std::size_t graph_start = present.out.find('\n', start + 1) + 1;
    Multigraph witness = parse_graph(present.out.substr(graph_start));
    CHECK(jacobian(witness, 0).invariant_factors == std::vector<Int>{8});

    Run too_small = cli({"check-absence", "2,4", "--max-trees", "4"});
    CHECK(too_small.code == 2);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(cli({"no-such-command"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"jacobian"}).code == 2);                 // missing file argument
    CHECK(cli({"jacobian", "missing_file.txt"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"--help"}).out.find("jacobian") != std::string::npos);
}
