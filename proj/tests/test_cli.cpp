// Drives the installed binary through files only: every subcommand, every
// exit-code class.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "cfas/io.hpp"
#include "cfas/reduction.hpp"
#include "doctest.h"
#include "support/reference.hpp"

namespace fs = std::filesystem;

namespace {

struct Workspace {
    fs::path dir;
    Workspace() {
        dir = fs::temp_directory_path() /
              ("cfas_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Workspace() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string path(const std::string& name) const {
        return (dir / name).string();
    }
    void put(const std::string& name, std::string_view data) const {
        cfas::io::write_file(path(name), data);
    }
    std::string get(const std::string& name) const {
        return cfas::io::read_file(path(name));
    }
};

int run(const Workspace& ws, const std::string& args) {
    const std::string cmd = std::string(CFAS_CLI_PATH) + " " + args + " > " +
                            ws.path("stdout.txt") + " 2> " +
                            ws.path("stderr.txt");
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

const char* kFig7 = "p cnf 3 2\n1 -2 3 0\n-1 -2 3 0\n";
const char* kThreeCycle = "tournament 3\n10\n1\n";

}  // namespace

TEST_CASE("reduce, encode, decode pipeline") {
    Workspace ws;
    ws.put("fig7.cnf", kFig7);

    CHECK(run(ws, "reduce --cnf " + ws.path("fig7.cnf") + " --out " +
                      ws.path("t.trn") + " --emit-order " + ws.path("t.ord") +
                      " --emit-roles " + ws.path("t.roles")) == 0);
    cfas::Tournament t = cfas::io::read_tournament(ws.get("t.trn"));
    CHECK(t.size() == 32 * 3 + 75 * 2);
    CHECK(ws.get("t.ord").size() > 0);
    CHECK(cfas::io::read_roles(ws.get("t.roles")).size() ==
          static_cast<std::size_t>(t.size()));

    // x3 = true satisfies both clauses.
    ws.put("nu.asn", "1 0\n2 0\n3 1\n");
    CHECK(run(ws, "encode --cnf " + ws.path("fig7.cnf") + " --assignment " +
                      ws.path("nu.asn") + " --out " + ws.path("nu.ord")) == 0);
    CHECK(run(ws, "decode --cnf " + ws.path("fig7.cnf") + " --ordering " +
                      ws.path("nu.ord")) == 0);
    CHECK(ws.get("stdout.txt") == "v1=false\nv2=false\nv3=true\n");
}

TEST_CASE("encode and decode validation failures exit 1") {
    Workspace ws;
    ws.put("fig7.cnf", kFig7);
    // x1=false, x2=true, x3=false falsifies the first clause.
    ws.put("bad.asn", "1 0\n2 1\n3 0\n");
    CHECK(run(ws, "encode --cnf " + ws.path("fig7.cnf") + " --assignment " +
                      ws.path("bad.asn") + " --out " + ws.path("x.ord")) == 1);
    CHECK_FALSE(fs::exists(ws.path("x.ord")));

    auto r = cfas::reduction::reduce(cfas::io::parse_dimacs(kFig7));
    ws.put("rev.ord", cfas::io::write_ordering(r.star_order.reversed()));
    CHECK(run(ws, "decode --cnf " + ws.path("fig7.cnf") + " --ordering " +
                      ws.path("rev.ord")) == 1);
}

TEST_CASE("parse and usage errors exit 2") {
    Workspace ws;
    ws.put("broken.cnf", "p cnf 2 1\n1 2 0\n");
    CHECK(run(ws, "reduce --cnf " + ws.path("broken.cnf") + " --out " +
                      ws.path("t.trn")) == 2);
    ws.put("fig7.cnf", kFig7);
    ws.put("short.asn", "1 1\n");
    CHECK(run(ws, "encode --cnf " + ws.path("fig7.cnf") + " --assignment " +
                      ws.path("short.asn") + " --out " + ws.path("x.ord")) ==
          2);
    ws.put("junk.ord", "0 1 junk\n");
    CHECK(run(ws, "decode --cnf " + ws.path("fig7.cnf") + " --ordering " +
                      ws.path("junk.ord")) == 2);
    CHECK(run(ws, "reduce --cnf " + ws.path("missing.cnf") + " --out " +
                      ws.path("t.trn")) == 2);
    CHECK(run(ws, "frobnicate") == 2);
}

TEST_CASE("solve decisions and witnesses") {
    Workspace ws;
    ws.put("c3.trn", kThreeCycle);
    CHECK(run(ws, "solve --tournament " + ws.path("c3.trn") +
                      " --class forest --witness " + ws.path("w.ord")) == 0);
    CHECK(ws.get("stdout.txt").rfind("yes\n", 0) == 0);
    cfas::Tournament c3 = cfas::io::read_tournament(kThreeCycle);
    CHECK(cfas::is_forest_ordering(
        c3, cfas::io::read_ordering(ws.get("w.ord"), c3)));

    CHECK(run(ws, "solve --tournament " + ws.path("c3.trn") +
                      " --class tree") == 0);
    CHECK(run(ws, "solve --tournament " + ws.path("c3.trn") +
                      " --class clique1") == 1);
    CHECK(run(ws, "solve --tournament " + ws.path("c3.trn") +
                      " --class forest --oracle") == 0);
    CHECK(run(ws, "solve --tournament " + ws.path("c3.trn") +
                      " --class pathwidth1") == 2);

    // No forest FAS on the quadratic-residue 7-tournament.
    cfas::TournamentBuilder pb(7);
    for (int u = 0; u < 7; ++u)
        for (int v = 0; v < 7; ++v) {
            const int d = (v - u + 7) % 7;
            if (d == 1 || d == 2 || d == 4) pb.set_arc(u, v);
        }
    ws.put("p7.trn", cfas::io::write_tournament(pb.finalize()));
    CHECK(run(ws, "solve --tournament " + ws.path("p7.trn") +
                      " --class forest") == 1);

    // Oracle guard: 11 vertices is past the factorial wall.
    ws.put("t11.trn", cfas::io::write_tournament(cfas::transitive(11).first));
    CHECK(run(ws, "solve --tournament " + ws.path("t11.trn") +
                      " --class forest --oracle") == 2);
}

TEST_CASE("solve output is identical across worker counts") {
    Workspace ws;
    cfas::testing::Rng rng(20240809);
    ws.put("r8.trn", cfas::io::write_tournament(
                         cfas::testing::random_tournament(8, rng)));
    CHECK(run(ws, "solve --tournament " + ws.path("r8.trn") +
                      " --class forest --threads 1 --witness " +
                      ws.path("w1.ord")) <= 1);
    std::string out1 = ws.get("stdout.txt");
    CHECK(run(ws, "solve --tournament " + ws.path("r8.trn") +
                      " --class forest --threads 4 --witness " +
                      ws.path("w4.ord")) <= 1);
    CHECK(ws.get("stdout.txt") == out1);
    if (fs::exists(ws.path("w1.ord")))
        CHECK(ws.get("w1.ord") == ws.get("w4.ord"));
}

TEST_CASE("stats, dic, omega") {
    Workspace ws;
    ws.put("c3.trn", kThreeCycle);
    CHECK(run(ws, "stats --tournament " + ws.path("c3.trn")) == 0);
    CHECK(ws.get("stdout.txt") == "n 3\narcs 3\n");
    CHECK(run(ws, "dic --tournament " + ws.path("c3.trn")) == 0);
    CHECK(ws.get("stdout.txt") == "2\n");
    CHECK(run(ws, "omega --tournament " + ws.path("c3.trn")) == 0);
    CHECK(ws.get("stdout.txt") == "2\n");

    ws.put("t9.trn", cfas::io::write_tournament(cfas::transitive(9).first));
    CHECK(run(ws, "dic --tournament " + ws.path("t9.trn")) == 2);
    CHECK(run(ws, "omega --tournament " + ws.path("t9.trn")) == 2);
}

TEST_CASE("magic-verify") {
    Workspace ws;
    CHECK(run(ws, "magic-verify") == 0);
    std::string first = ws.get("stdout.txt");
    CHECK(first.find("result: PASS") != std::string::npos);
    CHECK(first.find("40320") != std::string::npos);
    CHECK(run(ws, "magic-verify --threads 1") == 0);
    CHECK(ws.get("stdout.txt") == first);
}
