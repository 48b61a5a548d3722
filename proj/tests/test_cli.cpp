#include "doctest.h"

#include "atlas/data.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(ATLAS_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("cli: graded dimensions of the twisted E6 example") {
    auto r = run("grading kac --diagram 2E6 --coords 1,1,0,1,0");
    CHECK(r.status == 0);
    CHECK(has(r.out, "m: 10\n"));
    CHECK(has(r.out, "dims[0] = 8\n"));
    CHECK(has(r.out, "dims[1] = 9\n"));
}

TEST_CASE("cli: classical grading and classification") {
    auto g = run("grading classical --family A --m0 2 --dims 2,1");
    CHECK(g.status == 0);
    CHECK(has(g.out, "r: 0\n"));
    auto c = run("classify classical --family BDII --m0 4 --dims 1,1,1,1");
    CHECK(c.status == 0);
    CHECK(has(c.out, "exists: no\n"));
    auto j = run("classify classical --family A --m0 2 --dims 2,2 --format json");
    CHECK(j.status == 0);
    const auto rep = atlas::json::parse(j.out);
    CHECK(rep["exists"] == true);
    CHECK(rep["r"] == 1);
    CHECK(rep["support"]["kind"] == "stratum");
    CHECK(rep["weyl_group"] == "G_{2,1,1}");
}

TEST_CASE("cli: exceptional classification by label and by coordinates") {
    auto a = run("classify kac --diagram E7 --label 4_a --format json");
    CHECK(a.status == 0);
    const auto j = atlas::json::parse(a.out);
    CHECK(j["exists"] == true);
    CHECK(j["support"]["kind"] == "full");
    auto b = run("classify kac --diagram E7 --coords 1,1,0,1,0,1,0,1");
    CHECK(b.status == 0);
    CHECK(has(b.out, "exists: no\n"));
    CHECK(has(b.out, "(10_a)"));
}

TEST_CASE("cli: G2 table with families expanded") {
    auto r = run("enumerate --diagram G2 --kmax 4 --format md");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("## G2\n", 0) == 0);
    CHECK(has(r.out, "| SL3 | 11∅ | 2 | 3k+3 | 11k |\n"));
    CHECK(has(r.out, "|  |  |  | 15 (k=4) | 114 |\n"));
    CHECK(has(r.out, "Families instantiated for 2 <= k <= 4."));
    auto j = run("enumerate --diagram G2 --kmax 2 --format json");
    CHECK(atlas::json::parse(j.out)["rows"].size() == 3);
    auto c = run("enumerate --diagram F4 --format csv");
    CHECK(c.out.rfind("diagram,row,L,O_L,count,chi,kind,m,k,kac,rlyg\n", 0) == 0);
}

TEST_CASE("cli: tables check is deterministic and matches the golden files") {
    auto a = run("tables --all --check");
    auto b = run("tables --all --check");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    for (const char* d : {"G2", "3D4", "F4", "2E6", "E6", "E7", "E8"}) CHECK(has(a.out, std::string("ok ") + d + "\n"));
    auto e1 = run("enumerate --diagram E8 --format json");
    auto e2 = run("enumerate --diagram E8 --format json");
    CHECK(e1.out == e2.out);
}

TEST_CASE("cli: golden mismatch exits 2 with a diff") {
    namespace fs = std::filesystem;
    const fs::path p = fs::temp_directory_path() / "atlas_cli_golden.md";
    CHECK(run("enumerate --diagram F4 --golden " + p.string()).status == 0);
    CHECK(run("enumerate --diagram F4 --golden " + p.string() + " --check").status == 0);
    {
        std::ofstream out(p, std::ios::app);
        out << "extra line\n";
    }
    auto r = run("enumerate --diagram F4 --golden " + p.string() + " --check", true);
    CHECK(r.status == 2);
    CHECK(has(r.out, "mismatch"));
    CHECK(has(r.out, "extra line"));
    fs::remove(p);
}

TEST_CASE("cli: usage errors exit 1") {
    CHECK(run("").status == 1);
    CHECK(run("frobnicate").status == 1);
    CHECK(run("grading kac --diagram E9 --coords 1").status == 1);
    CHECK(run("grading kac --diagram G2 --coords 1,0").status == 1);
    CHECK(run("grading classical --family XYZ --m0 2 --dims 1,1").status == 1);
    CHECK(run("classify kac --diagram B3 --coords 1,0,0,0").status == 1);
    CHECK(run("classify kac --diagram E7").status == 1);
    CHECK(run("enumerate --diagram E6 --format pdf").status == 1);
    CHECK(run("enumerate --diagram E6 --check").status == 1);
    CHECK(run("oracle jordan --family A --m0 2 --dims 1,1 --samples 10").status == 1);
    CHECK(run("--help").status == 0);
}

TEST_CASE("cli: data directory override") {
    CHECK(run("--data-dir /nonexistent/atlas classify kac --diagram E7 --label 4_a").status == 2);
    const std::string env = "ATLAS_DATA_DIR=/nonexistent/atlas ";
    FILE* p = popen((env + ATLAS_CLI_PATH + " classify kac --diagram E7 --label 4_a >/dev/null 2>&1").c_str(), "r");
    REQUIRE(p != nullptr);
    const int st = pclose(p);
    CHECK(WEXITSTATUS(st) == 2);
}

TEST_CASE("cli: roots and oracle") {
    auto r = run("roots E8");
    CHECK(r.status == 0);
    CHECK(has(r.out, "positive roots: 120\n"));
    CHECK(has(r.out, "coxeter number: 30\n"));
    auto t = run("roots 3D4");
    CHECK(has(t.out, "coxeter number: 4\n"));
    auto o = run("oracle jordan --family A --m0 2 --dims 1,1 --samples 50 --seed 3");
    CHECK(o.status == 0);
    CHECK(has(o.out, "admissible: 3, observed: 3\n"));
    auto z = run("oracle jordan --family A --m0 2 --dims 0,0 --samples 5 --seed 3");
    CHECK(z.status == 0);
    CHECK(has(z.out, "admissible: 1, observed: 1\n"));
    auto o2 = run("oracle jordan --family A --m0 2 --dims 1,1 --samples 50 --seed 3");
    CHECK(o.out == o2.out);
}
