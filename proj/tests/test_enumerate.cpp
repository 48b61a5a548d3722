#include "doctest.h"

#include "atlas/enumerate.hpp"
#include "atlas/oracle.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace atlas;

namespace {

struct Line {
    int m;
    std::string kac;
    std::string rlyg;
};

struct Expected {
    std::string levi, orbit;
    int count;
    std::string chi;
    std::vector<Line> lines;
    std::string spec, family_kac;
};

void check_rows(const std::string& diagram, const std::vector<Expected>& want) {
    std::vector<std::string> warnings;
    const auto rows = exceptional_enumerate(diagram, 0, &warnings);
    CHECK(warnings.empty());
    REQUIRE(rows.size() == want.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const auto& w = want[i];
        INFO(diagram << " row " << i + 1 << " " << r.levi);
        CHECK(r.levi == w.levi);
        CHECK(r.orbit() == w.orbit);
        CHECK(r.count == w.count);
        CHECK(r.chi == w.chi);
        CHECK(r.family_spec() == w.spec);
        CHECK(r.family_kac() == w.family_kac);
        REQUIRE(r.explicit_lines.size() == w.lines.size());
        for (size_t j = 0; j < w.lines.size(); ++j) {
            CHECK(r.explicit_lines[j].m == w.lines[j].m);
            CHECK(kac_string(r.explicit_lines[j].kac) == w.lines[j].kac);
            CHECK(r.explicit_lines[j].rlyg.value_or("") == w.lines[j].rlyg);
        }
    }
}

// Inverse of a small integer Cartan matrix over Q.
Mat<Rat> inverse(const IMat& c) {
    const int n = static_cast<int>(c.size());
    Mat<Rat> out(n, std::vector<Rat>(n));
    for (int col = 0; col < n; ++col) {
        Mat<Rat> a(n, std::vector<Rat>(n));
        std::vector<Rat> e(n, Rat(0));
        e[col] = 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a[i][j] = c[i][j];
        auto x = solve(a, e);
        for (int i = 0; i < n; ++i) out[i][col] = x[i];
    }
    return out;
}

// Value of a weight tuple on exp(2 pi i omega_j^vee): component fundamental weights written through
// the inverse component Cartan matrix, paired with omega_j^vee root by root (affine root -> -mark_j).
Rat chi_oracle(const AffineDiagram& d, const std::vector<Component>& comps, const std::vector<IVec>& w) {
    int j = -1;
    for (int p = 0; p < d.size(); ++p)
        if (p != d.affine_node && d.comarks[p] == 1) { j = p; break; }
    auto pair_root = [&](int p) -> Rat {
        if (p == d.affine_node) return Rat(-d.marks[j]);
        return Rat(p == j ? 1 : 0);
    };
    Rat v = 0;
    for (size_t c = 0; c < comps.size(); ++c) {
        const auto inv = inverse(submatrix(d.cartan, comps[c].nodes));
        const int n = static_cast<int>(comps[c].nodes.size());
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) v += Rat(w[c][k]) * inv[i][k] * pair_root(comps[c].nodes[i]);
    }
    return frac_part(v);
}

int total(const IVec& d) {
    int t = 0;
    for (int x : d) t += x;
    return t;
}

std::vector<Family> families_up_to(int max_m0) {
    std::vector<Family> out;
    for (const auto& [k, name] : family_names())
        for (int m0 = 1; m0 <= max_m0; ++m0) {
            try {
                out.push_back(make_family(k, m0));
            } catch (const std::invalid_argument&) {
            }
        }
    return out;
}

}  // namespace

TEST_CASE("enumerate: eta and delta") {
    const int eta_want[13] = {1, 1, 1, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2};
    for (int n = 0; n <= 12; ++n) CHECK(eta(n) == eta_want[n]);
    for (int n = 1; n <= 12; ++n) CHECK(delta(n) == (n % 2 == 0 ? 1 : 0));
    CHECK(eta(0) == 1);
    CHECK(eta(3) == 2);
    CHECK(eta(2) == 1);
    CHECK(delta(1) == 0);
    CHECK(delta(2) == 1);
    CHECK(delta(4) == 1);
    CHECK_THROWS_AS(delta(0), std::invalid_argument);
    CHECK_THROWS_AS(eta(-1), std::invalid_argument);
}

TEST_CASE("enumerate: BDI with eps = -1 and (a,b) = (3,0) has count 2") {
    Family f = make_family("BDI", 6);
    MultiSegment s = seg_of_AB(f, {detail::odd_spaced(3), {}});
    const IVec d = s.dim_vector();
    auto res = classical_biorbital(f, d, -1);
    bool found = false;
    for (const auto& [seg, count] : res)
        if (seg == s) {
            found = true;
            CHECK(count == 2);
        }
    CHECK(found);
    for (const auto& [seg, count] : classical_biorbital(f, d, 1)) CHECK_FALSE(seg == s);
}

TEST_CASE("enumerate: CI with a + b = l is excluded") {
    for (int l = 1; l <= 4; ++l) {
        Family f = family_from_l(FamilyKind::CI, l);
        for (int a = 0; a <= l; ++a) {
            const int b = l - a;
            std::set<int> A, B;
            for (int i = 0; i < a; ++i) A.insert(i);
            for (int i = 0; i < b; ++i) B.insert(i);
            MultiSegment s = seg_of_AB(f, {A, B});
            for (const auto& [seg, count] : classical_biorbital(f, s.dim_vector())) CHECK_FALSE(seg == s);
        }
    }
}

TEST_CASE("enumerate: BDIII with eps = -1 counts 1 + eta(k)") {
    Family f = make_family("BDIII", 5);
    for (int k = 1; k <= 6; ++k) {
        MultiSegment s(f.index_set());
        for (int i = 0; i <= (k - 1) / 2; ++i) s.add_int(-2 * i - delta(k), 2 * i + delta(k));
        bool found = false;
        for (const auto& [seg, count] : classical_biorbital(f, s.dim_vector(), -1))
            if (seg == s) {
                found = true;
                CHECK(count == 1 + eta(k));
            }
        CHECK(found);
    }
}

TEST_CASE("enumerate: type A bi-orbital counts are phi(N) and vanish for m | N") {
    Family f = make_family("A", 3);
    CHECK(classical_biorbital(f, IVec{2, 1, 1}).size() == 1);
    CHECK(classical_biorbital(f, IVec{2, 1, 1})[0].second == 2);
    CHECK(classical_biorbital(f, IVec{2, 2, 1})[0].second == 4);
    CHECK(classical_biorbital(f, IVec{1, 1, 1}).empty());
}

TEST_CASE("enumerate: pattern r equals r_value and nilpotent parts are distinguished") {
    for (const auto& f : families_up_to(6))
        for (const auto& p : classical_patterns(f, 10, 2)) {
            INFO(f.str() << " " << p.clause << " " << p.params_str());
            CHECK(p.r == r_value(f, p.dims()));
            if (p.r == 0 && f.has_form()) {
                auto ds = distinguished_segments(f, p.dims());
                CHECK(std::find(ds.begin(), ds.end(), p.nilpotent) != ds.end());
            }
        }
}

TEST_CASE("enumerate: classical bi-orbital output only at r = 0") {
    int hits = 0;
    for (const auto& f : families_up_to(5))
        for (const auto& d : dimension_vectors(f, 10)) {
            if (total(d) == 0) continue;
            auto res = classical_biorbital(f, d);
            if (!res.empty()) {
                INFO(f.str() << " d=" << dims_string(d));
                CHECK(r_value(f, d) == 0);
                ++hits;
            }
        }
    CHECK(hits > 50);
}

TEST_CASE("enumerate: G2 rows") {
    check_rows("G2", {{"G2", "∅10", 1, "", {{1, "100", ""}}, "k+2", "k10"},
                      {"SL2×SL2/(ζ2,ζ2)", "1∅1", 1, "", {{4, "101", ""}}, "2k+4", "1k1"},
                      {"SL3", "11∅", 2, "", {}, "3k+3", "11k"}});
}

TEST_CASE("enumerate: 3D4 rows") {
    check_rows("3D4", {{"G2", "∅01", 1, "", {}, "k+1", "k01"}, {"SL2×SL2/(ζ2,ζ2)", "1∅1", 1, "", {}, "2k+2", "1k1"}});
}

TEST_CASE("enumerate: F4 rows") {
    check_rows("F4", {{"F4", "∅0100", 1, "", {{1, "10000", ""}}, "k+3", "k0100"},
                      {"SL2×Sp6/(ζ2,ζ2)", "1∅101", 1, "", {{4, "01001", ""}}, "2k+6", "1k101"},
                      {"SL3×SL3/(ζ3,ζ3)", "11∅11", 2, "", {{9, "11011", ""}}, "3k+9", "11k11"},
                      {"SL4×SL2/(ζ2,ζ2)", "111∅1", 2, "", {}, "4k+8", "111k1"},
                      {"Spin9", "1010∅", 1, "", {}, "2k+4", "1010k"}});
}

TEST_CASE("enumerate: 2E6 rows") {
    check_rows("2E6", {{"F4", "∅0010", 1, "", {}, "k+2", "k0010"}, {"SL3×SL3/(ζ3,ζ3)", "11∅11", 2, "", {}, "3k+6", "11k11"}});
}

TEST_CASE("enumerate: E6 rows") {
    check_rows("E6", {{"E6", "∅010101", 2, "≠1", {{1, "1000000", ""}, {4, "0110001", "4_b"}, {5, "0010101", "5_a"}}, "k+5", "k010101"},
                      {"SL2×SL6/(ζ2,ζ2)", "1∅11111", 2, "≠1", {{4, "1000100", ""}, {8, "0111011", "4_a"}, {10, "1011111", "8_b"}}, "2k+10", "1k11111"},
                      {"SL3×SL3×SL3/(ζ3,ζ3,ζ3)", "1111∅11", 2, "1", {}, "3k+9", "1111k11"}});
}

TEST_CASE("enumerate: E7 rows") {
    check_rows("E7", {{"E7", "0∅001001", 1, "≠1", {{1, "01000000", ""}, {5, "00001001", "5_a"}}, "k+5", "0k001001"},
                      {"SL3×SL6/(ζ3,ζ3)", "111∅1111", 2, "≠1", {{9, "00101011", "9_a"}, {15, "11101111", ""}}, "3k+15", "111k1111"},
                      {"SL4×SL4×SL2/(ζ4,ζ4,ζ2)", "1111∅111", 2, "1", {}, "4k+14", "1111k111"}});
}

TEST_CASE("enumerate: E8 rows") {
    check_rows("E8", {{"E8", "00001000∅", 1, "", {{1, "000000001", ""}}, "k+5", "00001000k"},
                      {"E7×SL2/(ζ2,ζ2)", "0001001∅1", 1, "", {{4, "100000001", "4_b"}}, "2k+10", "0001001k1"},
                      {"E6×SL3/(ζ3,ζ3)", "010101∅11", 2, "", {{9, "010010010", "9_c"}}, "3k+15", "010101k11"},
                      {"SL4×Spin10/(ζ4,ζ4)", "11101∅111", 2, "", {{16, "111001011", ""}}, "4k+20", "11101k111"},
                      {"SL5×SL5/(ζ5,ζ5^2)", "1111∅1111", 4, "", {{25, "111101111", ""}}, "5k+25", "1111k1111"},
                      {"SL6×SL3×SL2/(ζ6,ζ3,ζ2)", "111∅11111", 2, "", {}, "6k+24", "111k11111"},
                      {"SO16", "0∅0100101", 1, "", {{8, "001000101", "8_c"}}, "2k+10", "0k0100101"}});
}

TEST_CASE("enumerate: E8 mark-5 node") {
    const auto& d = affine_by_name("E8");
    for (const auto& r : exceptional_enumerate("E8", 0)) {
        if (d.marks[r.beta] != 5) continue;
        CHECK(r.count == 4);
        REQUIRE(r.explicit_lines.size() == 1);
        CHECK(r.explicit_lines[0].m == 25);
        CHECK(d.display_to_kac(r.explicit_lines[0].kac) == IVec{1, 1, 1, 1, 0, 1, 1, 1, 1});
        CHECK(r.family.step == 5);
        CHECK(r.family.base == 25);
    }
}

TEST_CASE("enumerate: explicit lines satisfy divisibility and equal dimensions") {
    for (const auto& name : exceptional_diagram_names()) {
        const auto& d = affine_by_name(name);
        for (const auto& r : exceptional_enumerate(name, 0)) {
            int S = 0;
            for (int p = 0; p < d.size(); ++p)
                if (p != r.beta) S += d.marks[p] * r.rho[p];
            CHECK(r.family.step == d.twist * d.marks[r.beta]);
            CHECK(r.family.base == d.twist * S);
            for (const auto& e : r.explicit_lines) {
                INFO(name << " " << r.levi << " m=" << e.m);
                CHECK((e.m / d.twist - S) % d.marks[r.beta] == 0);
                CHECK(order(d, e.kac) == e.m);
                auto g = graded_dims(d, e.kac);
                CHECK(g.g0() == g.g1());
            }
        }
    }
}

TEST_CASE("enumerate: family instances for k <= 6") {
    for (const auto& name : exceptional_diagram_names()) {
        const auto& d = affine_by_name(name);
        for (const auto& r : exceptional_enumerate(name, 6)) {
            REQUIRE(r.instances.size() == 5);
            for (const auto& e : r.instances) {
                INFO(name << " " << r.levi << " k=" << e.k);
                CHECK(e.kac[r.beta] == e.k);
                CHECK(e.m == r.family.base + r.family.step * e.k);
                CHECK(order(d, e.kac) == e.m);
                auto g = graded_dims(d, e.kac);
                CHECK(g.g0() == g.g1());
                for (int p = 0; p < d.size(); ++p)
                    if (p != r.beta) CHECK(e.kac[p] == r.rho[p]);
            }
        }
    }
}

TEST_CASE("enumerate: chi agrees with the inverse-Cartan oracle on every surviving tuple") {
    for (const std::string name : {"E6", "E7"}) {
        const auto& d = affine_by_name(name);
        for (int beta = 0; beta < d.size(); ++beta) {
            const auto comps = pseudo_levi(d, beta);
            std::vector<std::vector<IVec>> opts;
            bool ok = true;
            for (const auto& c : comps) {
                std::vector<IVec> v;
                try {
                    for (const auto& dat : cuspidal_pairs(c.type))
                        for (const auto& ch : dat.characters) v.push_back(ch);
                } catch (const NoCuspidalData&) {
                    ok = false;
                }
                opts.push_back(v);
            }
            if (!ok) continue;
            std::vector<size_t> idx(comps.size(), 0);
            bool any = true;
            for (auto& o : opts) any = any && !o.empty();
            while (any) {
                std::vector<IVec> w;
                for (size_t c = 0; c < comps.size(); ++c) w.push_back(opts[c][idx[c]]);
                INFO(name << " beta=" << beta);
                CHECK(center_value(d, beta, comps, w) == chi_oracle(d, comps, w));
                size_t c = 0;
                while (c < idx.size() && ++idx[c] == opts[c].size()) idx[c++] = 0;
                if (c == idx.size()) break;
            }
        }
    }
}

TEST_CASE("enumerate: faithful central characters are nontrivial on Z(G)") {
    // SL2 x SL6 / mu2 in E6 and SL3 x SL6 / mu3 in E7: Z(L) is cyclic of order 6 and a character
    // primitive on the SL6 factor is faithful, so it cannot vanish on Z(G).
    for (const auto& [name, levi] : std::vector<std::pair<std::string, std::string>>{{"E6", "SL2×SL6/(ζ2,ζ2)"},
                                                                                     {"E7", "SL3×SL6/(ζ3,ζ3)"}}) {
        bool seen = false;
        for (const auto& r : exceptional_enumerate(name, 0))
            if (r.levi == levi) {
                seen = true;
                CHECK(r.chi == "≠1");
            }
        CHECK(seen);
    }
}

TEST_CASE("enumerate: missing cuspidal data is a warning, not an empty result") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "atlas_enum_missing";
    fs::create_directories(dir);
    for (const char* f : {"diagrams.json", "gradings.json"}) fs::copy_file(fs::path(data_dir()) / f, dir / f, fs::copy_options::overwrite_existing);
    json cusp = json::parse(read_file(data_dir() + "/cuspidal.json"));
    json kept = json::array();
    for (const auto& e : cusp["factors"])
        if (e["factor"] != "C3") kept.push_back(e);
    cusp["factors"] = kept;
    const std::string bytes = cusp.dump(2);
    std::ofstream(dir / "cuspidal.json") << bytes;
    json manifest{{"schema", "atlas.manifest/1"}, {"files", json::object()}};
    for (const char* f : {"cuspidal.json", "diagrams.json", "gradings.json"})
        manifest["files"][f] = crc32_hex(read_file((dir / f).string()));
    std::ofstream(dir / "MANIFEST.json") << manifest.dump(2);
    set_data_dir(dir.string());
    std::vector<std::string> warnings;
    auto rows = exceptional_enumerate("F4", 0, &warnings);
    set_data_dir("");
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("C3") != std::string::npos);
    CHECK(rows.size() == 4);
    for (const auto& r : rows) CHECK(r.levi != "SL2×Sp6/(ζ2,ζ2)");
    fs::remove_all(dir);
}

TEST_CASE("enumerate: emitters") {
    auto rows = exceptional_enumerate("G2", 3);
    const std::string md = to_markdown("G2", rows, 3);
    CHECK(md.find("| L | O_L | # | m | Kac |") != std::string::npos);
    CHECK(md.find("| SL3 | 11∅ | 2 | 3k+3 | 11k |") != std::string::npos);
    CHECK(md.find("| 9 (k=2) | 112 |") != std::string::npos);
    const json j = to_json("G2", rows, 3);
    CHECK(j["schema"] == "atlas.biorbital/1");
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][2]["family"]["spec"] == "3k+3");
    CHECK(j["rows"][2]["instances"].size() == 2);
    const std::string csv = to_csv("G2", rows);
    CHECK(csv.rfind("diagram,row,L,O_L,count,chi,kind,m,k,kac,rlyg\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 + 4 + 3);
    const std::string md3 = to_markdown("3D4", exceptional_enumerate("3D4", 0), 0);
    CHECK(md3.find("| m/3 |") != std::string::npos);
    CHECK(to_markdown("E6", exceptional_enumerate("E6", 0), 0).find("| χ |") != std::string::npos);
    CHECK_THROWS_AS(exceptional_enumerate("B3", 0), std::invalid_argument);
}
