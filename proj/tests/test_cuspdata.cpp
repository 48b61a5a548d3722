#include "doctest.h"

#include "atlas/cuspdata.hpp"

#include <numeric>

using namespace atlas;

namespace {

int phi(int n) {
    int r = 0;
    for (int k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++r;
    return r;
}

json minimal_table(const json& system, const std::string& factor) {
    json j;
    j["schema"] = "atlas.cuspidal/1";
    j["generic"] = json::array();
    j["factors"] = json::array({{{"factor", factor}, {"systems", json::array({system})}}});
    return j;
}

}  // namespace

TEST_CASE("cuspdata: type A counts are phi(n)") {
    for (int n = 1; n <= 12; ++n) {
        CartanType t{'A', n};
        auto v = cuspidal_pairs(t);
        REQUIRE(v.size() == 1);
        CHECK(v[0].count() == phi(n + 1));
        CHECK(v[0].rho == IVec(n, 1));
        CHECK(v[0].partition == IVec{n + 1});
        CHECK(partition_from_rho(t, v[0].rho) == IVec{n + 1});
    }
}

TEST_CASE("cuspdata: exceptional and classical entries") {
    auto sp6 = cuspidal_pairs(parse_cartan_type("C3"));
    REQUIRE(sp6.size() == 1);
    CHECK(sp6[0].partition == IVec{2, 4});
    CHECK(sp6[0].count() == 1);

    auto e6 = cuspidal_pairs(parse_cartan_type("E6"));
    REQUIRE(e6.size() == 1);
    CHECK(e6[0].count() == 2);

    auto g2 = cuspidal_pairs(parse_cartan_type("G2"));
    REQUIRE(g2.size() == 1);
    CHECK(g2[0].rho == IVec{0, 1});

    auto e8 = cuspidal_pairs(parse_cartan_type("E8"));
    REQUIRE(e8.size() == 1);
    CHECK(e8[0].rho == IVec{0, 0, 0, 0, 1, 0, 0, 0});
}

TEST_CASE("cuspdata: G2 affine node gives the G2 row weights") {
    const auto& d = affine_by_name("G2");
    const int beta = d.affine_node;
    auto comps = pseudo_levi(d, beta);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].type == CartanType{'G', 2});
    auto data = cuspidal_pairs(comps[0].type);
    IVec w = rho_weights(data[0], comps[0].nodes, d.size());
    CHECK(w[beta] == -1);
    CHECK(w == IVec{-1, 1, 0});
}

TEST_CASE("cuspdata: E8 mark-5 node gives two A4 factors with regular weights") {
    const auto& d = affine_by_name("E8");
    int beta = -1;
    for (int p = 0; p < d.size(); ++p)
        if (d.marks[p] == 5) beta = p;
    REQUIRE(beta >= 0);
    auto comps = pseudo_levi(d, beta);
    REQUIRE(comps.size() == 2);
    for (const auto& c : comps) {
        CHECK(c.type == CartanType{'A', 4});
        auto data = cuspidal_pairs(c.type);
        IVec w = rho_weights(data[0], c.nodes, d.size());
        for (int p : c.nodes) CHECK(w[p] == 1);
    }
}

TEST_CASE("cuspdata: stored partitions agree with rho") {
    for (const char* name : {"C3", "B4", "D8", "D5"}) {
        const CartanType t = parse_cartan_type(name);
        for (const auto& d : cuspidal_pairs(t)) {
            INFO(name);
            IVec p = d.partition;
            std::sort(p.begin(), p.end());
            CHECK(partition_from_rho(t, d.rho) == p);
            CHECK(cuspidal_partition_shape(t, p));
        }
    }
}

TEST_CASE("cuspdata: partition_from_rho on small cases") {
    CHECK(partition_from_rho(parse_cartan_type("A3"), IVec{0, 0, 0}) == IVec{1, 1, 1, 1});
    CHECK(partition_from_rho(parse_cartan_type("C2"), IVec{1, 1}) == IVec{4});
    CHECK(partition_from_rho(parse_cartan_type("B2"), IVec{1, 1}) == IVec{5});
    CHECK(partition_from_rho(parse_cartan_type("D4"), IVec{1, 1, 1, 1}) == IVec{1, 7});
    CHECK_THROWS_AS(partition_from_rho(parse_cartan_type("E6"), IVec(6, 0)), std::invalid_argument);
}

TEST_CASE("cuspdata: missing data differs from a known empty factor") {
    CHECK(cuspidal_table().covers(parse_cartan_type("D4")));
    CHECK(cuspidal_pairs(parse_cartan_type("D4")).empty());
    CHECK_FALSE(cuspidal_table().covers(parse_cartan_type("D9")));
    CHECK_THROWS_AS(cuspidal_pairs(parse_cartan_type("D9")), NoCuspidalData);
}

TEST_CASE("cuspdata: quotient filter") {
    // central element of SL3 acting by zeta_3 on omega_1
    const std::vector<Rat> z3{Rat(2, 3), Rat(1, 3)};
    CHECK(cuspidal_pairs(parse_cartan_type("A2"), &z3).empty());
    // Spin16 -> SO16 kernel: the trivial-character orbit survives
    const std::vector<Rat> so{0, 0, 0, 0, 0, 0, Rat(1, 2), Rat(1, 2)};
    CHECK(cuspidal_pairs(parse_cartan_type("D8"), &so).size() == 1);
    // E7 cuspidal character is nontrivial on the center
    const std::vector<Rat> e7{0, Rat(1, 2), 0, 0, Rat(1, 2), 0, Rat(1, 2)};
    CHECK(cuspidal_pairs(parse_cartan_type("E7"), &e7).empty());
    const std::vector<Rat> wrong{0};
    CHECK_THROWS_AS(cuspidal_pairs(parse_cartan_type("E7"), &wrong), std::invalid_argument);
}

TEST_CASE("cuspdata: bad entries are rejected") {
    json good = {{"partition", json::array({2, 4})}, {"rho", {1, 0, 1}}, {"characters", {{1, 0, 0}}},
                 {"central_character", "x"}, {"provenance", "test"}, {"validated", true}};
    CHECK_NOTHROW(CuspidalTable::from_json(minimal_table(good, "C3")));

    json bad_rho = good;
    bad_rho["rho"] = {1, 1, 1};
    CHECK_THROWS_AS(CuspidalTable::from_json(minimal_table(bad_rho, "C3")), DataError);

    json bad_shape = good;
    bad_shape["partition"] = {3, 3};
    CHECK_THROWS_AS(CuspidalTable::from_json(minimal_table(bad_shape, "C3")), DataError);

    json no_chars = good;
    no_chars["characters"] = json::array();
    CHECK_THROWS_AS(CuspidalTable::from_json(minimal_table(no_chars, "C3")), DataError);

    json two = good;
    two["rho"] = {1, 2, 1};
    CHECK_THROWS_AS(CuspidalTable::from_json(minimal_table(two, "C3")), DataError);

    json missing = good;
    missing.erase("provenance");
    CHECK_THROWS_AS(CuspidalTable::from_json(minimal_table(missing, "C3")), DataError);

    json exc = {{"partition", json::array({7})}, {"rho", {0, 1}}, {"characters", {{0, 0}}},
                {"central_character", "x"}, {"provenance", "test"}, {"validated", true}};
    CHECK_THROWS_AS(CuspidalTable::from_json(minimal_table(exc, "G2")), DataError);
}

TEST_CASE("cuspdata: rho_weights argument checks") {
    auto d = cuspidal_pairs(parse_cartan_type("G2"))[0];
    CHECK_THROWS_AS(rho_weights(d, IVec{0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(rho_weights(d, IVec{0, 0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(rho_weights(d, IVec{0, 5}, 3), std::invalid_argument);
    CHECK(rho_weights(d, IVec{1, 2}, 3) == IVec{-1, 0, 1});
}
