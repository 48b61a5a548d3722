#include "doctest.h"

#include "atlas/oracle.hpp"

using namespace atlas;

namespace {

std::set<MultiSegment> admissible_set(const Family& f, const IVec& d) {
    auto v = admissible_segments(f, d);
    return {v.begin(), v.end()};
}

std::vector<Family> oracle_families() {
    std::vector<Family> out;
    for (const auto& [k, name] : family_names())
        for (int m0 = 1; m0 <= 4; ++m0) {
            try {
                out.push_back(make_family(k, m0));
            } catch (const std::invalid_argument&) {
            }
        }
    return out;
}

}  // namespace

TEST_CASE("oracle: type A over Z/2 with d = (1,1)") {
    Family f = make_family("A", 2);
    auto r = jordan_oracle(f, IVec{1, 1}, 1000, 1);
    CHECK(r.exhaustive);
    CHECK(r.observed == admissible_set(f, IVec{1, 1}));
    MultiSegment s01(f.index_set()), s12(f.index_set()), split(f.index_set());
    s01.add_int(0, 1);
    s12.add_int(1, 2);
    split.add_int(0, 0).add_int(1, 1);
    CHECK(r.observed == std::set<MultiSegment>{s01, s12, split});
}

TEST_CASE("oracle: zero dimension vector") {
    for (const auto& f : oracle_families()) {
        auto r = jordan_oracle(f, IVec(f.m0, 0), 10, 1);
        CHECK(r.observed == std::set<MultiSegment>{MultiSegment(f.index_set())});
    }
}

TEST_CASE("oracle: BD dual pair of even-length segments") {
    Family f = make_family("BDI", 4);
    MultiSegment s(f.index_set());
    s.add_int(0, 1).add_int(-1, 0);
    auto r = jordan_oracle(f, IVec{2, 1, 0, 1}, 10000, 7);
    CHECK(r.observed.count(s) == 1);
}

TEST_CASE("oracle: parameter space matches the block count") {
    for (const auto& f : oracle_families())
        for (const auto& d : dimension_vectors(f, 6)) {
            INFO(f.str());
            auto g = g1_space(f, d);
            CHECK(static_cast<long long>(g.basis.size()) == group_dims(f, d).g1);
        }
}

TEST_CASE("oracle: seeded runs are deterministic") {
    Family f = make_family("CI", 2);
    auto a = jordan_oracle(f, IVec{3, 3}, 500, 42);
    auto b = jordan_oracle(f, IVec{3, 3}, 500, 42);
    CHECK(a.observed == b.observed);
    CHECK(a.tried == b.tried);
}

TEST_CASE("oracle: realized labels equal admissible labels for total dimension <= 6, m0 <= 4") {
    int cases = 0;
    for (const auto& f : oracle_families())
        for (const auto& d : dimension_vectors(f, 6)) {
            const auto adm = admissible_set(f, d);
            auto r = jordan_oracle(f, d, 10000, 12345, &adm);
            INFO(f.str() << " d=" << dims_string(d));
            for (const auto& s : r.observed) {
                INFO("observed " << s.str());
                CHECK(adm.count(s) == 1);
            }
            for (const auto& s : adm) {
                INFO("admissible " << s.str());
                CHECK(r.observed.count(s) == 1);
            }
            ++cases;
        }
    CHECK(cases > 100);
}

TEST_CASE("oracle: full searches never leave the admissible set") {
    for (const auto& f : oracle_families())
        for (const auto& d : dimension_vectors(f, 6)) {
            const auto adm = admissible_set(f, d);
            auto r = jordan_oracle(f, d, 2000, 99);
            INFO(f.str() << " d=" << dims_string(d));
            for (const auto& s : r.observed) {
                INFO("observed " << s.str());
                CHECK(adm.count(s) == 1);
            }
        }
}
