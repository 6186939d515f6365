#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "tpg/fed.hpp"
#include "tpg/guard.hpp"
#include "tpg/regions.hpp"

using namespace tpg;

namespace {

Dbm zone2(std::initializer_list<std::tuple<int, int, Bound>> cs) {
    Dbm d = Dbm::universal(3);
    for (auto& [i, j, b] : cs) REQUIRE(d.constrain(i, j, b));
    return d;
}

std::vector<Rational> pt2(const Rational& x, const Rational& y) {
    return {Rational(0), x, y};
}

// region-representative view of a federation (exact for region unions)
std::vector<RegionKey> regions_of(const Fed& f, int cmax) {
    std::vector<int> caps(f.dim() - 1, cmax);
    return enumerate_regions(f, caps);
}

}  // namespace

TEST_CASE("bounds order and arithmetic") {
    CHECK(Bound::strict(1) < Bound::weak(1));
    CHECK(Bound::weak(1) < Bound::strict(2));
    CHECK((Bound::weak(1) + Bound::strict(2)) == Bound::strict(3));
    CHECK((Bound::inf() + Bound::weak(-5)).is_inf());
    CHECK(Bound::strict(2).negated() == Bound::weak(-2));
}

TEST_CASE("canonicalize tightens derived bounds") {
    // x - y <= 1 and y <= 1 force x <= 2
    Dbm d = Dbm::universal(3);
    REQUIRE(d.constrain(1, 2, Bound::weak(1)));
    REQUIRE(d.constrain(2, 0, Bound::weak(1)));
    CHECK(d.at(1, 0) == Bound::weak(2));
    // idempotent
    Dbm d2 = d;
    REQUIRE(d2.close());
    CHECK(d == d2);
}

TEST_CASE("contradictory constraints empty the zone") {
    Dbm d = Dbm::universal(2);
    REQUIRE(d.constrain(1, 0, Bound::weak(1)));
    CHECK_FALSE(d.constrain(0, 1, Bound::weak(-2)));  // x <= 1 && x >= 2
}

TEST_CASE("down of a point follows the diagonal") {
    // down({x=2, y=2}) = {x<=2, x-y=0}
    Dbm p = zone2({{1, 0, Bound::weak(2)},
                   {0, 1, Bound::weak(-2)},
                   {2, 0, Bound::weak(2)},
                   {0, 2, Bound::weak(-2)}});
    Fed f(p);
    Fed d = f.down();
    CHECK(d.contains(pt2(Rational(1), Rational(1))));
    CHECK(d.contains(pt2(Rational(0), Rational(0))));
    CHECK_FALSE(d.contains(pt2(Rational(1), Rational(2))));
    CHECK_FALSE(d.contains(pt2(Rational(5, 2), Rational(5, 2))));

    Fed universal = Fed::universal(3);
    CHECK(universal.down().same_set(universal));
}

TEST_CASE("down of the target cell matches the diagonal band") {
    // down({2<=x<3, 2<=y<3}) = {x<3, y<3, -1<x-y<1}
    Dbm t = zone2({{1, 0, Bound::strict(3)},
                   {0, 1, Bound::weak(-2)},
                   {2, 0, Bound::strict(3)},
                   {0, 2, Bound::weak(-2)}});
    Fed d = Fed(t).down();
    Dbm expect = zone2({{1, 0, Bound::strict(3)},
                        {2, 0, Bound::strict(3)},
                        {1, 2, Bound::strict(1)},
                        {2, 1, Bound::strict(1)}});
    CHECK(d.same_set(Fed(expect)));
}

TEST_CASE("pre_reset") {
    // f = {x=0, 0<=y<1}, reset {x}: x becomes unconstrained
    Dbm f = zone2({{1, 0, Bound::weak(0)}, {2, 0, Bound::strict(1)}});
    Fed pre = Fed(f).reset_pre({1});
    CHECK(pre.contains(pt2(Rational(7), Rational(1, 2))));
    CHECK_FALSE(pre.contains(pt2(Rational(7), Rational(1))));

    // f = {x>0}: no valuation resets into it
    Dbm g = Dbm::universal(2);
    REQUIRE(g.constrain(0, 1, Bound::strict(0)));
    CHECK(Fed(g).reset_pre({1}).is_empty());

    // f = {x-y=0}, reset {y}: need x=0
    Dbm h = zone2({{1, 2, Bound::weak(0)}, {2, 1, Bound::weak(0)}});
    Fed hp = Fed(h).reset_pre({2});
    CHECK(hp.contains(pt2(Rational(0), Rational(3))));
    CHECK_FALSE(hp.contains(pt2(Rational(1, 2), Rational(3))));
}

TEST_CASE("meet join subtract") {
    Dbm t = zone2({{1, 0, Bound::strict(3)},
                   {0, 1, Bound::weak(-2)},
                   {2, 0, Bound::strict(3)},
                   {0, 2, Bound::weak(-2)}});
    Dbm b = zone2({{1, 0, Bound::strict(2)}, {0, 1, Bound::weak(-1)}, {2, 0, Bound::strict(1)}});
    CHECK(Fed(t).meet(Fed(b)).is_empty());

    Fed ft(t);
    CHECK(ft.subtract(ft).is_empty());
    CHECK(ft.subtract(Fed::empty(3)).same_set(ft));

    // subtract splits an interval
    Dbm seg = Dbm::universal(2);
    REQUIRE(seg.constrain(1, 0, Bound::weak(2)));
    Dbm mid = Dbm::universal(2);
    REQUIRE(mid.constrain(1, 0, Bound::weak(1)));
    REQUIRE(mid.constrain(0, 1, Bound::weak(-1)));
    Fed diff = Fed(seg).subtract(Fed(mid));
    std::vector<Rational> v{Rational(0), Rational(1, 2)};
    CHECK(diff.contains(v));
    v[1] = Rational(1);
    CHECK_FALSE(diff.contains(v));
    v[1] = Rational(3, 2);
    CHECK(diff.contains(v));
    v[1] = Rational(9, 4);
    CHECK_FALSE(diff.contains(v));
}

TEST_CASE("includes and contains basics") {
    CHECK(Fed::universal(3).includes(Fed(zone2({{1, 0, Bound::weak(1)}}))));
    Dbm open = Dbm::universal(2);
    REQUIRE(open.constrain(1, 0, Bound::strict(1)));
    REQUIRE(open.constrain(0, 1, Bound::strict(0)));
    std::vector<Rational> v{Rational(0), Rational(0)};
    CHECK_FALSE(Fed(open).contains(v));
    v[1] = Rational(1, 2);
    CHECK(Fed(open).contains(v));
}

TEST_CASE("guard compilation") {
    std::map<std::string, int> clocks{{"x", 1}};
    Fed top = guard_to_fed(parse_guard("true", clocks), 2);
    CHECK(top.same_set(Fed::universal(2)));

    Fed g = guard_to_fed(parse_guard("0<x<1", clocks), 2);
    std::vector<Rational> v{Rational(0), Rational(1, 2)};
    CHECK(g.contains(v));
    v[1] = Rational(0);
    CHECK_FALSE(g.contains(v));

    // !(1<=x<2) = {x<1} | {x>=2}
    Fed n = guard_to_fed(parse_guard("!(1<=x<2)", clocks), 2);
    v[1] = Rational(1, 2);
    CHECK(n.contains(v));
    v[1] = Rational(1);
    CHECK_FALSE(n.contains(v));
    v[1] = Rational(2);
    CHECK(n.contains(v));
}

TEST_CASE("is_convex") {
    Dbm a = Dbm::universal(2);
    REQUIRE(a.constrain(1, 0, Bound::strict(1)));
    Dbm b = Dbm::universal(2);
    REQUIRE(b.constrain(0, 1, Bound::strict(-2)));
    Fed f(a);
    CHECK(f.is_convex());
    f.add(b);
    CHECK_FALSE(f.is_convex());
}

TEST_CASE("zone algebra properties on random federations") {
    std::mt19937 rng(20240811);
    for (int round = 0; round < 300; ++round) {
        int nclocks = 1 + round % 3;
        Fed f = testing::random_fed(rng, nclocks, 3);
        Fed g = testing::random_fed(rng, nclocks, 3);

        // down is extensive and idempotent
        Fed df = f.down();
        CHECK(df.includes(f));
        CHECK(df.down().same_set(df));

        // includes agrees with subtraction emptiness
        CHECK(f.includes(g) == g.subtract(f).is_empty());

        // join/meet/subtract against membership of region representatives
        const RegionSystem& rs = RegionSystem::get(nclocks, std::vector<int>(nclocks, 3));
        Fed j = f.join(g), m = f.meet(g), s = f.subtract(g);
        for (const auto& k : rs.all()) {
            auto rep = rs.representative(k);
            bool inf = f.contains(rep), ing = g.contains(rep);
            CHECK(j.contains(rep) == (inf || ing));
            CHECK(m.contains(rep) == (inf && ing));
            CHECK(s.contains(rep) == (inf && !ing));
        }
    }
}

TEST_CASE("operations stay within the input constant range") {
    std::mt19937 rng(7);
    for (int round = 0; round < 100; ++round) {
        Fed f = testing::random_fed(rng, 2, 3);
        Fed g = testing::random_fed(rng, 2, 3);
        int cap = std::max(f.max_constant(), g.max_constant());
        CHECK(f.down().max_constant() <= cap);
        CHECK(f.join(g).max_constant() <= cap);
        CHECK(f.meet(g).max_constant() <= cap);
        CHECK(f.subtract(g).max_constant() <= cap);
        CHECK(f.reset_pre({1}).max_constant() <= cap);
        // subtraction never keeps an empty zone around
        for (const auto& z : f.subtract(g).zones()) {
            Dbm c = z;
            CHECK(c.close());
        }
    }
}

TEST_CASE("debug serialization is stable and ordered") {
    Dbm a = Dbm::universal(2);
    REQUIRE(a.constrain(1, 0, Bound::strict(1)));
    Dbm b = Dbm::universal(2);
    REQUIRE(b.constrain(0, 1, Bound::strict(-2)));
    Fed f1(a);
    f1.add(b);
    Fed f2(b);
    f2.add(a);
    CHECK(f1.to_string({"x"}) == f2.to_string({"x"}));
}
