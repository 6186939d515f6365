#include "doctest.h"

#include "helpers.hpp"
#include "tpg/semantics.hpp"

using namespace tpg;

namespace {

Configuration conf(const TGA& g, const std::string& loc, const Rational& x, const Rational& z) {
    Configuration c = initial_config(g, *g.location_id(loc));
    c.vals[1] = x;
    c.vals[c.z_index()] = z;
    return c;
}

}  // namespace

TEST_CASE("timed_step on the running example") {
    TGA g = testing::fig1a();
    int c_act = *g.action_id("c");
    Configuration c0 = initial_config(g, *g.location_id("q0"));

    auto r = timed_step(g, c0, Rational(1, 2), c_act);
    REQUIRE(r.size() == 1);
    CHECK(r[0].loc == *g.location_id("q1"));
    CHECK(r[0].vals[1] == Rational(1, 2));
    CHECK(r[0].z() == Rational(1, 2));

    // the guard 0<x<1 is strict: firing immediately is impossible
    CHECK(timed_step(g, c0, Rational(0), c_act).empty());

    // zero-delay waits always loop
    auto w = timed_step(g, c0, Rational(0), kWait0);
    REQUIRE(w.size() == 1);
    CHECK(w[0].loc == c0.loc);
    CHECK(w[0].vals == c0.vals);
}

TEST_CASE("timed_step respects invariants along the wait") {
    TGA g = testing::fig1b();
    Configuration c0 = initial_config(g, *g.location_id("q0"));
    CHECK(timed_step(g, c0, Rational(2), kWait1).empty());  // x<1 expires
    CHECK_FALSE(timed_step(g, c0, Rational(1, 2), *g.action_id("e1")).empty());
    CHECK(timed_step(g, c0, Rational(1), *g.action_id("e1")).empty());
}

TEST_CASE("no-wait sets block delays through them") {
    TGA g = parse_arena(
        "clocks x\nactions0 a\nactions1 b\nmaxcolor 0\n"
        "loc q color=0 inv=true urg0=x<1\nloc r color=0 inv=true\n"
        "edge q a guard=x>=2 r\nedge q b guard=x>=0 r\n");
    Configuration c0 = initial_config(g, 0);
    // the controller cannot let time pass while x<1 holds
    CHECK(timed_step(g, c0, Rational(2), *g.action_id("a")).empty());
    CHECK(playing(g, 1, c0));
    CHECK_FALSE(playing(g, 0, c0));
    // from x=1 the urgency is over
    Configuration c1 = conf(g, "q", Rational(1), Rational(1));
    CHECK_FALSE(timed_step(g, c1, Rational(1), *g.action_id("a")).empty());
    CHECK(playing(g, 0, c1));
}

TEST_CASE("playing on the observer arena") {
    TGA g = testing::fig1b();
    Configuration c0 = initial_config(g, *g.location_id("q0"));
    CHECK_FALSE(playing(g, 0, c0));  // the controller has no action in q0
    CHECK(playing(g, 1, c0));
}

TEST_CASE("deadlock-free arenas always leave someone playing") {
    std::mt19937 rng(99);
    for (int i = 0; i < 25; ++i) {
        TGA g = testing::random_arena(rng);
        for (const auto& l : g.locations) {
            Configuration c = initial_config(g, l.id);
            if (!l.inv_fed.contains(std::vector<Rational>{Rational(0), Rational(0)})) continue;
            CHECK((playing(g, 0, c) || playing(g, 1, c)));
        }
    }
}

TEST_CASE("joint_step under the surprise semantics") {
    TGA g = testing::fig1a();
    Configuration c0 = initial_config(g, *g.location_id("q0"));

    // both wait, the shorter wait is executed and leaves the region
    auto recs = joint_step(g, Semantics::S, c0, Move::act(Rational(1, 2), kWait0),
                           Move::act(Rational(1), kWait1));
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].chosen == 0);
    CHECK(recs[0].blame == 0);
    CHECK(recs[0].lazy_blame == kBlameNone);  // long wait left the region
    CHECK(recs[0].dst.vals[1] == Rational(1, 2));

    // a delay tie yields both resolutions
    Configuration mid = conf(g, "q0", Rational(1, 2), Rational(1, 2));
    auto tie = joint_step(g, Semantics::S, mid, Move::act(Rational(0), *g.action_id("c")),
                          Move::act(Rational(0), *g.action_id("el")));
    REQUIRE(tie.size() == 2);
    CHECK(tie[0].chosen != tie[1].chosen);

    // classical semantics rejects delayed regular actions
    CHECK_THROWS_AS(joint_step(g, Semantics::T, mid,
                               Move::act(Rational(1, 4), *g.action_id("c")),
                               Move::act(Rational(0), kWait1)),
                    IllegalMove);
}

TEST_CASE("joint_step under the refined semantics") {
    TGA g = testing::fig1b();
    Configuration c0 = initial_config(g, *g.location_id("q0"));

    // the controller must pass, the environment moves
    auto recs = joint_step(g, Semantics::R, c0, Move::make_none(),
                           Move::act(Rational(3, 10), *g.action_id("e1")));
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].chosen == 1);
    CHECK(recs[0].blame == 1);
    CHECK(recs[0].dst.loc == *g.location_id("q1"));

    // none is rejected when the player can act
    CHECK_THROWS_AS(joint_step(g, Semantics::R, c0, Move::make_none(), Move::make_none()),
                    IllegalMove);
    TGA g1a = testing::fig1a();
    Configuration d0 = initial_config(g1a, 0);
    CHECK_THROWS_AS(
        joint_step(g1a, Semantics::R, d0, Move::make_none(), Move::act(Rational(0), kWait1)),
        IllegalMove);
}

TEST_CASE("tick flag marks integer crossings of z") {
    TGA g = testing::fig1a();
    Configuration c0 = initial_config(g, 0);
    auto recs = joint_step(g, Semantics::S, c0, Move::act(Rational(1), kWait0),
                           Move::act(Rational(2), kWait1));
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].tick);  // z reached 1
    auto recs2 = joint_step(g, Semantics::S, c0, Move::act(Rational(1, 2), kWait0),
                            Move::act(Rational(2), kWait1));
    REQUIRE(recs2.size() == 1);
    CHECK_FALSE(recs2[0].tick);
}

TEST_CASE("lasso with recurring ticks is won by parity") {
    TGA g = testing::fig1a();
    // cycle in q1 (color 2): wait one time unit per round
    Configuration a = conf(g, "q1", Rational(1), Rational(0));
    auto recs = joint_step(g, Semantics::S, a, Move::act(Rational(1), kWait0),
                           Move::act(Rational(2), kWait1));
    REQUIRE(recs.size() == 1);
    REQUIRE(recs[0].tick);
    LassoPlay p;
    p.cycle.push_back(recs[0]);
    // z returns to an integer and x stays above its cap: the cycle closes
    CHECK(evaluate_lasso(g, Semantics::S, p) == 0);
    CHECK(evaluate_lasso(g, Semantics::R, p) == 0);
    CHECK(evaluate_lasso(g, Semantics::T, p) == 0);
}

TEST_CASE("blame decides time-convergent plays") {
    TGA g = testing::fig1a();
    // the environment preempts the delayed retry immediately, forever
    Configuration at = conf(g, "q0", Rational(0), Rational(1, 4));
    auto recs = joint_step(g, Semantics::S, at, Move::act(Rational(1, 2), *g.action_id("c")),
                           Move::act(Rational(0), *g.action_id("el")));
    REQUIRE(recs.size() == 1);
    REQUIRE(recs[0].chosen == 1);
    REQUIRE(recs[0].dst.vals[1] == Rational(0));
    LassoPlay p;
    p.cycle.push_back(recs[0]);
    // time converges with the environment to blame: the controller wins
    CHECK(evaluate_lasso(g, Semantics::S, p) == 0);
    // classically the parity of q0 (odd) would lose it
    CHECK(evaluate_lasso(g, Semantics::T, p) == 1);
}

TEST_CASE("the alternation separates the surprise and refined semantics") {
    TGA g = testing::fig1a();
    // long controller wait, then an immediate retry preempted by the reset
    Configuration s0 = conf(g, "q0", Rational(0), Rational(1, 8));
    auto w = joint_step(g, Semantics::S, s0, Move::act(Rational(1, 2), kWait0),
                        Move::act(Rational(1), kWait1));
    REQUIRE(w.size() == 1);
    REQUIRE(w[0].chosen == 0);
    Configuration s1 = w[0].dst;
    auto pre = joint_step(g, Semantics::S, s1, Move::act(Rational(0), *g.action_id("c")),
                          Move::act(Rational(0), *g.action_id("el")));
    REQUIRE(pre.size() == 2);
    const StepRecord* env_wins = pre[0].chosen == 1 ? &pre[0] : &pre[1];
    LassoPlay p;
    p.cycle.push_back(w[0]);
    p.cycle.push_back(*env_wins);

    // the controller's long wait is blamed classically but not lazily
    CHECK(w[0].blame == 0);
    CHECK(w[0].lazy_blame == kBlameNone);
    CHECK(env_wins->lazy_blame == kBlameNone);  // reset left the region too

    CHECK(evaluate_lasso(g, Semantics::S, p) == 1);  // controller blamed
    CHECK(evaluate_lasso(g, Semantics::R, p) == 0);  // nobody lazily blamed
}

TEST_CASE("lasso evaluation is stable under rotation and unrolling") {
    TGA g = testing::fig1a();
    Configuration s0 = conf(g, "q0", Rational(0), Rational(1, 8));
    auto w = joint_step(g, Semantics::S, s0, Move::act(Rational(1, 2), kWait0),
                        Move::act(Rational(1), kWait1));
    auto pre = joint_step(g, Semantics::S, w[0].dst, Move::act(Rational(0), *g.action_id("c")),
                          Move::act(Rational(0), *g.action_id("el")));
    const StepRecord* env_wins = pre[0].chosen == 1 ? &pre[0] : &pre[1];

    LassoPlay p;
    p.cycle = {w[0], *env_wins};
    LassoPlay rot;
    rot.cycle = {*env_wins, w[0]};
    LassoPlay unrolled;
    unrolled.cycle = {w[0], *env_wins, w[0], *env_wins};
    for (auto sem : {Semantics::S, Semantics::R, Semantics::T}) {
        int base = evaluate_lasso(g, sem, p);
        CHECK(evaluate_lasso(g, sem, rot) == base);
        CHECK(evaluate_lasso(g, sem, unrolled) == base);
    }
}

TEST_CASE("malformed lassos are rejected") {
    TGA g = testing::fig1a();
    Configuration c0 = initial_config(g, 0);
    auto recs = joint_step(g, Semantics::S, c0, Move::act(Rational(1, 2), kWait0),
                           Move::act(Rational(1), kWait1));
    LassoPlay p;
    p.cycle.push_back(recs[0]);  // x=0 vs x=1/2: different regions
    CHECK_THROWS_AS(evaluate_lasso(g, Semantics::S, p), std::invalid_argument);
}
