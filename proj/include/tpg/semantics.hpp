#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpg/model.hpp"
#include "tpg/rational.hpp"
#include "tpg/regions.hpp"

namespace tpg {

enum class Semantics { T, S, R };

// Valuations carry the zero reference at index 0, user clocks at 1..n and
// the special clock z at n+1.
struct Configuration {
    int loc = 0;
    std::vector<Rational> vals;

    int z_index() const { return (int)vals.size() - 1; }
    const Rational& z() const { return vals.back(); }
};

Configuration initial_config(const TGA& g, int loc);

// Wait moves of the two players; regular actions use their arena id >= 0.
constexpr int kWait0 = -1;
constexpr int kWait1 = -2;

struct Move {
    bool none = false;
    Rational delay{0};
    int action = kWait0;

    static Move make_none() {
        Move m;
        m.none = true;
        return m;
    }
    static Move act(Rational delay, int action) {
        Move m;
        m.delay = std::move(delay);
        m.action = action;
        return m;
    }
};

int move_owner(const TGA& g, const Move& m);
std::string move_to_string(const TGA& g, const Move& m);

struct IllegalMove : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kBlameNone = -1;

struct StepRecord {
    Configuration src;
    Move m0, m1;
    int chosen = 0;  // player whose move was executed
    Configuration dst;
    int blame = 0;
    int lazy_blame = 0;  // kBlameNone when nobody is blamed
    bool tick = false;
};

struct LassoPlay {
    std::vector<StepRecord> prefix;
    std::vector<StepRecord> cycle;
};

// All configurations reachable by waiting `delay` and firing one edge
// labeled `action` (or the implicit wait loop).  Empty when infeasible.
std::vector<Configuration> timed_step(const TGA& g, const Configuration& c,
                                      const Rational& delay, int action);

// True iff player p can propose some regular action from c.
bool playing(const TGA& g, int p, const Configuration& c);

// One game round under the chosen semantics; throws IllegalMove when the
// move pair is not permitted there.  Ties yield one record per resolution.
std::vector<StepRecord> joint_step(const TGA& g, Semantics sem, const Configuration& c,
                                   const Move& m0, const Move& m1);

// Winner of the infinite unrolling of a region-closed lasso.
int evaluate_lasso(const TGA& g, Semantics sem, const LassoPlay& play);

std::string step_to_string(const TGA& g, const StepRecord& r);

// --- small exact-arithmetic utilities shared with the CLI and tests ---

struct RatIv {
    Rational lo{0};
    bool lo_strict = false;
    Rational hi{0};
    bool hi_strict = false;
    bool hi_inf = false;

    bool empty() const {
        if (hi_inf) return false;
        if (lo < hi) return false;
        if (lo > hi) return true;
        return lo_strict || hi_strict;
    }
    bool contains(const Rational& x) const {
        if (lo_strict ? !(x > lo) : !(x >= lo)) return false;
        if (hi_inf) return true;
        return hi_strict ? x < hi : x <= hi;
    }
};

// {delta >= 0 | v + delta in zone}; empty or a single interval.
std::vector<RatIv> zone_delta_intervals(const Dbm& zone, std::span<const Rational> vals);
std::vector<RatIv> fed_delta_intervals(const Fed& f, std::span<const Rational> vals);

// Some point of a nonempty interval (midpoint for open bounds).
Rational pick_point(const RatIv& iv);

}  // namespace tpg
