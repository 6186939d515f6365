#include "tpg/semantics.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tpg {

Configuration initial_config(const TGA& g, int loc) {
    Configuration c;
    c.loc = loc;
    c.vals.assign(g.nclocks() + 2, Rational(0));
    return c;
}

int move_owner(const TGA& g, const Move& m) {
    if (m.action == kWait0) return 0;
    if (m.action == kWait1) return 1;
    return g.action_owner(m.action);
}

std::string move_to_string(const TGA& g, const Move& m) {
    if (m.none) return "none";
    std::string a = m.action == kWait0 ? "wait0" : m.action == kWait1 ? "wait1" : g.action_name(m.action);
    return "(" + to_string(m.delay) + "," + a + ")";
}

namespace {

// Interval of delta where w(delta) satisfies the zone, with w_i = base_i
// for frozen clocks and base_i + delta for moving ones (the reference at
// index 0 is always frozen at 0).
std::vector<RatIv> delta_intervals(const Dbm& z, std::span<const Rational> base,
                                   const std::vector<char>& moving) {
    RatIv iv;
    iv.lo = Rational(0);
    iv.hi_inf = true;
    for (int i = 0; i < z.dim(); ++i) {
        for (int j = 0; j < z.dim(); ++j) {
            if (i == j) continue;
            Bound b = z.at(i, j);
            if (b.is_inf()) continue;
            Rational c(b.value());
            bool mi = moving[i], mj = moving[j];
            Rational diff = base[i] - base[j];
            if (mi == mj) {
                // constant along the ray
                if (b.is_strict() ? !(diff < c) : !(diff <= c)) return {};
            } else if (mi) {
                // base_i + delta - base_j ~ c  =>  delta ~ c - diff
                Rational lim = c - diff;
                if (iv.hi_inf || lim < iv.hi || (lim == iv.hi && b.is_strict())) {
                    iv.hi = lim;
                    iv.hi_strict = b.is_strict();
                    iv.hi_inf = false;
                }
            } else {
                // base_i - base_j - delta ~ c  =>  delta >~ diff - c
                Rational lim = diff - c;
                if (lim > iv.lo || (lim == iv.lo && b.is_strict())) {
                    iv.lo = lim;
                    iv.lo_strict = b.is_strict();
                }
            }
        }
    }
    if (iv.empty()) return {};
    return {iv};
}

std::vector<RatIv> fed_intervals(const Fed& f, std::span<const Rational> base,
                                 const std::vector<char>& moving) {
    std::vector<RatIv> out;
    for (const auto& z : f.zones())
        for (auto& iv : delta_intervals(z, base, moving)) out.push_back(iv);
    return out;
}

// True iff the closed segment [0, upto] is covered by the interval union.
bool covers_prefix(const std::vector<RatIv>& ivs, const Rational& upto) {
    Rational t(0);
    bool t_covered = false;
    for (size_t guard = 0; guard <= ivs.size() + 1; ++guard) {
        // find the interval reaching farthest among those containing t (or
        // starting right at it when the point itself is already covered)
        bool found = false;
        RatIv best;
        for (const auto& iv : ivs) {
            bool ok;
            if (!t_covered) {
                ok = iv.contains(t);
            } else {
                ok = iv.contains(t) || (iv.lo == t && iv.lo_strict);
            }
            if (!ok) continue;
            if (!found) {
                best = iv;
                found = true;
            } else if (!best.hi_inf &&
                       (iv.hi_inf || iv.hi > best.hi ||
                        (iv.hi == best.hi && best.hi_strict && !iv.hi_strict))) {
                best = iv;
            }
        }
        if (!found) return false;
        if (best.hi_inf) return true;
        if (best.hi > upto || (best.hi == upto && !best.hi_strict)) return true;
        t = best.hi;
        t_covered = !best.hi_strict;
    }
    return false;
}

// Largest weak window [0, W] of waits whose open interior (0, delta) avoids
// the set described by the intervals; hi_inf when the ray is fully clear.
// The point W itself may lie inside the set: it is never an interior point.
RatIv interior_clear_window(const std::vector<RatIv>& ivs) {
    RatIv w;
    w.lo = Rational(0);
    w.hi_strict = false;
    w.hi_inf = true;
    auto tighten = [&](const Rational& hi) {
        if (w.hi_inf || hi < w.hi) {
            w.hi = hi;
            w.hi_inf = false;
        }
    };
    for (const auto& iv : ivs) {
        if (iv.empty()) continue;
        bool has_positive = iv.hi_inf || iv.hi > Rational(0);
        if (!has_positive) continue;  // at most the point 0, never interior
        if (iv.lo > Rational(0)) {
            tighten(iv.lo);  // may wait up to the first hit, not through it
        } else {
            tighten(Rational(0));  // blocked immediately after 0
        }
    }
    return w;
}

}  // namespace

std::vector<RatIv> zone_delta_intervals(const Dbm& zone, std::span<const Rational> vals) {
    std::vector<char> moving(zone.dim(), true);
    moving[0] = false;
    return delta_intervals(zone, vals, moving);
}

std::vector<RatIv> fed_delta_intervals(const Fed& f, std::span<const Rational> vals) {
    std::vector<char> moving(f.dim(), true);
    moving[0] = false;
    return fed_intervals(f, vals, moving);
}

Rational pick_point(const RatIv& iv) {
    assert(!iv.empty());
    if (!iv.lo_strict) return iv.lo;
    if (!iv.hi_inf) return (iv.lo + iv.hi) / 2;
    return iv.lo + Rational(1);
}

std::vector<Configuration> timed_step(const TGA& g, const Configuration& c,
                                      const Rational& delay, int action) {
    std::vector<Configuration> out;
    if (delay < Rational(0)) return out;
    const Location& l = g.locations[c.loc];
    int n = g.nclocks();
    std::vector<Rational> user(c.vals.begin(), c.vals.begin() + n + 1);
    std::vector<char> moving(n + 1, true);
    moving[0] = false;

    // invariant along the whole wait
    auto inv_ivs = fed_intervals(l.inv_fed, user, moving);
    if (!covers_prefix(inv_ivs, delay)) return out;

    // the owner must not cross its own no-wait set strictly inside the wait
    int owner = action == kWait0 ? 0 : action == kWait1 ? 1 : g.action_owner(action);
    if (delay > Rational(0)) {
        const Fed& urg = owner == 0 ? l.urg0_fed : l.urg1_fed;
        if (!urg.is_empty()) {
            auto urg_ivs = fed_intervals(urg, user, moving);
            RatIv win = interior_clear_window(urg_ivs);
            bool ok = win.hi_inf || delay < win.hi || (delay == win.hi && !win.hi_strict);
            if (!ok) return out;
        }
    }

    std::vector<Rational> shifted = c.vals;
    for (int i = 1; i < (int)shifted.size(); ++i) shifted[i] = shifted[i] + delay;

    if (action == kWait0 || action == kWait1) {
        Configuration d;
        d.loc = c.loc;
        d.vals = shifted;
        out.push_back(std::move(d));
        return out;
    }

    std::vector<Rational> shifted_user(shifted.begin(), shifted.begin() + n + 1);
    for (int ei : g.edges_from(c.loc)) {
        const Edge& e = g.edges[ei];
        if (e.action != action) continue;
        if (!e.guard_fed.contains(shifted_user)) continue;
        std::vector<Rational> tv = shifted;
        for (int r : e.resets) tv[r] = Rational(0);
        std::vector<Rational> tv_user(tv.begin(), tv.begin() + n + 1);
        if (!g.locations[e.dst].inv_fed.contains(tv_user)) continue;
        Configuration d;
        d.loc = e.dst;
        d.vals = std::move(tv);
        out.push_back(std::move(d));
    }
    return out;
}

bool playing(const TGA& g, int p, const Configuration& c) {
    const Location& l = g.locations[c.loc];
    int n = g.nclocks();
    std::vector<Rational> user(c.vals.begin(), c.vals.begin() + n + 1);
    std::vector<char> moving(n + 1, true);
    moving[0] = false;

    auto inv_ivs = fed_intervals(l.inv_fed, user, moving);
    const Fed& urg = p == 0 ? l.urg0_fed : l.urg1_fed;
    RatIv urg_win = interior_clear_window(fed_intervals(urg, user, moving));

    for (int ei : g.edges_from(c.loc)) {
        const Edge& e = g.edges[ei];
        if (g.action_owner(e.action) != p) continue;
        // delta candidates where the guard holds
        for (const auto& giv : fed_intervals(e.guard_fed, user, moving)) {
            // pull in the target invariant after resets
            std::vector<char> mv2(n + 1, true);
            mv2[0] = false;
            std::vector<Rational> base2 = user;
            for (int r : e.resets) {
                mv2[r] = false;
                base2[r] = Rational(0);
            }
            for (const auto& tiv : fed_intervals(g.locations[e.dst].inv_fed, base2, mv2)) {
                // candidate window: guard && target-inv && urgency
                RatIv cand = giv;
                auto tighten_lo = [&](const Rational& lo, bool strict) {
                    if (lo > cand.lo || (lo == cand.lo && strict)) {
                        cand.lo = lo;
                        cand.lo_strict = strict;
                    }
                };
                auto tighten_hi = [&](const Rational& hi, bool strict) {
                    if (cand.hi_inf || hi < cand.hi || (hi == cand.hi && strict)) {
                        cand.hi = hi;
                        cand.hi_strict = strict;
                        cand.hi_inf = false;
                    }
                };
                tighten_lo(tiv.lo, tiv.lo_strict);
                if (!tiv.hi_inf) tighten_hi(tiv.hi, tiv.hi_strict);
                if (!urg_win.hi_inf) tighten_hi(urg_win.hi, urg_win.hi_strict);
                if (cand.empty()) continue;
                // need some point of cand where the invariant held throughout
                Rational probe = pick_point(cand);
                if (covers_prefix(inv_ivs, probe)) return true;
                // the invariant prefix is downward closed; if the picked
                // point fails, try the interval's lower end
                if (cand.lo != probe) {
                    if (!cand.lo_strict && covers_prefix(inv_ivs, cand.lo)) return true;
                    if (cand.lo_strict) {
                        // points just above lo: covered iff prefix extends
                        // strictly past lo; test the midpoint toward probe
                        Rational mid = (cand.lo + probe) / 2;
                        if (covers_prefix(inv_ivs, mid)) return true;
                    }
                }
            }
        }
    }
    return false;
}

namespace {

StepRecord make_record(const TGA& g, const Configuration& c, const Move& m0, const Move& m1,
                       int chosen, const Configuration& dst) {
    StepRecord r;
    r.src = c;
    r.m0 = m0;
    r.m1 = m1;
    r.chosen = chosen;
    r.dst = dst;
    r.blame = chosen;
    auto caps = clock_caps(g);
    std::vector<int> caps_z = caps;
    caps_z.push_back(1);
    bool same_region = c.loc == dst.loc &&
                       region_key_mod_z(c.vals, caps_z, c.z_index()) ==
                           region_key_mod_z(dst.vals, caps_z, dst.z_index());
    if (c.loc == dst.loc && !same_region)
        r.lazy_blame = kBlameNone;
    else
        r.lazy_blame = chosen;
    r.tick = is_integer(dst.z()) && !(c.z() == dst.z());
    return r;
}

}  // namespace

std::vector<StepRecord> joint_step(const TGA& g, Semantics sem, const Configuration& c,
                                   const Move& m0, const Move& m1) {
    auto check_shape = [&](const Move& m, int p) {
        if (m.none) {
            if (sem != Semantics::R) throw IllegalMove("none is only a move under the refined semantics");
            if (playing(g, p, c)) throw IllegalMove("none while a regular action is available");
            return;
        }
        if (m.delay < Rational(0)) throw IllegalMove("negative delay");
        int owner = move_owner(g, m);
        if (owner != p) throw IllegalMove("move uses the other player's action");
        if (sem == Semantics::T && m.action >= 0 && !(m.delay == Rational(0)))
            throw IllegalMove("classical semantics plays regular actions with delay 0");
    };
    check_shape(m0, 0);
    check_shape(m1, 1);

    std::vector<StepRecord> out;
    if (sem == Semantics::R) {
        bool p0 = playing(g, 0, c), p1 = playing(g, 1, c);
        if (!p0 && !p1) throw IllegalMove("deadlocked configuration: nobody can play");
        if (!p1) {
            // only player 0 plays; player 1 must pass
            if (!m1.none) throw IllegalMove("player 1 cannot play here");
            if (m0.none) throw IllegalMove("player 0 must move");
            auto succ = timed_step(g, c, m0.delay, m0.action);
            if (succ.empty()) throw IllegalMove("move not executable");
            for (auto& s : succ) out.push_back(make_record(g, c, m0, m1, 0, s));
            return out;
        }
        if (!p0) {
            if (!m0.none) throw IllegalMove("player 0 cannot play here");
            if (m1.none) throw IllegalMove("player 1 must move");
            auto succ = timed_step(g, c, m1.delay, m1.action);
            if (succ.empty()) throw IllegalMove("move not executable");
            for (auto& s : succ) out.push_back(make_record(g, c, m0, m1, 1, s));
            return out;
        }
        if (m0.none || m1.none) throw IllegalMove("both players can play and must move");
    } else {
        if (m0.none || m1.none) throw IllegalMove("none is not available");
    }

    auto s0 = timed_step(g, c, m0.delay, m0.action);
    auto s1 = timed_step(g, c, m1.delay, m1.action);
    if (s0.empty()) throw IllegalMove("player 0 move not executable");
    if (s1.empty()) throw IllegalMove("player 1 move not executable");
    if (m0.delay <= m1.delay)
        for (auto& s : s0) out.push_back(make_record(g, c, m0, m1, 0, s));
    if (m1.delay <= m0.delay)
        for (auto& s : s1) out.push_back(make_record(g, c, m0, m1, 1, s));
    return out;
}

int evaluate_lasso(const TGA& g, Semantics sem, const LassoPlay& play) {
    if (play.cycle.empty()) throw std::invalid_argument("empty cycle");
    auto caps = clock_caps(g);
    caps.push_back(1);
    const Configuration& first = play.cycle.front().src;
    const Configuration& last = play.cycle.back().dst;
    if (first.loc != last.loc ||
        !(region_key_mod_z(first.vals, caps, first.z_index()) ==
          region_key_mod_z(last.vals, caps, last.z_index())))
        throw std::invalid_argument("cycle does not close at region granularity");

    // The unrolling diverges iff z keeps crossing integer bounds: a cycle
    // without a tick is realized with shrinking delays (region-consistent
    // repetition keeps z below its next integer forever).
    bool td = false;
    for (const auto& r : play.cycle)
        if (r.tick) td = true;

    int maxcol = 0;
    for (const auto& r : play.cycle) {
        maxcol = std::max(maxcol, g.locations[r.src.loc].color);
        maxcol = std::max(maxcol, g.locations[r.dst.loc].color);
    }
    bool parity_even = maxcol % 2 == 0;

    if (sem == Semantics::T) return parity_even ? 0 : 1;

    if (td) return parity_even ? 0 : 1;

    // time converges: the blamed player loses
    bool blame0 = false;
    if (sem == Semantics::S) {
        for (const auto& r : play.cycle)
            if (r.blame == 0) blame0 = true;
    } else {
        // lazy blame: unblamed steps repeat the previous assignment, and the
        // steady state over the unrolled cycle wraps around
        int prev = kBlameNone;
        for (auto it = play.cycle.rbegin(); it != play.cycle.rend(); ++it) {
            if (it->lazy_blame != kBlameNone) {
                prev = it->lazy_blame;
                break;
            }
        }
        for (const auto& r : play.cycle) {
            int b = r.lazy_blame == kBlameNone ? prev : r.lazy_blame;
            if (b == 0) blame0 = true;
            if (r.lazy_blame != kBlameNone) prev = r.lazy_blame;
        }
    }
    return blame0 ? 1 : 0;
}

std::string step_to_string(const TGA& g, const StepRecord& r) {
    std::ostringstream oss;
    auto conf = [&](const Configuration& c) {
        oss << g.locations[c.loc].name << "(";
        for (int i = 1; i < (int)c.vals.size(); ++i) {
            if (i > 1) oss << ",";
            oss << (i == c.z_index() ? "z" : g.clock_names[i - 1]) << "=" << to_string(c.vals[i]);
        }
        oss << ")";
    };
    conf(r.src);
    oss << " --" << move_to_string(g, r.m0) << "/" << move_to_string(g, r.m1) << "--> ";
    conf(r.dst);
    oss << " chosen=" << r.chosen << " blame=" << r.blame << " lazy=";
    if (r.lazy_blame == kBlameNone)
        oss << "none";
    else
        oss << r.lazy_blame;
    oss << " tick=" << (r.tick ? "1" : "0");
    return oss.str();
}

}  // namespace tpg
