#include "tpg/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace tpg {

namespace {

// Uniform view over the two oracle inputs: the augmented arena (with tick
// edges and state-dependent colors) and a plain arena (classical mode).
struct ViewLoc {
    Fed inv{1};
    Fed urg0{1};
    Fed urg1{1};
    int color_flow = 0;
    int color_tick = -1;  // -1: no tick notion (classical mode)
    int tick_dst = -1;
    std::string name;
};

struct ViewEdge {
    int src = 0, dst = 0, owner = 0;
    std::vector<int> resets;
    Fed guard{1};
    std::string name;
};

struct ArenaView {
    int nclocks = 0;
    std::vector<int> caps;
    int z = -1;  // DBM index of z, -1 in classical mode
    bool refined = true;
    std::vector<ViewLoc> locs;
    std::vector<ViewEdge> edges;
    std::vector<std::vector<int>> out;
};

ArenaView view_of(const AugTGA& aug) {
    ArenaView v;
    v.nclocks = aug.nclocks() + 1;
    v.caps = aug.caps;
    v.z = aug.z_index();
    v.refined = true;
    for (size_t i = 0; i < aug.locs.size(); ++i) {
        ViewLoc l;
        l.inv = aug.inv[i];
        l.urg0 = aug.urg0[i];
        l.urg1 = aug.urg1[i];
        l.color_flow = beta_color(aug.locs[i], false);
        l.color_tick = beta_color(aug.locs[i], true);
        l.name = aug.loc_name((int)i);
        v.locs.push_back(std::move(l));
    }
    for (const auto& e : aug.edges) {
        if (e.kind == AugEdge::Kind::WaitLoop) continue;
        if (e.kind == AugEdge::Kind::Tick) {
            v.locs[e.src].tick_dst = e.dst;
            continue;
        }
        ViewEdge ve;
        ve.src = e.src;
        ve.dst = e.dst;
        ve.owner = e.owner;
        ve.resets = e.resets;
        ve.guard = e.guard;
        ve.name = aug.base.action_name(e.action);
        v.edges.push_back(std::move(ve));
    }
    v.out.assign(v.locs.size(), {});
    for (size_t i = 0; i < v.edges.size(); ++i) v.out[v.edges[i].src].push_back((int)i);
    return v;
}

ArenaView view_of_classic(const TGA& g) {
    ArenaView v;
    v.nclocks = g.nclocks();
    v.caps = clock_caps(g);
    v.z = -1;
    v.refined = false;
    for (const auto& l : g.locations) {
        ViewLoc vl;
        vl.inv = l.inv_fed;
        vl.urg0 = l.urg0_fed;
        vl.urg1 = l.urg1_fed;
        vl.color_flow = l.color;
        vl.name = l.name;
        v.locs.push_back(std::move(vl));
    }
    for (const auto& e : g.edges) {
        ViewEdge ve;
        ve.src = e.src;
        ve.dst = e.dst;
        ve.owner = g.action_owner(e.action);
        ve.resets = e.resets;
        ve.guard = e.guard_fed;
        ve.name = g.action_name(e.action);
        v.edges.push_back(std::move(ve));
    }
    v.out.assign(v.locs.size(), {});
    for (size_t i = 0; i < v.edges.size(); ++i) v.out[v.edges[i].src].push_back((int)i);
    return v;
}

struct Builder {
    const ArenaView& v;
    const RegionSystem& rs;
    size_t cap;
    RegionGame rg;
    std::deque<std::pair<int, RegionKey>> work;

    Builder(const ArenaView& v, size_t cap)
        : v(v), rs(RegionSystem::get(v.nclocks, v.caps)), cap(cap) {
        rg.nclocks = v.nclocks;
        rg.caps = v.caps;
    }

    int new_vertex(int owner, int color, const std::string& label) {
        if (rg.pg.verts.size() >= cap)
            throw OracleCapExceeded("region game exceeds " + std::to_string(cap) + " vertices");
        rg.pg.verts.push_back({owner, color, {}, label});
        return (int)rg.pg.verts.size() - 1;
    }

    bool at_tick(const RegionKey& k) const {
        return v.z >= 0 && k.ip[v.z - 1] == 1 && k.rank[v.z - 1] == 0;
    }

    int choose_vertex(int loc, const RegionKey& k) {
        auto key = std::make_pair(loc, k);
        auto it = rg.choose.find(key);
        if (it != rg.choose.end()) return it->second;
        const ViewLoc& l = v.locs[loc];
        int color = at_tick(k) ? l.color_tick : l.color_flow;
        int idx = new_vertex(0, color, l.name + " | " + k.to_string({}));
        rg.choose[key] = idx;
        work.emplace_back(loc, k);
        return idx;
    }

    // time-successor chain within the invariant, starting at k
    std::vector<RegionKey> chain_of(int loc, const RegionKey& k) {
        std::vector<RegionKey> chain;
        const ViewLoc& l = v.locs[loc];
        RegionKey cur = k;
        for (size_t guard = 0; guard <= rs.all().size(); ++guard) {
            if (!l.inv.contains(rs.representative(cur))) break;
            chain.push_back(cur);
            RegionKey nxt = rs.successor(cur);
            if (nxt == cur) break;  // everything above caps: time diverges here
            cur = nxt;
        }
        return chain;
    }

    // first chain position whose region satisfies the no-wait set
    size_t urg_limit(const Fed& urg, const std::vector<RegionKey>& chain) {
        if (urg.is_empty()) return chain.size() + 1;
        for (size_t i = 0; i < chain.size(); ++i)
            if (urg.contains(rs.representative(chain[i]))) return i;
        return chain.size() + 1;
    }

    // edges of `owner` enabled at region w, with their target vertices
    std::vector<std::pair<int, int>> enabled_moves(int loc, const RegionKey& w, int owner) {
        std::vector<std::pair<int, int>> out;
        auto rep = rs.representative(w);
        for (int ei : v.out[loc]) {
            const ViewEdge& e = v.edges[ei];
            if (e.owner != owner) continue;
            if (!e.guard.contains(rep)) continue;
            auto tv = rep;
            for (int r : e.resets) tv[r] = Rational(0);
            if (!v.locs[e.dst].inv.contains(tv)) continue;
            out.emplace_back(ei, choose_vertex(e.dst, rs.key_of(tv)));
        }
        return out;
    }

    void expand(int loc, const RegionKey& k) {
        int self = rg.choose.at({loc, k});
        const ViewLoc& l = v.locs[loc];

        if (v.refined && at_tick(k)) {
            // forced tick: z resets, nothing else moves
            auto rep = rs.representative(k);
            rep[v.z] = Rational(0);
            assert(l.tick_dst >= 0);
            int target = choose_vertex(l.tick_dst, rs.key_of(rep));
            rg.pg.verts[self].succ.push_back(target);
            return;
        }

        auto chain = chain_of(loc, k);
        assert(!chain.empty());
        size_t lim0 = urg_limit(l.urg0, chain);
        size_t lim1 = urg_limit(l.urg1, chain);

        // playing_0: a controller action fires at some reachable position
        bool playing0 = false;
        for (size_t i = 0; i < chain.size() && (i == 0 || i <= lim0); ++i)
            if (!enabled_moves(loc, chain[i], 0).empty()) {
                playing0 = true;
                break;
            }

        struct Choice {
            bool none = false;
            bool stall = false;
            int action_pos = -1;  // 0 for immediate controller actions
            size_t wait_to = 0;
        };
        std::vector<Choice> choices;
        if (v.refined) {
            if (!playing0) choices.push_back({true, false, -1, 0});
        } else {
            // classical mode: an immediate wait is a real (stalling) move
            choices.push_back({false, true, -1, 0});
        }
        if (!enabled_moves(loc, chain[0], 0).empty())
            choices.push_back({false, false, 0, 0});
        for (size_t i = 1; i < chain.size() && i < lim0; ++i)
            choices.push_back({false, false, -1, i});

        // environment answers, one respond vertex per controller choice;
        // successor sets are built first (vertex creation may reallocate)
        for (const auto& ch : choices) {
            std::vector<int> succ;
            if (ch.none) {
                // the environment must realize some move
                for (size_t i = 0; i < chain.size() && (i == 0 || i <= lim1); ++i)
                    for (auto& [ei, tv] : enabled_moves(loc, chain[i], 1)) succ.push_back(tv);
                for (size_t i = 1; i < chain.size() && i < lim1; ++i)
                    succ.push_back(choose_vertex(loc, chain[i]));
            } else if (ch.stall) {
                succ.push_back(self);  // the stall freezes the round
                for (auto& [ei, tv] : enabled_moves(loc, chain[0], 1)) succ.push_back(tv);
            } else if (ch.action_pos == 0) {
                for (auto& [ei, tv] : enabled_moves(loc, chain[0], 0)) succ.push_back(tv);
                for (auto& [ei, tv] : enabled_moves(loc, chain[0], 1)) succ.push_back(tv);
                if (!v.refined) succ.push_back(self);  // classical stall preempt
            } else {
                size_t kpos = ch.wait_to;
                succ.push_back(choose_vertex(loc, chain[kpos]));  // let it happen
                for (size_t i = 0; i <= kpos && (i == 0 || i <= lim1); ++i)
                    for (auto& [ei, tv] : enabled_moves(loc, chain[i], 1)) succ.push_back(tv);
                for (size_t i = 1; i < kpos && i < lim1; ++i)
                    succ.push_back(choose_vertex(loc, chain[i]));
                if (!v.refined) succ.push_back(self);
            }
            std::sort(succ.begin(), succ.end());
            succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
            if (succ.empty()) continue;
            int rv = new_vertex(1, 0, "respond");
            rg.pg.verts[rv].succ = std::move(succ);
            rg.pg.verts[self].succ.push_back(rv);
        }
        if (rg.pg.verts[self].succ.empty())
            throw std::runtime_error("stuck region vertex (arena not deadlock-free?) at " +
                                     rg.pg.verts[self].label);
    }

    void run_from_all() {
        for (size_t loc = 0; loc < v.locs.size(); ++loc)
            for (const auto& k : rs.all())
                if (v.locs[loc].inv.contains(rs.representative(k))) choose_vertex((int)loc, k);
        while (!work.empty()) {
            auto [loc, k] = work.front();
            work.pop_front();
            expand(loc, k);
        }
    }
};

}  // namespace

RegionGame build_region_game(const AugTGA& aug, size_t vertex_cap) {
    ArenaView v = view_of(aug);
    Builder b(v, vertex_cap);
    b.run_from_all();
    return std::move(b.rg);
}

RegionGame build_region_game_classic(const TGA& g, size_t vertex_cap) {
    ArenaView v = view_of_classic(g);
    Builder b(v, vertex_cap);
    b.run_from_all();
    return std::move(b.rg);
}

namespace {

// attractor for player p to `target` within `alive`
std::vector<char> graph_attractor(const FiniteParityGame& pg,
                                  const std::vector<std::vector<int>>& preds,
                                  const std::vector<char>& alive, std::vector<char> target,
                                  int p) {
    std::vector<int> out_count(pg.verts.size(), 0);
    for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx) {
        if (!alive[vtx]) continue;
        for (int s : pg.verts[vtx].succ)
            if (alive[s]) ++out_count[vtx];
    }
    std::deque<int> queue;
    for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx)
        if (alive[vtx] && target[vtx]) queue.push_back((int)vtx);
    while (!queue.empty()) {
        int vtx = queue.front();
        queue.pop_front();
        for (int u : preds[vtx]) {
            if (!alive[u] || target[u]) continue;
            if (pg.verts[u].owner == p) {
                target[u] = 1;
                queue.push_back(u);
            } else {
                if (--out_count[u] == 0) {
                    target[u] = 1;
                    queue.push_back(u);
                }
            }
        }
    }
    return target;
}

void zielonka_rec(const FiniteParityGame& pg, const std::vector<std::vector<int>>& preds,
                  const std::vector<char>& alive, std::vector<int>& winner) {
    int maxc = -1;
    for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx)
        if (alive[vtx]) maxc = std::max(maxc, pg.verts[vtx].color);
    if (maxc < 0) return;
    int j = maxc % 2;

    std::vector<char> top(pg.verts.size(), 0);
    for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx)
        if (alive[vtx] && pg.verts[vtx].color == maxc) top[vtx] = 1;
    std::vector<char> a = graph_attractor(pg, preds, alive, top, j);

    std::vector<char> rest = alive;
    bool any_rest = false;
    for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx) {
        if (alive[vtx] && a[vtx]) rest[vtx] = 0;
        if (rest[vtx]) any_rest = true;
    }
    if (!any_rest) {
        for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx)
            if (alive[vtx]) winner[vtx] = j;
        return;
    }
    zielonka_rec(pg, preds, rest, winner);
    bool opp_nonempty = false;
    for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx)
        if (rest[vtx] && winner[vtx] == 1 - j) opp_nonempty = true;
    if (!opp_nonempty) {
        for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx)
            if (alive[vtx]) winner[vtx] = j;
        return;
    }
    std::vector<char> oppw(pg.verts.size(), 0);
    for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx)
        if (rest[vtx] && winner[vtx] == 1 - j) oppw[vtx] = 1;
    std::vector<char> b = graph_attractor(pg, preds, alive, oppw, 1 - j);
    std::vector<char> rest2 = alive;
    for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx) {
        if (b[vtx] && alive[vtx]) {
            winner[vtx] = 1 - j;
            rest2[vtx] = 0;
        }
    }
    zielonka_rec(pg, preds, rest2, winner);
}

}  // namespace

std::vector<int> zielonka_finite(const FiniteParityGame& pg) {
    std::vector<std::vector<int>> preds(pg.verts.size());
    for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx)
        for (int s : pg.verts[vtx].succ) preds[s].push_back((int)vtx);
    std::vector<char> alive(pg.verts.size(), 1);
    std::vector<int> winner(pg.verts.size(), 0);
    zielonka_rec(pg, preds, alive, winner);
    return winner;
}

CompareReport compare_winning_sets(const AugTGA& aug, const SymStateSet& w0,
                                   const RegionGame& rg, const std::vector<int>& winners) {
    CompareReport rep;
    const RegionSystem& rs = RegionSystem::get(rg.nclocks, rg.caps);
    for (const auto& [key, vtx] : rg.choose) {
        auto [loc, region] = key;
        auto point = rs.representative(region);
        bool sym = w0[loc].contains(point);
        bool orc = winners[vtx] == 0;
        ++rep.regions_checked;
        if (sym != orc) {
            rep.mismatches.push_back(aug.loc_name(loc) + " | " + region.to_string(aug.clock_names) +
                                     ": solver=" + (sym ? "W0" : "W1") +
                                     " oracle=" + (orc ? "W0" : "W1"));
        }
    }
    return rep;
}

std::string export_parity_game(const FiniteParityGame& pg) {
    std::ostringstream oss;
    oss << "parity " << pg.verts.size() << ";\n";
    for (size_t vtx = 0; vtx < pg.verts.size(); ++vtx) {
        const auto& v = pg.verts[vtx];
        oss << vtx << " " << v.color << " " << v.owner << " ";
        for (size_t i = 0; i < v.succ.size(); ++i) {
            if (i) oss << ",";
            oss << v.succ[i];
        }
        if (!v.label.empty()) oss << " \"" << v.label << "\"";
        oss << ";\n";
    }
    return oss.str();
}

int classic_winner_from(const TGA& g, const RegionGame& rg, const std::vector<int>& winners,
                        int loc) {
    const RegionSystem& rs = RegionSystem::get(rg.nclocks, rg.caps);
    std::vector<Rational> zero(g.nclocks() + 1, Rational(0));
    RegionKey k = rs.key_of(zero);
    auto it = rg.choose.find({loc, k});
    if (it == rg.choose.end()) throw std::runtime_error("initial region not in the game");
    return winners[it->second];
}

}  // namespace tpg
