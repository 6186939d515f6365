#include "tpg/solver.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tpg {

GameContext make_context(const AugTGA& aug) {
    GameContext ctx;
    ctx.dim = aug.dim();
    ctx.caps = aug.caps;
    ctx.clock_names = aug.clock_names;
    ctx.inv = aug.inv;
    ctx.urg0 = aug.urg0;
    ctx.urg1 = aug.urg1;
    ctx.aug = &aug;
    for (size_t i = 0; i < aug.edges.size(); ++i) {
        const AugEdge& e = aug.edges[i];
        if (e.kind == AugEdge::Kind::WaitLoop) continue;  // inert for solving
        CtxEdge c;
        c.src = e.src;
        c.dst = e.dst;
        c.owner = e.kind == AugEdge::Kind::Tick ? 2 : e.owner;
        c.action = e.action;
        c.guard = e.guard;
        c.resets = e.resets;
        c.aug_edge = (int)i;
        ctx.edges.push_back(std::move(c));
    }
    ctx.out.assign(ctx.inv.size(), {});
    for (size_t i = 0; i < ctx.edges.size(); ++i)
        ctx.out[ctx.edges[i].src].push_back((int)i);
    return ctx;
}

SymStateSet sss_empty(const GameContext& ctx) {
    return SymStateSet(ctx.nlocs(), Fed(ctx.dim));
}

bool sss_is_empty(const SymStateSet& s) {
    for (const auto& f : s)
        if (!f.is_empty()) return false;
    return true;
}

SymStateSet sss_join(const SymStateSet& a, const SymStateSet& b) {
    SymStateSet r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i].join(b[i]);
    return r;
}

SymStateSet sss_subtract(const SymStateSet& a, const SymStateSet& b) {
    SymStateSet r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i].subtract(b[i]);
    return r;
}

bool sss_same(const SymStateSet& a, const SymStateSet& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].same_set(b[i])) return false;
    return true;
}

size_t sss_region_count(const GameContext& ctx, const SymStateSet& s) {
    size_t n = 0;
    for (const auto& f : s)
        if (!f.is_empty()) n += enumerate_regions(f, ctx.caps).size();
    return n;
}

namespace {

// {v | v satisfies guard, v[r:=0] in W(dst) and in inv(dst)} within inv(src)
Fed pre_edge(const GameContext& ctx, const CtxEdge& e, const SymStateSet& w) {
    Fed t = w[e.dst].meet(ctx.inv[e.dst]);
    if (t.is_empty()) return Fed(ctx.dim);
    Fed r = t.reset_pre(e.resets).meet(e.guard).meet(ctx.inv[e.src]);
    return r;
}

Fed pre_edge_full(const GameContext& ctx, const CtxEdge& e) {
    return pre_edge(ctx, e, ctx.inv);
}

// predt over a single location: goods and bads are plain federations here.
Fed predt_loc(int dim, const Fed& goods, const std::vector<Dbm>& bad_zones) {
    if (goods.is_empty()) return Fed(dim);
    if (bad_zones.empty()) return goods.down();
    Fed acc(dim);
    bool first = true;
    for (const auto& b : bad_zones) {
        Dbm bup = b;
        bup.up();
        Dbm bdown = b;
        bdown.down();
        Fed term(dim);
        for (const auto& g : goods.zones()) {
            // reach g strictly before b ever shows up on the ray
            for (const auto& piece : zone_subtract(g, bup)) {
                Dbm d = piece;
                d.down();
                term.add(d);
            }
            // or b never shows up at all
            Dbm gd = g;
            gd.down();
            for (const auto& piece : zone_subtract(gd, bdown)) term.add(piece);
        }
        if (first) {
            acc = std::move(term);
            first = false;
        } else {
            acc = acc.meet(term);
        }
        if (acc.is_empty()) break;
    }
    return acc;
}

std::vector<Dbm> bad_zone_list(const GameContext& ctx, int p, int q, const Fed& goods,
                               const SymStateSet* bads) {
    std::vector<Dbm> out;
    if (bads)
        for (const auto& z : (*bads)[q].zones()) out.push_back(z);
    const Fed& urg = p == 0 ? ctx.urg0[q] : ctx.urg1[q];
    if (!urg.is_empty())
        for (const auto& z : urg.subtract(goods).zones()) out.push_back(z);
    for (const auto& z : ctx.inv[q].complement().zones()) out.push_back(z);
    return out;
}

}  // namespace

SymStateSet predt(const GameContext& ctx, int p, const SymStateSet& goods,
                  const SymStateSet& bads) {
    SymStateSet r = sss_empty(ctx);
    for (int q = 0; q < ctx.nlocs(); ++q) {
        if (goods[q].is_empty()) continue;
        r[q] = predt_loc(ctx.dim, goods[q], bad_zone_list(ctx, p, q, goods[q], &bads));
    }
    return r;
}

namespace {

// Controller-force details used for strategy extraction.
struct ForcePart {
    int edge;
    Fed zone;
};

struct Dcpre0Detail {
    std::vector<std::vector<ForcePart>> force;  // per location
    SymStateSet second;                         // the no-play disjunct
};

// The playing_0 set of the context: states from which some controller action
// can eventually be fired within the current invariant.
const SymStateSet& p0_set(const GameContext& ctx) {
    if (!ctx.p0_cache) {
        SymStateSet enabled = sss_empty(ctx);
        for (int q = 0; q < ctx.nlocs(); ++q)
            for (int ei : ctx.out[q]) {
                const CtxEdge& e = ctx.edges[ei];
                if (e.owner != 0) continue;
                enabled[q] = enabled[q].join(pre_edge_full(ctx, e));
            }
        ctx.p0_cache = predt(ctx, 0, enabled, sss_empty(ctx));
    }
    return *ctx.p0_cache;
}

SymStateSet dcpre0_impl(const GameContext& ctx, const SymStateSet& target, Dcpre0Detail* detail) {
    SymStateSet esc_target = sss_subtract(ctx.space(), target);
    const SymStateSet& p0 = p0_set(ctx);
    SymStateSet out = sss_empty(ctx);
    if (detail) {
        detail->force.assign(ctx.nlocs(), {});
        detail->second = sss_empty(ctx);
    }
    for (int q = 0; q < ctx.nlocs(); ++q) {
        if (ctx.inv[q].is_empty()) continue;
        Fed esc(ctx.dim);
        for (int ei : ctx.out[q]) {
            const CtxEdge& e = ctx.edges[ei];
            if (e.owner == 0) continue;
            esc = esc.join(pre_edge(ctx, e, esc_target));
        }
        // group controller-side edges (including the forced tick) by action
        std::map<std::pair<int, int>, std::vector<int>> groups;  // (owner2?,action)
        for (int ei : ctx.out[q]) {
            const CtxEdge& e = ctx.edges[ei];
            if (e.owner == 1) continue;
            groups[{e.owner, e.action}].push_back(ei);
        }
        Fed force(ctx.dim);
        std::vector<ForcePart> parts;
        for (auto& [key, eids] : groups) {
            Fed some(ctx.dim), any_out(ctx.dim);
            for (int ei : eids) {
                some = some.join(pre_edge(ctx, ctx.edges[ei], target));
                any_out = any_out.join(pre_edge(ctx, ctx.edges[ei], esc_target));
            }
            Fed fa = some.subtract(any_out);
            if (fa.is_empty()) continue;
            if (detail) {
                Fed rem = fa;
                for (int ei : eids) {
                    Fed part = rem.meet(pre_edge(ctx, ctx.edges[ei], target));
                    if (!part.is_empty()) {
                        parts.push_back({ei, part});
                        rem = rem.subtract(part);
                    }
                }
            }
            force = force.join(fa);
        }
        Fed env_some(ctx.dim);
        for (int ei : ctx.out[q]) {
            const CtxEdge& e = ctx.edges[ei];
            if (e.owner == 0) continue;
            env_some = env_some.join(pre_edge(ctx, e, target));
        }
        Fed second = ctx.inv[q].subtract(p0[q]).meet(env_some);
        Fed res = force.join(second).subtract(esc);
        out[q] = res;
        if (detail) {
            Fed res_second = second.subtract(esc).subtract(force);
            detail->second[q] = res_second;
            for (auto& fp : parts) fp.zone = fp.zone.meet(res);
            detail->force[q] = std::move(parts);
        }
    }
    return out;
}

}  // namespace

SymStateSet dcpre0(const GameContext& ctx, const SymStateSet& target) {
    return dcpre0_impl(ctx, target, nullptr);
}

SymStateSet dcpre1(const GameContext& ctx, const SymStateSet& target) {
    SymStateSet out = sss_empty(ctx);
    for (int q = 0; q < ctx.nlocs(); ++q) {
        if (ctx.inv[q].is_empty()) continue;
        Fed env_some(ctx.dim);
        for (int ei : ctx.out[q]) {
            const CtxEdge& e = ctx.edges[ei];
            if (e.owner == 0) continue;
            env_some = env_some.join(pre_edge(ctx, e, target));
        }
        // trap: every enabled controller action can be resolved into the
        // target; requires a witness successor
        std::map<int, std::vector<int>> groups;
        for (int ei : ctx.out[q]) {
            const CtxEdge& e = ctx.edges[ei];
            if (e.owner == 1) continue;
            groups[e.owner == 2 ? -1000 : e.action].push_back(ei);
        }
        Fed viol(ctx.dim), ctrl_some(ctx.dim);
        for (auto& [a, eids] : groups) {
            Fed enabled(ctx.dim), some(ctx.dim);
            for (int ei : eids) {
                enabled = enabled.join(pre_edge_full(ctx, ctx.edges[ei]));
                some = some.join(pre_edge(ctx, ctx.edges[ei], target));
            }
            viol = viol.join(enabled.subtract(some));
            ctrl_some = ctrl_some.join(some);
        }
        Fed trap_all = ctx.inv[q].subtract(viol);
        out[q] = env_some.join(trap_all.meet(ctrl_some));
    }
    return out;
}

namespace {

// States where the environment (or the forced tick) has an enabled
// immediate move with some successor in `target`: the escapes it can
// actually realize against a waiting controller.
SymStateSet env_escape(const GameContext& ctx, const SymStateSet& target) {
    SymStateSet out = sss_empty(ctx);
    for (int q = 0; q < ctx.nlocs(); ++q) {
        if (ctx.inv[q].is_empty()) continue;
        Fed f(ctx.dim);
        for (int ei : ctx.out[q]) {
            const CtxEdge& e = ctx.edges[ei];
            if (e.owner == 0) continue;
            f = f.join(pre_edge(ctx, e, target));
        }
        out[q] = std::move(f);
    }
    return out;
}

}  // namespace

SymStateSet cpre(const GameContext& ctx, int p, const SymStateSet& target) {
    SymStateSet draw = p == 0 ? dcpre0(ctx, target) : dcpre1(ctx, target);
    SymStateSet goods = sss_join(target, draw);
    // What can interrupt a wait: for the controller, only escapes the
    // environment can realize on its own; for the environment, both the
    // controller's one-step forces and the spots where it would itself be
    // trapped into acting out of the target.
    SymStateSet bad = p == 0 ? env_escape(ctx, sss_subtract(ctx.space(), target))
                             : dcpre0(ctx, sss_subtract(ctx.space(), target));
    bad = sss_subtract(bad, goods);
    return predt(ctx, p, goods, bad);
}

namespace {

void push_zone_rules(StrategyTable& st, StrategyRule::Kind kind, int loc, const Fed& f,
                     int edge = -1, const std::optional<Dbm>& target = std::nullopt) {
    for (const auto& z : f.zones()) {
        StrategyRule r;
        r.kind = kind;
        r.loc = loc;
        r.zone = z;
        r.edge = edge;
        r.target = target;
        st.rules.push_back(std::move(r));
    }
}

void record_seed_tick_rules(const GameContext& ctx, const SymStateSet& seed, StrategyTable& st) {
    for (int q = 0; q < ctx.nlocs(); ++q) {
        if (seed[q].is_empty()) continue;
        int tick_edge = -1;
        for (int ei : ctx.out[q])
            if (ctx.edges[ei].owner == 2) tick_edge = ei;
        if (tick_edge < 0) continue;
        Fed at_tick = seed[q].meet(ctx.edges[tick_edge].guard);
        if (!at_tick.is_empty())
            push_zone_rules(st, StrategyRule::Kind::Immediate, q, at_tick, tick_edge);
    }
}

}  // namespace

std::pair<SymStateSet, StrategyTable> attractor(const GameContext& ctx, int p,
                                                const SymStateSet& target) {
    SymStateSet x = sss_empty(ctx);
    for (int q = 0; q < ctx.nlocs(); ++q) x[q] = target[q].meet(ctx.inv[q]);
    StrategyTable st;
    if (p == 0) record_seed_tick_rules(ctx, x, st);

    for (;;) {
        Dcpre0Detail detail;
        SymStateSet draw =
            p == 0 ? dcpre0_impl(ctx, x, &detail) : dcpre1(ctx, x);
        SymStateSet goods = sss_join(x, draw);
        SymStateSet bad = p == 0 ? env_escape(ctx, sss_subtract(ctx.space(), x))
                                 : dcpre0(ctx, sss_subtract(ctx.space(), x));
        bad = sss_subtract(bad, goods);
        SymStateSet nxt = sss_join(predt(ctx, p, goods, bad), x);
        bool grew = false;
        for (int q = 0; q < ctx.nlocs(); ++q) {
            Fed delta = nxt[q].subtract(x[q]);
            if (delta.is_empty()) continue;
            grew = true;
            if (p != 0) continue;
            // attribute the newly won zone to a witness move
            Fed rem = delta;
            for (const auto& fp : detail.force[q]) {
                Fed part = rem.meet(fp.zone);
                if (part.is_empty()) continue;
                push_zone_rules(st, StrategyRule::Kind::Immediate, q, part, fp.edge);
                rem = rem.subtract(part);
            }
            Fed passive = rem.meet(detail.second[q]);
            if (!passive.is_empty()) {
                push_zone_rules(st, StrategyRule::Kind::Passive, q, passive);
                rem = rem.subtract(passive);
            }
            if (rem.is_empty()) continue;
            auto bad_zones = bad_zone_list(ctx, p, q, goods[q], &bad);
            for (const auto& gz : goods[q].zones()) {
                if (rem.is_empty()) break;
                Fed reach = predt_loc(ctx.dim, Fed(gz), bad_zones);
                Fed part = rem.meet(reach);
                if (part.is_empty()) continue;
                push_zone_rules(st, StrategyRule::Kind::Wait, q, part, -1, gz);
                rem = rem.subtract(part);
            }
            // anything left is reachable only through several good zones at
            // once; fall back to a passive prescription
            if (!rem.is_empty())
                push_zone_rules(st, StrategyRule::Kind::Passive, q, rem);
        }
        if (!grew) break;
        x = std::move(nxt);
    }
    return {x, st};
}

GameContext subgame_minus(const GameContext& ctx, int p, const SymStateSet& t) {
    GameContext s = ctx;
    s.p0_cache.reset();
    for (int q = 0; q < ctx.nlocs(); ++q) s.inv[q] = ctx.inv[q].subtract(t[q]);
    if (p == 0) {
        for (int q = 0; q < ctx.nlocs(); ++q) {
            Fed tprime(ctx.dim);
            for (int ei : ctx.out[q]) {
                const CtxEdge& e = ctx.edges[ei];
                if (e.owner != 0) continue;
                tprime = tprime.join(pre_edge(ctx, e, t));
            }
            tprime = tprime.subtract(t[q]).meet(s.inv[q]);
            if (!tprime.is_empty()) s.urg1[q] = s.urg1[q].join(tprime);
        }
    }
    return s;
}

namespace {

void append_rules(StrategyTable& dst, const StrategyTable& src) {
    dst.rules.insert(dst.rules.end(), src.rules.begin(), src.rules.end());
}

void fill_passive_everywhere(const GameContext& ctx, StrategyTable& st) {
    for (int q = 0; q < ctx.nlocs(); ++q)
        if (!ctx.inv[q].is_empty())
            push_zone_rules(st, StrategyRule::Kind::Passive, q, ctx.inv[q]);
}

// colors present in the (restricted) context
std::vector<int> present_colors(const GameContext& ctx) {
    assert(ctx.aug != nullptr);
    std::vector<int> cols;
    int zi = ctx.dim - 1;
    Dbm z_eq_1 = Dbm::universal(ctx.dim);
    bool ok = z_eq_1.constrain(zi, 0, Bound::weak(1)) && z_eq_1.constrain(0, zi, Bound::weak(-1));
    Dbm z_lt_1 = Dbm::universal(ctx.dim);
    ok &= z_lt_1.constrain(zi, 0, Bound::strict(1));
    assert(ok);
    (void)ok;
    for (int q = 0; q < ctx.nlocs(); ++q) {
        if (ctx.inv[q].is_empty()) continue;
        const AugLocation& al = ctx.aug->locs[q];
        if (ctx.inv[q].intersects(Fed(z_lt_1))) cols.push_back(beta_color(al, false));
        if (ctx.inv[q].intersects(Fed(z_eq_1))) cols.push_back(beta_color(al, true));
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    return cols;
}

SymStateSet ctx_color_set(const GameContext& ctx, int k) {
    int zi = ctx.dim - 1;
    Dbm z_eq_1 = Dbm::universal(ctx.dim);
    bool ok = z_eq_1.constrain(zi, 0, Bound::weak(1)) && z_eq_1.constrain(0, zi, Bound::weak(-1));
    Dbm z_lt_1 = Dbm::universal(ctx.dim);
    ok &= z_lt_1.constrain(zi, 0, Bound::strict(1));
    assert(ok);
    (void)ok;
    SymStateSet out = sss_empty(ctx);
    for (int q = 0; q < ctx.nlocs(); ++q) {
        if (ctx.inv[q].is_empty()) continue;
        const AugLocation& al = ctx.aug->locs[q];
        if (k >= 2) {
            if (al.c == k - 2) out[q] = ctx.inv[q].meet(Fed(z_eq_1));
        } else {
            bool match = (al.b == 1 - k) || (k == 0 && al.b == kBlameNoneLoc);
            if (match) out[q] = ctx.inv[q].meet(Fed(z_lt_1));
        }
    }
    return out;
}

struct SolveRec {
    SolveStats stats;

    SolveResult run(const GameContext& ctx, int depth) {
        ++stats.calls;
        stats.max_depth = std::max(stats.max_depth, depth);
        SolveResult res;
        res.w0 = sss_empty(ctx);
        res.w1 = sss_empty(ctx);

        auto cols = present_colors(ctx);
        if (cols.empty()) return res;
        int k = cols.back();
        int j = k % 2;
        int i = 1 - j;

        auto [tj, rules_a] = attractor(ctx, j, ctx_color_set(ctx, k));
        auto win_all_j = [&](StrategyTable inner_rules) {
            SolveResult r;
            r.w0 = sss_empty(ctx);
            r.w1 = sss_empty(ctx);
            (j == 0 ? r.w0 : r.w1) = ctx.space();
            if (j == 0) {
                append_rules(r.strategy, inner_rules);
                append_rules(r.strategy, rules_a);
                if (k <= 1) fill_passive_everywhere(ctx, r.strategy);
            }
            return r;
        };

        if (sss_same(tj, ctx.space())) return win_all_j(StrategyTable{});

        SolveResult w1r = run(subgame_minus(ctx, j, tj), depth + 1);
        const SymStateSet& wi_inner = i == 0 ? w1r.w0 : w1r.w1;
        if (sss_is_empty(wi_inner)) return win_all_j(std::move(w1r.strategy));

        auto [ti, rules_b] = attractor(ctx, i, wi_inner);
        SolveResult w2r = run(subgame_minus(ctx, i, ti), depth + 1);

        SolveResult res2;
        const SymStateSet& wj_final = j == 0 ? w2r.w0 : w2r.w1;
        SymStateSet wi_final = sss_subtract(ctx.space(), wj_final);
        if (j == 0) {
            res2.w0 = wj_final;
            res2.w1 = wi_final;
            res2.strategy = std::move(w2r.strategy);
        } else {
            res2.w1 = wj_final;
            res2.w0 = wi_final;
            append_rules(res2.strategy, w2r.strategy);
            append_rules(res2.strategy, w1r.strategy);
            append_rules(res2.strategy, rules_b);
        }
        return res2;
    }
};

}  // namespace

SolveResult solve_context(const GameContext& ctx) {
    SolveRec rec;
    SolveResult r = rec.run(ctx, 1);
    r.stats = rec.stats;
    return r;
}

SolveResult solve(const AugTGA& aug) {
    GameContext ctx = make_context(aug);
    return solve_context(ctx);
}

int winner_from(const SolveResult& r, const AugTGA& aug, int q_init) {
    int idx = aug.initial.at(q_init);
    std::vector<Rational> zero(aug.dim(), Rational(0));
    return r.w0[idx].contains(zero) ? 0 : 1;
}

const StrategyRule* strategy_lookup(const StrategyTable& st, int loc,
                                    std::span<const Rational> vals) {
    for (const auto& r : st.rules) {
        if (r.loc != loc) continue;
        if (r.zone.contains(vals)) return &r;
    }
    return nullptr;
}

// --- text round-trip -------------------------------------------------------

namespace {

Dbm parse_zone_text(const GameContext& ctx, const std::string& text) {
    Dbm d = Dbm::universal(ctx.dim);
    if (text == "true") return d;
    auto clock_id = [&](const std::string& n) -> int {
        for (size_t i = 0; i < ctx.clock_names.size(); ++i)
            if (ctx.clock_names[i] == n) return (int)i + 1;
        throw std::runtime_error("unknown clock in zone: " + n);
    };
    std::string atom;
    std::istringstream in(text);
    while (std::getline(in, atom, '&')) {
        // trim
        size_t b = atom.find_first_not_of(' ');
        size_t e = atom.find_last_not_of(' ');
        if (b == std::string::npos) continue;
        atom = atom.substr(b, e - b + 1);
        size_t oppos = atom.find_first_of("<>");
        if (oppos == std::string::npos) throw std::runtime_error("bad zone atom: " + atom);
        std::string lhs = atom.substr(0, oppos);
        bool is_less = atom[oppos] == '<';
        bool weak = oppos + 1 < atom.size() && atom[oppos + 1] == '=';
        std::string rhs = atom.substr(oppos + (weak ? 2 : 1));
        int c = std::stoi(rhs);
        auto dash = lhs.find('-');
        int i, j;
        if (dash == std::string::npos) {
            i = clock_id(lhs);
            j = 0;
        } else {
            i = clock_id(lhs.substr(0, dash));
            j = clock_id(lhs.substr(dash + 1));
        }
        bool ok;
        if (is_less)
            ok = d.constrain(i, j, Bound::make(c, !weak));
        else
            ok = d.constrain(j, i, Bound::make(-c, !weak));
        if (!ok) throw std::runtime_error("empty zone in strategy: " + text);
    }
    return d;
}

}  // namespace

std::string strategy_to_text(const GameContext& ctx, const StrategyTable& st) {
    assert(ctx.aug != nullptr);
    std::ostringstream oss;
    for (const auto& r : st.rules) {
        oss << "rule " << ctx.aug->loc_name(r.loc) << " :: "
            << r.zone.to_string(ctx.clock_names) << " :: ";
        switch (r.kind) {
            case StrategyRule::Kind::Immediate: {
                const CtxEdge& e = ctx.edges[r.edge];
                std::string an = e.owner == 2 ? "tick" : ctx.aug->base.action_name(e.action);
                oss << "act " << an << " -> " << ctx.aug->loc_name(e.dst);
                break;
            }
            case StrategyRule::Kind::Wait:
                oss << "wait-> " << r.target->to_string(ctx.clock_names);
                break;
            case StrategyRule::Kind::Passive:
                oss << "passive";
                break;
        }
        oss << "\n";
    }
    return oss.str();
}

StrategyTable strategy_from_text(const GameContext& ctx, const std::string& text) {
    assert(ctx.aug != nullptr);
    StrategyTable st;
    std::istringstream in(text);
    std::string line;
    auto loc_of = [&](const std::string& name) -> int {
        for (size_t i = 0; i < ctx.aug->locs.size(); ++i)
            if (ctx.aug->loc_name((int)i) == name) return (int)i;
        throw std::runtime_error("unknown augmented location: " + name);
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("rule ", 0) != 0) throw std::runtime_error("bad strategy line: " + line);
        auto p1 = line.find(" :: ");
        auto p2 = line.find(" :: ", p1 + 4);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw std::runtime_error("bad strategy line: " + line);
        StrategyRule r;
        r.loc = loc_of(line.substr(5, p1 - 5));
        r.zone = parse_zone_text(ctx, line.substr(p1 + 4, p2 - p1 - 4));
        std::string rest = line.substr(p2 + 4);
        if (rest == "passive") {
            r.kind = StrategyRule::Kind::Passive;
        } else if (rest.rfind("wait-> ", 0) == 0) {
            r.kind = StrategyRule::Kind::Wait;
            r.target = parse_zone_text(ctx, rest.substr(7));
        } else if (rest.rfind("act ", 0) == 0) {
            r.kind = StrategyRule::Kind::Immediate;
            auto arrow = rest.find(" -> ");
            if (arrow == std::string::npos) throw std::runtime_error("bad strategy line: " + line);
            std::string an = rest.substr(4, arrow - 4);
            int dst = loc_of(rest.substr(arrow + 4));
            r.edge = -1;
            for (int ei : ctx.out[r.loc]) {
                const CtxEdge& e = ctx.edges[ei];
                std::string en = e.owner == 2 ? "tick" : ctx.aug->base.action_name(e.action);
                if (en == an && e.dst == dst) {
                    r.edge = ei;
                    break;
                }
            }
            if (r.edge < 0) throw std::runtime_error("no matching edge for: " + line);
        } else {
            throw std::runtime_error("bad strategy line: " + line);
        }
        st.rules.push_back(std::move(r));
    }
    return st;
}

}  // namespace tpg
