#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tpg/bench.hpp"
#include "tpg/oracle.hpp"
#include "tpg/semantics.hpp"
#include "tpg/solver.hpp"

using namespace tpg;
using nlohmann::json;

namespace {

constexpr int kExitEnvWins = 10;
constexpr int kExitDiff = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitOracleCap = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

struct LoadedArena {
    TGA g;
    AugTGA aug;
};

int load_arena(const std::string& path, LoadedArena& out, bool quiet = false) {
    std::string text;
    try {
        text = read_file(path);
        out.g = parse_arena(text);
    } catch (const std::exception& e) {
        if (!quiet) std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    auto diags = validate_arena(out.g);
    if (!diags.empty()) {
        if (!quiet) {
            std::cerr << "validation failed:\n";
            for (const auto& d : diags) std::cerr << "  " << d << "\n";
        }
        return kExitValidation;
    }
    out.aug = augment(out.g);
    return 0;
}

json counters_json() {
    const auto& c = zone_counters();
    return json{{"canonicalize", c.canonicalize}, {"meet", c.meet},
                {"join", c.join},                 {"subtract", c.subtract},
                {"down", c.down},                 {"up", c.up},
                {"reset", c.reset},               {"inclusion", c.inclusion}};
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string frac = s.substr(dot + 1);
        long long den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        return Rational(std::stoll(s.substr(0, dot)) * den + std::stoll(frac), den);
    }
    return Rational(std::stoll(s));
}

int cmd_solve(const std::string& file, std::string from, bool as_json, bool dump_sets,
              const std::string& strategy_out) {
    LoadedArena a;
    if (int rc = load_arena(file, a)) return rc;
    reset_zone_counters();

    auto t0 = std::chrono::steady_clock::now();
    SolveResult r = solve(a.aug);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (from.empty()) from = a.g.locations.front().name;
    auto from_id = a.g.location_id(from);
    if (!from_id) {
        std::cerr << "unknown location: " << from << "\n";
        return kExitParse;
    }

    GameContext ctx = make_context(a.aug);
    json rep;
    rep["file"] = file;
    rep["wall_ms"] = ms;
    rep["recursion_calls"] = r.stats.calls;
    rep["max_depth"] = r.stats.max_depth;
    rep["peak_federation_size"] = zone_counters().peak_federation_size;
    rep["zone_ops"] = counters_json();
    json winners;
    for (const auto& l : a.g.locations)
        winners[l.name] = winner_from(r, a.aug, l.id) == 0 ? "controller" : "environment";
    rep["winners"] = winners;
    rep["from"] = from;
    int w = winner_from(r, a.aug, *from_id);
    rep["winner"] = w == 0 ? "controller" : "environment";

    if (dump_sets) {
        json sets;
        for (size_t i = 0; i < a.aug.locs.size(); ++i) {
            if (!r.w0[i].is_empty())
                sets["w0"][a.aug.loc_name((int)i)] = r.w0[i].to_string(a.aug.clock_names);
            if (!r.w1[i].is_empty())
                sets["w1"][a.aug.loc_name((int)i)] = r.w1[i].to_string(a.aug.clock_names);
        }
        rep["sets"] = sets;
    }
    if (!strategy_out.empty()) {
        std::ofstream out(strategy_out);
        out << strategy_to_text(ctx, r.strategy);
        rep["strategy_file"] = strategy_out;
    }

    if (as_json) {
        std::cout << rep.dump(2) << "\n";
    } else {
        std::cout << "winner from " << from << ": " << rep["winner"].get<std::string>() << "\n";
        std::cout << "recursion calls: " << r.stats.calls << ", wall: " << ms << " ms"
                  << ", peak federation size: " << zone_counters().peak_federation_size << "\n";
        if (dump_sets)
            for (size_t i = 0; i < a.aug.locs.size(); ++i)
                if (!r.w0[i].is_empty())
                    std::cout << "W0 " << a.aug.loc_name((int)i) << ": "
                              << r.w0[i].to_string(a.aug.clock_names) << "\n";
    }
    return w == 0 ? 0 : kExitEnvWins;
}

int cmd_check(const std::string& file, size_t cap, bool corrupt, bool as_json) {
    LoadedArena a;
    if (int rc = load_arena(file, a)) return rc;
    SolveResult r = solve(a.aug);
    RegionGame rg;
    try {
        rg = build_region_game(a.aug, cap);
    } catch (const OracleCapExceeded& e) {
        std::cerr << e.what() << "\n";
        return kExitOracleCap;
    }
    auto winners = zielonka_finite(rg.pg);
    SymStateSet w0 = r.w0;
    if (corrupt) {
        for (auto& f : w0)
            if (!f.is_empty()) {
                f = Fed(f.dim());
                break;
            }
    }
    CompareReport rep = compare_winning_sets(a.aug, w0, rg, winners);
    if (as_json) {
        json j;
        j["regions_checked"] = rep.regions_checked;
        j["mismatches"] = rep.mismatches;
        j["ok"] = rep.ok();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "checked " << rep.regions_checked << " regions, "
                  << rep.mismatches.size() << " mismatches\n";
        for (const auto& m : rep.mismatches) std::cout << "  " << m << "\n";
    }
    return rep.ok() ? 0 : kExitDiff;
}

int cmd_bench(int n_lo, int n_hi, const std::string& variant, int reps, bool as_json) {
    std::vector<BenchmarkVariant> vs;
    if (variant == "all") {
        vs = {BenchmarkVariant::inv_lt_1, BenchmarkVariant::depicted, BenchmarkVariant::inv_lt_n};
    } else {
        auto v = benchmark_variant_of(variant);
        if (!v) {
            std::cerr << "unknown variant: " << variant << "\n";
            return kExitParse;
        }
        vs = {*v};
    }
    json rows = json::array();
    if (!as_json) std::cout << "variant n locations edges wall_ms calls\n";
    for (auto v : vs) {
        for (const auto& row : run_fig6_bench(n_lo, n_hi, v, reps)) {
            if (as_json) {
                rows.push_back({{"variant", row.variant},
                                {"n", row.n},
                                {"locations", row.locations},
                                {"edges", row.edges},
                                {"wall_ms", row.wall_ms},
                                {"recursion_calls", row.recursion_calls}});
            } else {
                std::cout << row.variant << " " << row.n << " " << row.locations << " "
                          << row.edges << " " << row.wall_ms << " " << row.recursion_calls
                          << "\n";
            }
        }
    }
    if (as_json) std::cout << rows.dump(2) << "\n";
    return 0;
}

int cmd_gen(int n, const std::string& variant) {
    auto v = benchmark_variant_of(variant);
    if (!v) {
        std::cerr << "unknown variant: " << variant << "\n";
        return kExitParse;
    }
    std::cout << serialize_arena(gen_benchmark(n, *v));
    return 0;
}

struct Simulator {
    LoadedArena& a;
    Semantics sem;
    GameContext ctx;
    std::optional<StrategyTable> strategy;

    Configuration conf;
    int aug_loc;  // tracked (q, c, b)
    std::vector<StepRecord> trace;

    Simulator(LoadedArena& a, Semantics sem, int from)
        : a(a), sem(sem), ctx(make_context(a.aug)) {
        conf = initial_config(a.g, from);
        aug_loc = a.aug.initial[from];
    }

    std::vector<Rational> aug_vals() const {
        std::vector<Rational> v = conf.vals;
        v[conf.z_index()] = rational_frac(v[conf.z_index()]);
        return v;
    }

    void show() const {
        std::cout << "at " << a.g.locations[conf.loc].name << " (";
        for (int i = 1; i < (int)conf.vals.size(); ++i) {
            if (i > 1) std::cout << ", ";
            std::cout << (i == conf.z_index() ? "z" : a.g.clock_names[i - 1]) << "="
                      << to_string(conf.vals[i]);
        }
        std::cout << ")  [" << a.aug.loc_name(aug_loc) << "]\n";
    }

    void moves() const {
        for (int p = 0; p < 2; ++p) {
            bool can = playing(a.g, p, conf);
            std::cout << "player " << p << (can ? " can play a regular action" : " cannot play");
            if (sem == Semantics::R && !can) std::cout << " (must pass: none)";
            std::cout << "\n";
        }
        for (int ei : a.g.edges_from(conf.loc)) {
            const Edge& e = a.g.edges[ei];
            std::cout << "  edge " << a.g.action_name(e.action) << " (player "
                      << a.g.action_owner(e.action) << ") guard "
                      << guard_to_string(e.guard, a.g.clock_names) << " -> "
                      << a.g.locations[e.dst].name << "\n";
        }
    }

    Move strategy_move() const {
        if (!strategy) return Move::make_none();
        auto av = aug_vals();
        // at the tick boundary the only move is the reset of z
        if (av[conf.z_index()] == Rational(0) && is_integer(conf.z()) && conf.z() > Rational(0)) {
            // freshly ticked; nothing special to do
        }
        if (!playing(a.g, 0, conf)) return Move::make_none();
        const StrategyRule* r = strategy_lookup(*strategy, aug_loc, av);
        if (!r) return Move::act(Rational(0), kWait0);
        switch (r->kind) {
            case StrategyRule::Kind::Immediate: {
                const CtxEdge& e = ctx.edges[r->edge];
                if (e.owner == 2) return Move::act(Rational(0), kWait0);  // tick handled jointly
                return Move::act(Rational(0), e.action);
            }
            case StrategyRule::Kind::Wait: {
                auto ivs = zone_delta_intervals(*r->target, av);
                if (ivs.empty()) return Move::act(Rational(0), kWait0);
                return Move::act(pick_point(ivs.front()), kWait0);
            }
            case StrategyRule::Kind::Passive:
                return Move::act(Rational(0), kWait0);
        }
        return Move::make_none();
    }

    bool apply(const Move& m0, const Move& m1, size_t pick) {
        std::vector<StepRecord> recs;
        try {
            recs = joint_step(a.g, sem, conf, m0, m1);
        } catch (const IllegalMove& e) {
            std::cout << "illegal: " << e.what() << "\n";
            return false;
        }
        if (recs.empty()) {
            std::cout << "no outcome\n";
            return false;
        }
        if (pick >= recs.size()) {
            // adversarial default: prefer the environment's resolution
            pick = 0;
            for (size_t i = 0; i < recs.size(); ++i)
                if (recs[i].chosen == 1) pick = i;
        }
        const StepRecord& r = recs[pick];
        std::cout << step_to_string(a.g, r) << "\n";
        advance(r);
        return true;
    }

    void advance(const StepRecord& r) {
        // track the augmented location: ticks fold into the delay
        Rational z0 = r.src.z();
        Rational z1 = r.dst.z();
        const AugLocation& cur = a.aug.locs[aug_loc];
        int c = cur.c, b = cur.b;
        if (rational_floor(z1) > rational_floor(z0) || (is_integer(z1) && z1 > z0)) {
            // a tick happened on the way: color memory restarts
            c = a.g.locations[r.src.loc].color;
        }
        if (!(r.dst.loc == r.src.loc && r.m0.none == false && r.m1.none == false &&
              (r.chosen == 0 ? r.m0.action : r.m1.action) < 0)) {
            // a discrete action was executed (not a pure wait)
            int act = r.chosen == 0 ? r.m0.action : r.m1.action;
            if (act >= 0) {
                c = std::max(c, a.g.locations[r.dst.loc].color);
                b = r.chosen;
            }
        }
        int idx = a.aug.loc_index(r.dst.loc, std::max(c, a.g.locations[r.dst.loc].color), b);
        if (idx < 0) idx = a.aug.initial[r.dst.loc];
        aug_loc = idx;
        conf = r.dst;
        trace.push_back(r);
    }

    void lasso() {
        if (trace.empty()) {
            std::cout << "no steps yet\n";
            return;
        }
        auto caps = clock_caps(a.g);
        caps.push_back(1);
        auto key_at = [&](const Configuration& c) {
            return std::make_pair(c.loc, region_key_mod_z(c.vals, caps, c.z_index()));
        };
        auto end_key = key_at(trace.back().dst);
        for (size_t i = 0; i < trace.size(); ++i) {
            if (key_at(trace[i].src) == end_key) {
                LassoPlay p;
                p.prefix.assign(trace.begin(), trace.begin() + i);
                p.cycle.assign(trace.begin() + i, trace.end());
                int w = evaluate_lasso(a.g, sem, p);
                std::cout << "lasso closes after " << i << " steps; winner: player " << w
                          << (w == 0 ? " (controller)" : " (environment)") << "\n";
                return;
            }
        }
        std::cout << "trace does not close yet\n";
    }
};

int cmd_simulate(const std::string& file, const std::string& sem_name,
                 const std::string& strategy_file, std::string from) {
    LoadedArena a;
    if (int rc = load_arena(file, a)) return rc;
    Semantics sem = Semantics::R;
    if (sem_name == "T") sem = Semantics::T;
    else if (sem_name == "S") sem = Semantics::S;
    else if (sem_name != "R") {
        std::cerr << "semantics must be T, S or R\n";
        return kExitParse;
    }
    if (from.empty()) from = a.g.locations.front().name;
    auto fid = a.g.location_id(from);
    if (!fid) {
        std::cerr << "unknown location: " << from << "\n";
        return kExitParse;
    }
    Simulator sim(a, sem, *fid);
    if (!strategy_file.empty()) {
        sim.strategy = strategy_from_text(sim.ctx, read_file(strategy_file));
        std::cout << "controller follows " << strategy_file << "\n";
    }

    std::cout << "commands: state, moves, step M0 ; M1, auto M1, lasso, quit\n";
    std::cout << "  a move is 'none' or 'DELAY ACTION' (wait = wait0/wait1), e.g. 'step 0.5 c ; 1 wait1'\n";
    sim.show();
    std::string line;
    while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
        std::istringstream in(line);
        std::string cmd;
        in >> cmd;
        if (cmd.empty()) continue;
        auto read_move = [&](std::istream& s, int player) -> std::optional<Move> {
            std::string d;
            s >> d;
            if (d == "none") return Move::make_none();
            std::string act;
            s >> act;
            if (d.empty() || act.empty()) return std::nullopt;
            int action;
            if (act == "wait0") action = kWait0;
            else if (act == "wait1" || act == "wait") action = player == 0 ? kWait0 : kWait1;
            else {
                auto id = a.g.action_id(act);
                if (!id) return std::nullopt;
                action = *id;
            }
            return Move::act(parse_rational(d), action);
        };
        if (cmd == "quit" || cmd == "q") break;
        if (cmd == "state") {
            sim.show();
        } else if (cmd == "moves") {
            sim.moves();
        } else if (cmd == "lasso") {
            sim.lasso();
        } else if (cmd == "step") {
            std::string rest;
            std::getline(in, rest);
            auto semi = rest.find(';');
            if (semi == std::string::npos) {
                std::cout << "expected: step M0 ; M1\n";
                continue;
            }
            std::istringstream s0(rest.substr(0, semi)), s1(rest.substr(semi + 1));
            auto m0 = read_move(s0, 0), m1 = read_move(s1, 1);
            if (!m0 || !m1) {
                std::cout << "could not parse the moves\n";
                continue;
            }
            if (sim.apply(*m0, *m1, SIZE_MAX)) sim.show();
        } else if (cmd == "auto") {
            // controller from the strategy (or none), environment from input
            std::string rest;
            std::getline(in, rest);
            std::istringstream s1(rest);
            auto m1 = read_move(s1, 1);
            if (!m1) {
                std::cout << "could not parse the environment move\n";
                continue;
            }
            Move m0 = sim.strategy_move();
            std::cout << "controller plays " << move_to_string(a.g, m0) << "\n";
            if (sim.apply(m0, *m1, SIZE_MAX)) sim.show();
        } else {
            std::cout << "unknown command\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic solver for timed parity games under the refined surprise semantics"};
    app.require_subcommand(1);

    std::string file, from, variant = "depicted", strategy_out, strategy_in, sem_name = "R";
    bool as_json = false, dump_sets = false, corrupt = false;
    size_t cap = 200000;
    int n_lo = 1, n_hi = 8, reps = 3, n = 3;

    auto* solve_cmd = app.add_subcommand("solve", "solve an arena and report the winner");
    solve_cmd->add_option("file", file)->required();
    solve_cmd->add_option("--from", from, "initial location (default: first)");
    solve_cmd->add_flag("--json", as_json);
    solve_cmd->add_flag("--dump-sets", dump_sets, "print the winning sets");
    solve_cmd->add_option("--strategy-out", strategy_out, "write the controller strategy");

    auto* check_cmd = app.add_subcommand("check", "cross-validate against the region oracle");
    check_cmd->add_option("file", file)->required();
    check_cmd->add_option("--cap", cap, "vertex cap for the region game");
    check_cmd->add_flag("--corrupt-w0", corrupt)->group("");  // harness self-test
    check_cmd->add_flag("--json", as_json);

    auto* sim_cmd = app.add_subcommand("simulate", "step through plays interactively");
    sim_cmd->add_option("file", file)->required();
    sim_cmd->add_option("--semantics", sem_name, "T, S or R (default R)");
    sim_cmd->add_option("--strategy", strategy_in, "controller strategy file");
    sim_cmd->add_option("--from", from, "initial location");

    auto* bench_cmd = app.add_subcommand("bench", "time the scaling family");
    bench_cmd->add_option("--n-lo", n_lo);
    bench_cmd->add_option("--n-hi", n_hi);
    bench_cmd->add_option("--variant", variant, "depicted, inv_lt_1, inv_lt_n or all");
    bench_cmd->add_option("--reps", reps);
    bench_cmd->add_flag("--json", as_json);

    auto* gen_cmd = app.add_subcommand("gen", "print a scaling-family arena");
    gen_cmd->add_option("-n", n)->required();
    gen_cmd->add_option("--variant", variant);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return cmd_solve(file, from, as_json, dump_sets, strategy_out);
        if (check_cmd->parsed()) return cmd_check(file, cap, corrupt, as_json);
        if (sim_cmd->parsed()) return cmd_simulate(file, sem_name, strategy_in, from);
        if (bench_cmd->parsed()) return cmd_bench(n_lo, n_hi, variant, reps, as_json);
        if (gen_cmd->parsed()) return cmd_gen(n, variant);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
