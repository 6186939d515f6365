#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tpg/augment.hpp"

namespace tpg {

// A controller prescription on a zone of one augmented location; rules are
// ordered, the first match wins.
struct StrategyRule {
    enum class Kind { Immediate, Wait, Passive };
    Kind kind = Kind::Passive;
    int loc = 0;
    Dbm zone{1};
    int edge = -1;             // Immediate: context edge index
    std::optional<Dbm> target; // Wait: zone reachable by pure delay
};

struct StrategyTable {
    std::vector<StrategyRule> rules;
};

// The solver works on a context: per-location invariant and no-wait
// federations plus discrete edges.  Subgames only restrict these sets.
struct CtxEdge {
    int src = 0;
    int dst = 0;
    int owner = 0;  // 0 controller, 1 environment, 2 forced tick
    int action = -1;
    Fed guard{1};
    std::vector<int> resets;
    int aug_edge = -1;
};

struct GameContext {
    int dim = 1;
    std::vector<int> caps;
    std::vector<std::string> clock_names;
    std::vector<Fed> inv;
    std::vector<Fed> urg0;
    std::vector<Fed> urg1;
    std::vector<CtxEdge> edges;
    std::vector<std::vector<int>> out;
    const AugTGA* aug = nullptr;
    // lazily computed playing_0 states; invalidated by subgame restriction
    mutable std::optional<SymStateSet> p0_cache;

    int nlocs() const { return (int)inv.size(); }
    const SymStateSet& space() const { return inv; }
};

GameContext make_context(const AugTGA& aug);

// --- symbolic state-set helpers ---
SymStateSet sss_empty(const GameContext& ctx);
bool sss_is_empty(const SymStateSet& s);
SymStateSet sss_join(const SymStateSet& a, const SymStateSet& b);
SymStateSet sss_subtract(const SymStateSet& a, const SymStateSet& b);
bool sss_same(const SymStateSet& a, const SymStateSet& b);
size_t sss_region_count(const GameContext& ctx, const SymStateSet& s);

// Temporal predecessor of `goods` avoiding `bads`: states from which player
// p can delay into goods with no bad state (nor its own no-wait set, nor a
// hole of the invariant) at or before the chosen delay.
SymStateSet predt(const GameContext& ctx, int p, const SymStateSet& goods,
                  const SymStateSet& bads);

// Discrete controllable predecessors, as in the zone formulas (the target
// itself is not included).
SymStateSet dcpre0(const GameContext& ctx, const SymStateSet& target);
SymStateSet dcpre1(const GameContext& ctx, const SymStateSet& target);

// One-step controllable predecessor (includes the target).
SymStateSet cpre(const GameContext& ctx, int p, const SymStateSet& target);

std::pair<SymStateSet, StrategyTable> attractor(const GameContext& ctx, int p,
                                                const SymStateSet& target);

GameContext subgame_minus(const GameContext& ctx, int p, const SymStateSet& t);

struct SolveStats {
    long calls = 0;
    int max_depth = 0;
};

struct SolveResult {
    SymStateSet w0, w1;
    StrategyTable strategy;
    SolveStats stats;
};

SolveResult solve_context(const GameContext& ctx);
SolveResult solve(const AugTGA& aug);

// 0 iff ((q_init, alpha(q_init), none), 0...) lies in the controller set.
int winner_from(const SolveResult& r, const AugTGA& aug, int q_init);

std::string strategy_to_text(const GameContext& ctx, const StrategyTable& st);
StrategyTable strategy_from_text(const GameContext& ctx, const std::string& text);

// First rule matching the given augmented location and valuation.
const StrategyRule* strategy_lookup(const StrategyTable& st, int loc,
                                    std::span<const Rational> vals);

}  // namespace tpg
