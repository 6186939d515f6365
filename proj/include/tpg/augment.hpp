#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "tpg/model.hpp"
#include "tpg/regions.hpp"

namespace tpg {

// Symbolic state sets are per-augmented-location federations over the clocks
// of the augmented arena (user clocks plus z).
using SymStateSet = std::vector<Fed>;

struct AugLocation {
    int base = 0;   // base location id
    int c = 0;      // largest base color since the last tick
    int b = 0;      // blamed player, kBlameNoneLoc for "nobody yet"
};
constexpr int kBlameNoneLoc = -1;

struct AugEdge {
    enum class Kind { Regular, Tick, WaitLoop };
    Kind kind = Kind::Regular;
    int src = 0;
    int dst = 0;
    int action = -1;          // arena action id for regular edges
    int owner = 0;            // 0/1; 2 for the tick (forced, shared)
    Fed guard = Fed(1);       // over user clocks + z
    std::vector<int> resets;  // DBM indices
};

struct AugTGA {
    TGA base;
    std::vector<AugLocation> locs;
    std::vector<AugEdge> edges;
    std::vector<std::vector<int>> out_edges;
    std::vector<Fed> inv;   // C(q) && z <= 1
    std::vector<Fed> urg0;
    std::vector<Fed> urg1;
    std::vector<int> initial;  // (q, alpha(q), none) per base location
    std::vector<int> caps;     // DBM clock index 1..n+1 (z capped at 1)
    std::vector<std::string> clock_names;  // user names + "z"

    int nclocks() const { return base.nclocks(); }
    int dim() const { return nclocks() + 2; }
    int z_index() const { return nclocks() + 1; }

    int loc_index(int q, int c, int b) const;
    std::string loc_name(int idx) const;
};

AugTGA augment(const TGA& g);

// Color of an augmented location: c+2 when z=1 (a tick), 1-b otherwise.
int beta_color(const AugLocation& l, bool at_tick);

// All states of color k, as a symbolic state set over the full invariants.
SymStateSet color_set(const AugTGA& aug, int k);

// Debug dump in the arena text format (locations named q@c@b).
std::string serialize_augmented(const AugTGA& aug);

}  // namespace tpg
