#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpg/augment.hpp"
#include "tpg/solver.hpp"

namespace tpg {

struct OracleCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Explicit turn-based parity game (max-parity: player 0 wins a play iff the
// highest color seen infinitely often is even).
struct FiniteParityGame {
    struct Vertex {
        int owner = 0;
        int color = 0;
        std::vector<int> succ;
        std::string label;
    };
    std::vector<Vertex> verts;
};

// The sequentialized region game: Controller proposes (NONE, an immediate
// action, or a long wait), then the Environment answers (lets it happen,
// preempts with an own move, or stops the wait early).
struct RegionGame {
    FiniteParityGame pg;
    std::map<std::pair<int, RegionKey>, int> choose;  // (location, region) -> vertex
    int nclocks = 0;
    std::vector<int> caps;
};

// Region game of the augmented arena under the refined semantics.
RegionGame build_region_game(const AugTGA& aug, size_t vertex_cap = 200000);

// Region game of a plain arena under the classical semantics (regular
// actions fire at delay zero, plain parity over location colors).
RegionGame build_region_game_classic(const TGA& g, size_t vertex_cap = 200000);

// Winning partition, one entry per vertex (0 or 1).
std::vector<int> zielonka_finite(const FiniteParityGame& pg);

struct CompareReport {
    std::vector<std::string> mismatches;
    size_t regions_checked = 0;

    bool ok() const { return mismatches.empty(); }
};

// Diffs the symbolic controller set against the oracle's, region by region.
CompareReport compare_winning_sets(const AugTGA& aug, const SymStateSet& w0,
                                   const RegionGame& rg, const std::vector<int>& winners);

// PGSolver-style text export.
std::string export_parity_game(const FiniteParityGame& pg);

// Convenience: winner of the classical game from (loc, all clocks zero).
int classic_winner_from(const TGA& g, const RegionGame& rg, const std::vector<int>& winners,
                        int loc);

}  // namespace tpg
