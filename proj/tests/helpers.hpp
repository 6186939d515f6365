#pragma once

#include <random>
#include <sstream>
#include <string>

#include "tpg/model.hpp"
#include "tpg/regions.hpp"
#include "tpg/semantics.hpp"

namespace tpg::testing {

// The two-location arena with the environment reset loop (the running
// example where the controller wins only with the surprise mechanics).
inline const char* kFig1a = R"(clocks x
actions0 c
actions1 el
maxcolor 2
loc q0 color=1 inv=true
loc q1 color=2 inv=true
edge q0 el reset=x q0
edge q0 c guard=0<x<1 q1
edge q1 c q1
)";

// The observer arena: the controller has no action in q0 and waits for the
// environment to commit to one of the two branches.
inline const char* kFig1b = R"(clocks x
actions0 c
actions1 e1 e2
maxcolor 2
loc q0 color=1 inv=x<1
loc q1 color=2 inv=true
loc q2 color=2 inv=true
edge q0 e1 q1
edge q0 e2 q2
edge q1 c q1
edge q2 c q2
)";

// The subgame example: the controller wins by playing h immediately at x=0.
inline const char* kFig4 = R"(clocks x
actions0 h
actions1 l
maxcolor 2
loc qi color=1 inv=true
loc ql color=0 inv=true
loc qh color=2 inv=true
edge qi h guard=x=0 qh
edge qi l guard=x=0 ql
edge qh h guard=x<1 qh
)";

inline TGA fig1a() { return parse_arena(kFig1a); }
inline TGA fig1b() { return parse_arena(kFig1b); }
inline TGA fig4() { return parse_arena(kFig4); }

// Random federation over `nclocks` clocks, all constants within [0, cmax],
// clipped to the box [0, cmax]^n so everything is a region union.
inline Fed random_fed(std::mt19937& rng, int nclocks, int cmax, int max_zones = 3) {
    int dim = nclocks + 1;
    std::uniform_int_distribution<int> nz(1, max_zones);
    std::uniform_int_distribution<int> cst(0, cmax);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> pick(0, dim - 1);
    Fed f(dim);
    int zones = nz(rng);
    for (int k = 0; k < zones; ++k) {
        Dbm z = Dbm::universal(dim);
        bool ok = true;
        for (int c = 1; c <= nclocks && ok; ++c) ok = z.constrain(c, 0, Bound::weak(cmax));
        int tries = std::uniform_int_distribution<int>(1, 2 * nclocks)(rng);
        for (int t = 0; t < tries && ok; ++t) {
            int i = pick(rng), j = pick(rng);
            if (i == j) continue;
            int c = cst(rng);
            if (j != 0 && coin(rng)) c = -c;
            ok = z.constrain(i, j, Bound::make(c, coin(rng) == 1));
        }
        if (ok) f.add(z);
    }
    return f;
}

// Random small arena for the cross-validation suite: a couple of locations,
// one clock, tiny constants, deadlock-free by rejection.
inline TGA random_arena(std::mt19937& rng) {
    std::uniform_int_distribution<int> nloc_d(1, 3), nedge_d(1, 4), col_d(0, 3), cst_d(0, 2);
    std::uniform_int_distribution<int> coin(0, 1), pct(0, 99);
    for (;;) {
        int nloc = nloc_d(rng);
        int nedge = nedge_d(rng);
        std::uniform_int_distribution<int> loc_d(0, nloc - 1);
        std::ostringstream oss;
        oss << "clocks x\nactions0";
        for (int a = 0; a < 3; ++a) oss << " c" << a;
        oss << "\nactions1";
        for (int a = 0; a < 3; ++a) oss << " e" << a;
        oss << "\nmaxcolor 3\n";
        for (int l = 0; l < nloc; ++l) {
            oss << "loc L" << l << " color=" << col_d(rng);
            int r = pct(rng);
            if (r < 30) {
                oss << " inv=x<" << 1 + cst_d(rng) % 2 + (r % 2);
            } else {
                oss << " inv=true";
            }
            oss << "\n";
        }
        auto guard_str = [&]() -> std::string {
            int r = pct(rng);
            if (r < 35) return "";
            int a = cst_d(rng), b = cst_d(rng);
            if (a > b) std::swap(a, b);
            switch (r % 4) {
                case 0: return "x<" + std::to_string(std::max(1, b));
                case 1: return "x>=" + std::to_string(a);
                case 2: return "x=" + std::to_string(a);
                default:
                    if (a == b) return "x<=" + std::to_string(b);
                    return std::to_string(a) + (r % 2 ? "<" : "<=") + "x<" + std::to_string(b);
            }
        };
        for (int e = 0; e < nedge; ++e) {
            int owner = coin(rng);
            int act = cst_d(rng) % 3;
            oss << "edge L" << loc_d(rng) << " " << (owner ? "e" : "c") << act;
            std::string gs = guard_str();
            if (!gs.empty()) oss << " guard=" << gs;
            if (coin(rng)) oss << " reset=x";
            oss << " L" << loc_d(rng) << "\n";
        }
        TGA g = parse_arena(oss.str());
        if (validate_arena(g).empty()) return g;
    }
}

}  // namespace tpg::testing
