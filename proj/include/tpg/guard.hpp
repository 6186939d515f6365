#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpg/fed.hpp"

namespace tpg {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ")"),
          line(line),
          col(col) {}
    int line;
    int col;
};

// A one-clock interval with natural endpoints; upper bound may be infinite.
struct Interval {
    int lo = 0;
    bool lo_strict = false;
    int hi = 0;
    bool hi_strict = false;
    bool hi_inf = true;

    bool empty() const {
        if (hi_inf) return false;
        if (lo > hi) return true;
        return lo == hi && (lo_strict || hi_strict);
    }
};

// Boolean formula over atomic clock constraints.
struct Guard {
    enum class Kind { True, False, Atom, And, Or, Not };
    Kind kind = Kind::True;
    int clock = 0;  // Atom only; model-level clock id (user clocks are 1..n)
    Interval iv;
    std::vector<Guard> kids;

    static Guard tt() { return Guard{}; }
    static Guard ff() {
        Guard g;
        g.kind = Kind::False;
        return g;
    }
    static Guard atom(int clock, Interval iv) {
        Guard g;
        g.kind = Kind::Atom;
        g.clock = clock;
        g.iv = iv;
        return g;
    }
    static Guard conj(Guard a, Guard b) {
        Guard g;
        g.kind = Kind::And;
        g.kids = {std::move(a), std::move(b)};
        return g;
    }
    static Guard disj(Guard a, Guard b) {
        Guard g;
        g.kind = Kind::Or;
        g.kids = {std::move(a), std::move(b)};
        return g;
    }
    static Guard negate(Guard a) {
        Guard g;
        g.kind = Kind::Not;
        g.kids = {std::move(a)};
        return g;
    }

    bool is_true() const { return kind == Kind::True; }
    bool is_false() const { return kind == Kind::False; }
};

// Parses the guard grammar: atoms `x<3`, `1<=x<2`, constants `true`/`false`,
// connectives `&&`, `||`, `!`, parentheses.  Positions in errors are relative
// to `line` and `col0`.
Guard parse_guard(const std::string& text, const std::map<std::string, int>& clocks,
                  int line = 1, int col0 = 1);

std::string guard_to_string(const Guard& g, const std::vector<std::string>& clock_names);

// Valuation set of the guard as a federation of dimension `dim` (user clock
// id i occupies DBM index i; extra indices stay unconstrained).
Fed guard_to_fed(const Guard& g, int dim);

// Largest constant of atoms mentioning `clock` (0 when unmentioned).
int guard_max_constant(const Guard& g, int clock);

}  // namespace tpg
