#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpg/bound.hpp"
#include "tpg/rational.hpp"

namespace tpg {

// Canonical difference-bound matrix over clocks 1..dim-1 (index 0 is the
// zero reference).  Entry (i,j) bounds x_i - x_j.  All public operations
// keep the matrix canonical (shortest-path closed); emptiness is signaled
// through std::optional at the call sites that can produce it.
class Dbm {
public:
    explicit Dbm(int dim);

    static Dbm universal(int dim);

    int dim() const { return dim_; }
    Bound at(int i, int j) const { return m_[i * dim_ + j]; }
    void set(int i, int j, Bound b) { m_[i * dim_ + j] = b; }

    // Shortest-path closure; false iff a negative cycle makes the zone empty.
    bool close();

    // Meet with a single constraint x_i - x_j ~ b; false iff empty after.
    bool constrain(int i, int j, Bound b);

    // Future closure: drop upper bounds of all clocks.
    void up();
    // Past closure: lower bounds relax to 0 (kept consistent with diagonals).
    void down();
    // Remove every constraint on clock x.
    void free_clock(int x);

    // {v | v[r:=0] in this}; nullopt if no valuation maps into the zone.
    std::optional<Dbm> reset_pre(const std::vector<int>& clocks) const;
    // {v[r:=0] | v in this}.
    Dbm reset_apply(const std::vector<int>& clocks) const;

    std::optional<Dbm> meet(const Dbm& o) const;

    bool includes(const Dbm& o) const;
    bool contains(std::span<const Rational> vals) const;  // vals[0] must be 0

    // Append unconstrained clocks so the matrix has dimension newdim.
    Dbm extended(int newdim) const;

    bool operator==(const Dbm& o) const { return dim_ == o.dim_ && m_ == o.m_; }

    // Largest absolute constant appearing in any finite bound.
    int max_constant() const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    int dim_;
    std::vector<Bound> m_;

    // Re-close after entry (i,j) was tightened.
    void close_ij(int i, int j);
};

}  // namespace tpg
