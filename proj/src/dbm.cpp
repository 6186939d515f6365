#include "tpg/dbm.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>

namespace tpg {

Dbm::Dbm(int dim) : dim_(dim), m_(dim * dim, Bound::inf()) {
    for (int i = 0; i < dim; ++i) set(i, i, Bound::zero());
}

Dbm Dbm::universal(int dim) {
    Dbm d(dim);
    for (int i = 1; i < dim; ++i) d.set(0, i, Bound::zero());  // x_i >= 0
    return d;
}

bool Dbm::close() {
    for (int k = 0; k < dim_; ++k)
        for (int i = 0; i < dim_; ++i) {
            Bound ik = at(i, k);
            if (ik.is_inf()) continue;
            for (int j = 0; j < dim_; ++j) {
                Bound cand = ik + at(k, j);
                if (cand < at(i, j)) set(i, j, cand);
            }
        }
    for (int i = 0; i < dim_; ++i)
        if (at(i, i) < Bound::zero()) return false;
    return true;
}

void Dbm::close_ij(int i, int j) {
    for (int a = 0; a < dim_; ++a) {
        Bound ai = at(a, i);
        if (ai.is_inf()) continue;
        Bound through = ai + at(i, j);
        for (int b = 0; b < dim_; ++b) {
            Bound cand = through + at(j, b);
            if (cand < at(a, b)) set(a, b, cand);
        }
    }
}

bool Dbm::constrain(int i, int j, Bound b) {
    if (b < at(i, j)) {
        set(i, j, b);
        if ((at(j, i) + b) < Bound::zero()) return false;
        close_ij(i, j);
        for (int a = 0; a < dim_; ++a)
            if (at(a, a) < Bound::zero()) return false;
    }
    return true;
}

void Dbm::up() {
    for (int i = 1; i < dim_; ++i) set(i, 0, Bound::inf());
}

void Dbm::down() {
    for (int i = 1; i < dim_; ++i) {
        Bound lo = Bound::zero();
        for (int j = 1; j < dim_; ++j)
            if (j != i && at(j, i) < lo) lo = at(j, i);
        set(0, i, lo);
    }
    bool ok = close();
    assert(ok);
    (void)ok;
}

void Dbm::free_clock(int x) {
    for (int j = 0; j < dim_; ++j) {
        if (j == x) continue;
        set(x, j, Bound::inf());
        set(j, x, at(j, 0));
    }
    set(x, 0, Bound::inf());
    set(0, x, Bound::zero());
    bool ok = close();
    assert(ok);
    (void)ok;
}

std::optional<Dbm> Dbm::reset_pre(const std::vector<int>& clocks) const {
    Dbm d = *this;
    for (int x : clocks) {
        if (!d.constrain(x, 0, Bound::zero())) return std::nullopt;
        if (!d.constrain(0, x, Bound::zero())) return std::nullopt;
    }
    for (int x : clocks) d.free_clock(x);
    return d;
}

Dbm Dbm::reset_apply(const std::vector<int>& clocks) const {
    Dbm d = *this;
    for (int x : clocks) d.free_clock(x);
    for (int x : clocks) {
        bool ok = d.constrain(x, 0, Bound::zero()) && d.constrain(0, x, Bound::zero());
        assert(ok);
        (void)ok;
    }
    return d;
}

std::optional<Dbm> Dbm::meet(const Dbm& o) const {
    assert(dim_ == o.dim_);
    Dbm d = *this;
    bool tightened = false;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (o.at(i, j) < d.at(i, j)) {
                d.set(i, j, o.at(i, j));
                tightened = true;
            }
    if (tightened && !d.close()) return std::nullopt;
    return d;
}

bool Dbm::includes(const Dbm& o) const {
    assert(dim_ == o.dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (o.at(i, j).is_inf() ? !at(i, j).is_inf() : at(i, j) < o.at(i, j))
                return false;
    return true;
}

bool Dbm::contains(std::span<const Rational> vals) const {
    assert((int)vals.size() == dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Bound b = at(i, j);
            if (b.is_inf()) continue;
            Rational diff = vals[i] - vals[j];
            Rational c(b.value());
            if (b.is_strict() ? !(diff < c) : !(diff <= c)) return false;
        }
    return true;
}

Dbm Dbm::extended(int newdim) const {
    assert(newdim >= dim_);
    Dbm d = Dbm::universal(newdim);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) d.set(i, j, at(i, j));
    bool ok = d.close();
    assert(ok);
    (void)ok;
    return d;
}

int Dbm::max_constant() const {
    int mc = 0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Bound b = at(i, j);
            if (!b.is_inf()) mc = std::max(mc, std::abs(b.value()));
        }
    return mc;
}

std::string Dbm::to_string(const std::vector<std::string>& names) const {
    auto name = [&](int i) -> std::string {
        if (i - 1 < (int)names.size()) return names[i - 1];
        return "x" + std::to_string(i);
    };
    std::ostringstream oss;
    bool first = true;
    auto emit = [&](const std::string& s) {
        if (!first) oss << " & ";
        oss << s;
        first = false;
    };
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            if (i == j) continue;
            Bound b = at(i, j);
            if (b.is_inf()) continue;
            if (i != 0 && j == 0 && b.is_inf()) continue;
            std::ostringstream a;
            if (j == 0) {
                a << name(i) << (b.is_strict() ? "<" : "<=") << b.value();
            } else if (i == 0) {
                if (b == Bound::zero()) continue;  // implicit nonnegativity
                a << name(j) << (b.is_strict() ? ">" : ">=") << -b.value();
            } else {
                a << name(i) << "-" << name(j) << (b.is_strict() ? "<" : "<=") << b.value();
            }
            emit(a.str());
        }
    if (first) return "true";
    return oss.str();
}

}  // namespace tpg
