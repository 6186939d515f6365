#include "tpg/fed.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tpg {

ZoneOpCounters& zone_counters() {
    static ZoneOpCounters c;
    return c;
}

void reset_zone_counters() { zone_counters() = ZoneOpCounters(); }

static void note_size(size_t n) {
    auto& c = zone_counters();
    if (n > c.peak_federation_size) c.peak_federation_size = n;
}

void Fed::add(const Dbm& z) {
    assert(z.dim() == dim_);
    for (const auto& have : zones_)
        if (have.includes(z)) return;
    zones_.push_back(z);
    note_size(zones_.size());
}

std::vector<Dbm> zone_subtract(const Dbm& a, const Dbm& b) {
    ++zone_counters().subtract;
    std::vector<Dbm> out;
    Dbm core = a;
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            if (i == j) continue;
            Bound f = b.at(i, j);
            if (f.is_inf()) continue;
            if (!(f < core.at(i, j))) continue;  // facet cannot cut
            // piece outside this facet: x_j - x_i beyond the bound
            Dbm piece = core;
            if (piece.constrain(j, i, f.negated())) out.push_back(piece);
            if (!core.constrain(i, j, f)) return out;  // rest is inside b
        }
    }
    return out;  // core is included in b and dropped
}

Fed Fed::meet(const Fed& o) const {
    ++zone_counters().meet;
    Fed r(dim_);
    for (const auto& a : zones_)
        for (const auto& b : o.zones_)
            if (auto z = a.meet(b)) r.add(*z);
    return r;
}

Fed Fed::join(const Fed& o) const {
    ++zone_counters().join;
    Fed r = *this;
    for (const auto& z : o.zones_) r.add(z);
    r.reduce_cheap();
    return r;
}

Fed Fed::subtract(const Fed& o) const {
    Fed r = *this;
    for (const auto& b : o.zones_) {
        if (r.zones_.empty()) break;
        Fed next(dim_);
        for (const auto& a : r.zones_)
            for (const auto& piece : zone_subtract(a, b)) next.add(piece);
        r = std::move(next);
    }
    if (r.zones_.size() > 6) r.reduce_exact();
    return r;
}

bool Fed::includes(const Fed& o) const {
    ++zone_counters().inclusion;
    for (const auto& z : o.zones_) {
        Fed rem(dim_);
        rem.zones_.push_back(z);
        for (const auto& a : zones_) {
            Fed next(dim_);
            for (const auto& piece : rem.zones_)
                for (const auto& p : zone_subtract(piece, a)) next.add(p);
            rem = std::move(next);
            if (rem.is_empty()) break;
        }
        if (!rem.is_empty()) return false;
    }
    return true;
}

bool Fed::intersects(const Fed& o) const {
    for (const auto& a : zones_)
        for (const auto& b : o.zones_)
            if (a.meet(b)) return true;
    return false;
}

bool Fed::contains(std::span<const Rational> vals) const {
    for (const auto& z : zones_)
        if (z.contains(vals)) return true;
    return false;
}

bool Fed::same_set(const Fed& o) const { return includes(o) && o.includes(*this); }

Fed Fed::down() const {
    ++zone_counters().down;
    Fed r(dim_);
    for (const auto& z : zones_) {
        Dbm d = z;
        d.down();
        r.add(d);
    }
    return r;
}

Fed Fed::up() const {
    ++zone_counters().up;
    Fed r(dim_);
    for (const auto& z : zones_) {
        Dbm d = z;
        d.up();
        r.add(d);
    }
    return r;
}

Fed Fed::reset_pre(const std::vector<int>& clocks) const {
    ++zone_counters().reset;
    Fed r(dim_);
    for (const auto& z : zones_)
        if (auto d = z.reset_pre(clocks)) r.add(*d);
    return r;
}

Fed Fed::reset_apply(const std::vector<int>& clocks) const {
    ++zone_counters().reset;
    Fed r(dim_);
    for (const auto& z : zones_) r.add(z.reset_apply(clocks));
    return r;
}

Fed Fed::complement() const {
    return universal(dim_).subtract(*this);
}

std::optional<Dbm> Fed::hull() const {
    if (zones_.empty()) return std::nullopt;
    Dbm h = zones_.front();
    for (size_t k = 1; k < zones_.size(); ++k) {
        const Dbm& z = zones_[k];
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                if (h.at(i, j) < z.at(i, j)) h.set(i, j, z.at(i, j));
    }
    bool ok = h.close();
    assert(ok);
    (void)ok;
    return h;
}

bool Fed::is_convex() const {
    if (zones_.size() <= 1) return true;
    Fed h(dim_);
    h.zones_.push_back(*hull());
    return includes(h);
}

void Fed::reduce_cheap() {
    std::vector<Dbm> kept;
    for (size_t i = 0; i < zones_.size(); ++i) {
        bool covered = false;
        for (size_t j = 0; j < zones_.size(); ++j) {
            if (i == j) continue;
            if (zones_[j].includes(zones_[i]) && !(j > i && zones_[i].includes(zones_[j]))) {
                covered = true;
                break;
            }
        }
        if (!covered) kept.push_back(zones_[i]);
    }
    zones_ = std::move(kept);
}

void Fed::reduce_exact() {
    for (size_t i = 0; i < zones_.size();) {
        Fed rest(dim_);
        for (size_t j = 0; j < zones_.size(); ++j)
            if (j != i) rest.zones_.push_back(zones_[j]);
        Fed me(dim_);
        me.zones_.push_back(zones_[i]);
        if (rest.includes(me)) {
            zones_.erase(zones_.begin() + i);
        } else {
            ++i;
        }
    }
}

int Fed::max_constant() const {
    int mc = 0;
    for (const auto& z : zones_) mc = std::max(mc, z.max_constant());
    return mc;
}

Fed Fed::extended(int newdim) const {
    Fed r(newdim);
    for (const auto& z : zones_) r.add(z.extended(newdim));
    return r;
}

std::string Fed::to_string(const std::vector<std::string>& names) const {
    if (zones_.empty()) return "false";
    std::vector<std::string> parts;
    for (const auto& z : zones_) parts.push_back(z.to_string(names));
    std::sort(parts.begin(), parts.end());
    std::ostringstream oss;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) oss << " | ";
        oss << parts[i];
    }
    return oss.str();
}

}  // namespace tpg
