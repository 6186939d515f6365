#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpg/dbm.hpp"

namespace tpg {

// Counters for the zone algebra, reported by the CLI.
struct ZoneOpCounters {
    uint64_t canonicalize = 0;
    uint64_t meet = 0;
    uint64_t join = 0;
    uint64_t subtract = 0;
    uint64_t down = 0;
    uint64_t up = 0;
    uint64_t reset = 0;
    uint64_t inclusion = 0;
    uint64_t peak_federation_size = 0;
};
ZoneOpCounters& zone_counters();
void reset_zone_counters();

// A finite union of nonempty canonical zones over the same clock set.
class Fed {
public:
    explicit Fed(int dim) : dim_(dim) {}
    Fed(const Dbm& z) : dim_(z.dim()) { zones_.push_back(z); }

    static Fed empty(int dim) { return Fed(dim); }
    static Fed universal(int dim) { return Fed(Dbm::universal(dim)); }

    int dim() const { return dim_; }
    bool is_empty() const { return zones_.empty(); }
    size_t size() const { return zones_.size(); }
    const std::vector<Dbm>& zones() const { return zones_; }

    void add(const Dbm& z);  // assumes canonical nonempty

    Fed meet(const Fed& o) const;
    Fed join(const Fed& o) const;
    Fed subtract(const Fed& o) const;
    bool includes(const Fed& o) const;
    bool intersects(const Fed& o) const;
    bool contains(std::span<const Rational> vals) const;
    bool same_set(const Fed& o) const;  // mutual inclusion

    Fed down() const;  // time predecessors
    Fed up() const;    // time successors
    Fed reset_pre(const std::vector<int>& clocks) const;
    Fed reset_apply(const std::vector<int>& clocks) const;
    Fed complement() const;  // w.r.t. nonnegative valuations

    // Smallest single zone containing the whole federation.
    std::optional<Dbm> hull() const;
    bool is_convex() const;

    // Drop zones covered by the union of the others.
    void reduce_exact();

    int max_constant() const;

    Fed extended(int newdim) const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    int dim_;
    std::vector<Dbm> zones_;

    void reduce_cheap();
};

// One zone minus another, split facet by facet.
std::vector<Dbm> zone_subtract(const Dbm& a, const Dbm& b);

}  // namespace tpg
