#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tpg/fed.hpp"
#include "tpg/rational.hpp"

namespace tpg {

// One class of the clock equivalence: per clock an integer part (cap+1 means
// "above the cap") and a fractional rank.  Rank 0 means fraction zero; ranks
// 1..R order the distinct positive fractions; -1 marks clocks above their cap
// (they no longer take part in the fractional ordering).
struct RegionKey {
    std::vector<int8_t> ip;
    std::vector<int8_t> rank;

    bool operator==(const RegionKey& o) const { return ip == o.ip && rank == o.rank; }
    bool operator<(const RegionKey& o) const {
        if (ip != o.ip) return ip < o.ip;
        return rank < o.rank;
    }
    std::string to_string(const std::vector<std::string>& names) const;
};

// All regions for a fixed clock set and caps; built once and cached.
class RegionSystem {
public:
    RegionSystem(int nclocks, std::vector<int> caps);

    int nclocks() const { return nclocks_; }
    const std::vector<int>& caps() const { return caps_; }
    const std::vector<RegionKey>& all() const { return all_; }

    RegionKey key_of(std::span<const Rational> vals) const;  // vals[0] = 0 ref
    // A concrete point of the region, index 0 holding the zero reference.
    std::vector<Rational> representative(const RegionKey& k) const;
    Dbm zone_of(const RegionKey& k) const;
    // The region entered when time flows out of k; k itself for the
    // all-above-caps class.
    RegionKey successor(const RegionKey& k) const;
    // True iff every point of the region has positive dwell time.
    bool is_open(const RegionKey& k) const;

    static const RegionSystem& get(int nclocks, const std::vector<int>& caps);

private:
    int nclocks_;
    std::vector<int> caps_;
    std::vector<RegionKey> all_;

    void enumerate();
};

// The regions intersecting f, in enumeration order.
std::vector<RegionKey> enumerate_regions(const Fed& f, const std::vector<int>& caps);

// Clock equivalence used on concrete plays: the clock at index z_index is
// compared through its fractional part only (its integer part is ignored).
RegionKey region_key_mod_z(std::span<const Rational> vals, const std::vector<int>& caps,
                           int z_index);

}  // namespace tpg
