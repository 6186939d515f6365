#include "tpg/regions.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace tpg {

std::string RegionKey::to_string(const std::vector<std::string>& names) const {
    std::ostringstream oss;
    for (size_t i = 0; i < ip.size(); ++i) {
        if (i) oss << " ";
        std::string n = i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        oss << n << ":";
        if (rank[i] < 0) {
            oss << "^";  // above cap
        } else {
            oss << (int)ip[i] << (rank[i] == 0 ? "" : "+" + std::to_string((int)rank[i]));
        }
    }
    return oss.str();
}

RegionSystem::RegionSystem(int nclocks, std::vector<int> caps)
    : nclocks_(nclocks), caps_(std::move(caps)) {
    assert((int)caps_.size() == nclocks_);
    enumerate();
}

namespace {

// Per-clock class choice used during enumeration.
struct ClockChoice {
    int8_t ip;     // integer part, or cap+1 for above
    bool frac_pos; // meaningful only when not above
    bool above;
};

// All ordered set partitions of the clocks with positive fraction: every
// rank function onto an initial segment {1..R}.
void enumerate_orderings(const std::vector<int>& fracs, size_t idx,
                         std::vector<int8_t>& rank_of, std::vector<std::vector<int8_t>>& out) {
    if (idx == fracs.size()) {
        int maxr = 0;
        for (int c : fracs) maxr = std::max(maxr, (int)rank_of[c]);
        std::vector<bool> used(maxr + 1, false);
        for (int c : fracs) used[rank_of[c]] = true;
        for (int r = 1; r <= maxr; ++r)
            if (!used[r]) return;
        out.push_back(rank_of);
        return;
    }
    int clock = fracs[idx];
    for (size_t r = 1; r <= fracs.size(); ++r) {
        rank_of[clock] = (int8_t)r;
        enumerate_orderings(fracs, idx + 1, rank_of, out);
    }
    rank_of[clock] = 0;
}

}  // namespace

void RegionSystem::enumerate() {
    // Enumerate per-clock classes, then orderings of the positive fractions.
    std::vector<ClockChoice> choice(nclocks_);
    std::vector<RegionKey> keys;

    std::vector<int> stack;
    auto rec = [&](auto&& self, int c) -> void {
        if (c == nclocks_) {
            std::vector<int> fracs;
            RegionKey k;
            k.ip.resize(nclocks_);
            k.rank.resize(nclocks_);
            for (int i = 0; i < nclocks_; ++i) {
                if (choice[i].above) {
                    k.ip[i] = (int8_t)(caps_[i] + 1);
                    k.rank[i] = -1;
                } else {
                    k.ip[i] = choice[i].ip;
                    k.rank[i] = 0;
                    if (choice[i].frac_pos) fracs.push_back(i);
                }
            }
            if (fracs.empty()) {
                keys.push_back(k);
                return;
            }
            std::vector<std::vector<int8_t>> rankings;
            std::vector<int8_t> rank_of(nclocks_, 0);
            enumerate_orderings(fracs, 0, rank_of, rankings);
            for (const auto& r : rankings) {
                RegionKey k2 = k;
                for (int clock : fracs) k2.rank[clock] = r[clock];
                keys.push_back(k2);
            }
            return;
        }
        for (int ip = 0; ip <= caps_[c]; ++ip) {
            choice[c] = {(int8_t)ip, false, false};
            self(self, c + 1);
            if (ip < caps_[c]) {
                choice[c] = {(int8_t)ip, true, false};
                self(self, c + 1);
            }
        }
        choice[c] = {0, false, true};
        self(self, c + 1);
    };
    rec(rec, 0);
    std::sort(keys.begin(), keys.end());
    all_ = std::move(keys);
}

RegionKey RegionSystem::key_of(std::span<const Rational> vals) const {
    assert((int)vals.size() == nclocks_ + 1);
    RegionKey k;
    k.ip.resize(nclocks_);
    k.rank.resize(nclocks_);
    std::vector<Rational> fracs;
    for (int i = 0; i < nclocks_; ++i) {
        const Rational& v = vals[i + 1];
        if (v > Rational(caps_[i])) {
            k.ip[i] = (int8_t)(caps_[i] + 1);
            k.rank[i] = -1;
        } else {
            long long fl = rational_floor(v);
            k.ip[i] = (int8_t)fl;
            Rational fr = v - Rational(fl);
            if (fr == Rational(0)) {
                k.rank[i] = 0;
            } else {
                k.rank[i] = 1;  // placeholder, fixed below
                fracs.push_back(fr);
            }
        }
    }
    std::sort(fracs.begin(), fracs.end());
    fracs.erase(std::unique(fracs.begin(), fracs.end()), fracs.end());
    for (int i = 0; i < nclocks_; ++i) {
        if (k.rank[i] != 1) continue;
        const Rational& v = vals[i + 1];
        Rational fr = v - Rational(rational_floor(v));
        auto it = std::lower_bound(fracs.begin(), fracs.end(), fr);
        k.rank[i] = (int8_t)(1 + (it - fracs.begin()));
    }
    return k;
}

std::vector<Rational> RegionSystem::representative(const RegionKey& k) const {
    int maxrank = 0;
    for (int i = 0; i < nclocks_; ++i) maxrank = std::max(maxrank, (int)k.rank[i]);
    std::vector<Rational> v(nclocks_ + 1, Rational(0));
    for (int i = 0; i < nclocks_; ++i) {
        if (k.rank[i] < 0) {
            // distinct fractions above the cap, harmless for region-union sets
            v[i + 1] = Rational(caps_[i]) + Rational(1) + Rational(1 + i, nclocks_ + 2);
        } else {
            v[i + 1] = Rational(k.ip[i]) + Rational(k.rank[i], maxrank + 1);
        }
    }
    return v;
}

Dbm RegionSystem::zone_of(const RegionKey& k) const {
    Dbm d = Dbm::universal(nclocks_ + 1);
    bool ok = true;
    for (int i = 0; i < nclocks_; ++i) {
        int xi = i + 1;
        if (k.rank[i] < 0) {
            ok &= d.constrain(0, xi, Bound::strict(-caps_[i]));  // x > cap
            continue;
        }
        if (k.rank[i] == 0) {
            ok &= d.constrain(xi, 0, Bound::weak(k.ip[i]));
            ok &= d.constrain(0, xi, Bound::weak(-k.ip[i]));
        } else {
            ok &= d.constrain(xi, 0, Bound::strict(k.ip[i] + 1));
            ok &= d.constrain(0, xi, Bound::strict(-k.ip[i]));
        }
    }
    for (int i = 0; i < nclocks_; ++i) {
        if (k.rank[i] < 0) continue;
        for (int j = i + 1; j < nclocks_; ++j) {
            if (k.rank[j] < 0) continue;
            int xi = i + 1, xj = j + 1;
            int ipdiff = k.ip[i] - k.ip[j];
            if (k.rank[i] == k.rank[j]) {
                ok &= d.constrain(xi, xj, Bound::weak(ipdiff));
                ok &= d.constrain(xj, xi, Bound::weak(-ipdiff));
            } else if (k.rank[i] < k.rank[j]) {
                ok &= d.constrain(xi, xj, Bound::strict(ipdiff));
            } else {
                ok &= d.constrain(xj, xi, Bound::strict(-ipdiff));
            }
        }
    }
    assert(ok);
    (void)ok;
    return d;
}

bool RegionSystem::is_open(const RegionKey& k) const {
    for (int i = 0; i < nclocks_; ++i)
        if (k.rank[i] == 0) return false;
    return true;
}

RegionKey RegionSystem::successor(const RegionKey& k) const {
    RegionKey s = k;
    bool has_zero = false;
    int maxrank = 0;
    for (int i = 0; i < nclocks_; ++i) {
        if (k.rank[i] == 0) has_zero = true;
        maxrank = std::max(maxrank, (int)k.rank[i]);
    }
    if (has_zero) {
        // clocks at an integer start a new smallest positive fraction
        bool any_staying = false;
        for (int i = 0; i < nclocks_; ++i)
            if (k.rank[i] == 0 && k.ip[i] < caps_[i]) any_staying = true;
        for (int i = 0; i < nclocks_; ++i) {
            if (k.rank[i] < 0) continue;
            if (k.rank[i] == 0) {
                if (k.ip[i] < caps_[i]) {
                    s.rank[i] = 1;
                } else {
                    s.ip[i] = (int8_t)(caps_[i] + 1);
                    s.rank[i] = -1;
                }
            } else if (any_staying) {
                s.rank[i] = (int8_t)(k.rank[i] + 1);
            }
        }
        return s;
    }
    if (maxrank == 0) return s;  // everything above its cap
    // the largest fractions reach the next integer
    for (int i = 0; i < nclocks_; ++i) {
        if (k.rank[i] != maxrank) continue;
        if (k.ip[i] + 1 <= caps_[i]) {
            s.ip[i] = (int8_t)(k.ip[i] + 1);
            s.rank[i] = 0;
        } else {
            s.ip[i] = (int8_t)(caps_[i] + 1);
            s.rank[i] = -1;
        }
    }
    return s;
}

const RegionSystem& RegionSystem::get(int nclocks, const std::vector<int>& caps) {
    static std::map<std::pair<int, std::vector<int>>, RegionSystem> cache;
    auto key = std::make_pair(nclocks, caps);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, RegionSystem(nclocks, caps)).first;
    return it->second;
}

std::vector<RegionKey> enumerate_regions(const Fed& f, const std::vector<int>& caps) {
    const RegionSystem& rs = RegionSystem::get(f.dim() - 1, caps);
    std::vector<RegionKey> out;
    for (const auto& k : rs.all()) {
        auto rep = rs.representative(k);
        if (f.contains(rep)) out.push_back(k);
    }
    return out;
}

RegionKey region_key_mod_z(std::span<const Rational> vals, const std::vector<int>& caps,
                           int z_index) {
    std::vector<Rational> v(vals.begin(), vals.end());
    v[z_index] = rational_frac(v[z_index]);
    const RegionSystem& rs = RegionSystem::get((int)v.size() - 1, caps);
    return rs.key_of(v);
}

}  // namespace tpg
