#include "tpg/augment.hpp"

#include <cassert>
#include <deque>
#include <sstream>

#include "tpg/semantics.hpp"

namespace tpg {

namespace {

struct Builder {
    const TGA& g;
    AugTGA aug;
    std::map<std::tuple<int, int, int>, int> index;
    std::deque<int> work;

    explicit Builder(const TGA& g) : g(g) {}

    int get_loc(int q, int c, int b) {
        auto key = std::make_tuple(q, c, b);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = (int)aug.locs.size();
        aug.locs.push_back({q, c, b});
        index[key] = id;
        work.push_back(id);
        return id;
    }
};

}  // namespace

int AugTGA::loc_index(int q, int c, int b) const {
    for (size_t i = 0; i < locs.size(); ++i)
        if (locs[i].base == q && locs[i].c == c && locs[i].b == b) return (int)i;
    return -1;
}

std::string AugTGA::loc_name(int idx) const {
    const AugLocation& l = locs[idx];
    std::string b = l.b == kBlameNoneLoc ? "n" : std::to_string(l.b);
    return base.locations[l.base].name + "@" + std::to_string(l.c) + "@" + b;
}

AugTGA augment(const TGA& g) {
    Builder bld(g);
    AugTGA& aug = bld.aug;
    aug.base = g;
    int n = g.nclocks();
    int dim = n + 2;
    int z = n + 1;

    aug.clock_names = g.clock_names;
    aug.clock_names.push_back("z");
    aug.caps = clock_caps(g);
    aug.caps.push_back(1);

    for (const auto& l : g.locations)
        aug.initial.push_back(bld.get_loc(l.id, l.color, kBlameNoneLoc));

    Dbm z_lt_1 = Dbm::universal(dim);
    bool ok = z_lt_1.constrain(z, 0, Bound::strict(1));
    Dbm z_eq_1 = Dbm::universal(dim);
    ok &= z_eq_1.constrain(z, 0, Bound::weak(1)) && z_eq_1.constrain(0, z, Bound::weak(-1));
    assert(ok);
    (void)ok;

    while (!bld.work.empty()) {
        int id = bld.work.front();
        bld.work.pop_front();
        AugLocation al = aug.locs[id];
        const Location& bl = g.locations[al.base];

        // tick: forced z reset once z hits 1, the max-color memory restarts
        {
            AugEdge e;
            e.kind = AugEdge::Kind::Tick;
            e.src = id;
            e.dst = bld.get_loc(al.base, bl.color, al.b);
            e.owner = 2;
            e.guard = Fed(z_eq_1);
            e.resets = {z};
            aug.edges.push_back(std::move(e));
        }
        // regular edges carry z<1 and rewrite color memory and blame
        for (int ei : g.edges_from(al.base)) {
            const Edge& be = g.edges[ei];
            int owner = g.action_owner(be.action);
            int tc = std::max(al.c, g.locations[be.dst].color);
            AugEdge e;
            e.kind = AugEdge::Kind::Regular;
            e.src = id;
            e.dst = bld.get_loc(be.dst, tc, owner);
            e.action = be.action;
            e.owner = owner;
            e.guard = be.guard_fed.extended(dim).meet(Fed(z_lt_1));
            e.resets = be.resets;  // user clock ids coincide with DBM indices
            if (!e.guard.is_empty()) aug.edges.push_back(std::move(e));
        }
        // immediate-wait loops flip the blame; pure delays never take them
        for (int p = 0; p < 2; ++p) {
            AugEdge e;
            e.kind = AugEdge::Kind::WaitLoop;
            e.src = id;
            e.dst = bld.get_loc(al.base, al.c, p);
            e.owner = p;
            e.guard = Fed(z_lt_1);
            aug.edges.push_back(std::move(e));
        }
    }

    aug.out_edges.assign(aug.locs.size(), {});
    for (size_t i = 0; i < aug.edges.size(); ++i)
        aug.out_edges[aug.edges[i].src].push_back((int)i);

    Dbm z_le_1 = Dbm::universal(dim);
    ok = z_le_1.constrain(z, 0, Bound::weak(1));
    assert(ok);
    for (const auto& al : aug.locs) {
        const Location& bl = g.locations[al.base];
        aug.inv.push_back(bl.inv_fed.extended(dim).meet(Fed(z_le_1)));
        aug.urg0.push_back(bl.urg0_fed.extended(dim));
        aug.urg1.push_back(bl.urg1_fed.extended(dim));
    }
    return aug;
}

int beta_color(const AugLocation& l, bool at_tick) {
    if (at_tick) return l.c + 2;
    if (l.b == kBlameNoneLoc) return 0;
    return 1 - l.b;
}

SymStateSet color_set(const AugTGA& aug, int k) {
    int dim = aug.dim();
    int z = aug.z_index();
    Dbm z_eq_1 = Dbm::universal(dim);
    bool ok = z_eq_1.constrain(z, 0, Bound::weak(1)) && z_eq_1.constrain(0, z, Bound::weak(-1));
    Dbm z_lt_1 = Dbm::universal(dim);
    ok &= z_lt_1.constrain(z, 0, Bound::strict(1));
    assert(ok);
    (void)ok;

    SymStateSet out(aug.locs.size(), Fed(dim));
    for (size_t i = 0; i < aug.locs.size(); ++i) {
        const AugLocation& l = aug.locs[i];
        if (k >= 2) {
            if (l.c == k - 2) out[i] = aug.inv[i].meet(Fed(z_eq_1));
        } else {
            int want_b = 1 - k;
            bool match = l.b == want_b || (k == 0 && l.b == kBlameNoneLoc);
            if (match) out[i] = aug.inv[i].meet(Fed(z_lt_1));
        }
    }
    return out;
}

std::string serialize_augmented(const AugTGA& aug) {
    std::ostringstream oss;
    oss << "clocks";
    for (const auto& c : aug.clock_names) oss << " " << c;
    oss << "\n";
    oss << "# colors are the state colors for z<1; ticks at z=1 see c+2\n";
    oss << "maxcolor " << aug.base.max_color + 2 << "\n";
    for (size_t i = 0; i < aug.locs.size(); ++i) {
        oss << "loc " << aug.loc_name((int)i) << " color=" << beta_color(aug.locs[i], false)
            << " inv=\"" << aug.inv[i].to_string(aug.clock_names) << "\"\n";
    }
    for (const auto& e : aug.edges) {
        const char* an = e.kind == AugEdge::Kind::Tick ? "tick"
                         : e.kind == AugEdge::Kind::WaitLoop
                             ? (e.owner == 0 ? "wait0" : "wait1")
                             : aug.base.action_name(e.action).c_str();
        oss << "edge " << aug.loc_name(e.src) << " " << an << " guard=\""
            << e.guard.to_string(aug.clock_names) << "\"";
        if (!e.resets.empty()) {
            oss << " reset=";
            for (size_t i = 0; i < e.resets.size(); ++i) {
                if (i) oss << ",";
                oss << aug.clock_names[e.resets[i] - 1];
            }
        }
        oss << " " << aug.loc_name(e.dst) << "\n";
    }
    return oss.str();
}

}  // namespace tpg
