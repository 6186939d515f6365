#include "tpg/model.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

#include "tpg/regions.hpp"

namespace tpg {

std::optional<int> TGA::location_id(const std::string& name) const {
    for (const auto& l : locations)
        if (l.name == name) return l.id;
    return std::nullopt;
}

std::optional<int> TGA::action_id(const std::string& name) const {
    for (size_t i = 0; i < actions.size(); ++i)
        if (actions[i].name == name) return (int)i;
    return std::nullopt;
}

std::vector<int> TGA::edges_from(int loc) const {
    std::vector<int> out;
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].src == loc) out.push_back((int)i);
    return out;
}

namespace {

// Splits a line into tokens; a token may carry a quoted value after '='.
std::vector<std::pair<std::string, int>> tokenize_line(const std::string& line, int lineno) {
    std::vector<std::pair<std::string, int>> toks;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace((unsigned char)line[i])) ++i;
        if (i >= line.size()) break;
        size_t start = i;
        std::string tok;
        bool in_quote = false;
        while (i < line.size() && (in_quote || !std::isspace((unsigned char)line[i]))) {
            char c = line[i];
            if (c == '"') {
                in_quote = !in_quote;
            } else {
                tok += c;
            }
            ++i;
        }
        if (in_quote) throw ParseError("unterminated quote", lineno, (int)start + 1);
        toks.emplace_back(tok, (int)start + 1);
    }
    return toks;
}

bool valid_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha((unsigned char)s[0]) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum((unsigned char)c) && c != '_') return false;
    return true;
}

struct KeyVal {
    std::string key;
    std::string val;
    bool ok = false;
};

KeyVal split_keyval(const std::string& tok) {
    auto eq = tok.find('=');
    KeyVal kv;
    if (eq == std::string::npos) return kv;
    kv.key = tok.substr(0, eq);
    kv.val = tok.substr(eq + 1);
    kv.ok = true;
    return kv;
}

}  // namespace

TGA parse_arena(const std::string& text) {
    TGA g;
    std::map<std::string, int> clock_ids;  // name -> model id (1..n)
    bool have_maxcolor = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::tuple<std::vector<std::pair<std::string, int>>, int>> edge_lines;

    auto parse_guard_at = [&](const std::string& s, int ln, int col) {
        return parse_guard(s, clock_ids, ln, col);
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize_line(line, lineno);
        if (toks.empty() || toks[0].first[0] == '#') continue;
        const std::string& kw = toks[0].first;
        if (kw == "clocks") {
            for (size_t i = 1; i < toks.size(); ++i) {
                const std::string& n = toks[i].first;
                if (!valid_ident(n)) throw ParseError("bad clock name '" + n + "'", lineno, toks[i].second);
                if (n == "z") throw ParseError("reserved clock 'z'", lineno, toks[i].second);
                if (clock_ids.count(n)) throw ParseError("duplicate clock '" + n + "'", lineno, toks[i].second);
                g.clock_names.push_back(n);
                clock_ids[n] = (int)g.clock_names.size();
            }
        } else if (kw == "actions0" || kw == "actions1") {
            int owner = (kw == "actions1") ? 1 : 0;
            for (size_t i = 1; i < toks.size(); ++i) {
                const std::string& n = toks[i].first;
                if (!valid_ident(n)) throw ParseError("bad action name '" + n + "'", lineno, toks[i].second);
                if (g.action_id(n)) throw ParseError("duplicate action '" + n + "'", lineno, toks[i].second);
                g.actions.push_back({n, owner});
            }
        } else if (kw == "maxcolor") {
            if (toks.size() != 2) throw ParseError("maxcolor takes one integer", lineno, toks[0].second);
            g.max_color = std::stoi(toks[1].first);
            have_maxcolor = true;
        } else if (kw == "loc") {
            if (toks.size() < 2) throw ParseError("loc needs a name", lineno, toks[0].second);
            Location l;
            l.name = toks[1].first;
            if (!valid_ident(l.name)) throw ParseError("bad location name '" + l.name + "'", lineno, toks[1].second);
            if (g.location_id(l.name)) throw ParseError("duplicate location '" + l.name + "'", lineno, toks[1].second);
            l.id = (int)g.locations.size();
            bool have_color = false;
            for (size_t i = 2; i < toks.size(); ++i) {
                KeyVal kv = split_keyval(toks[i].first);
                if (!kv.ok) throw ParseError("expected key=value, got '" + toks[i].first + "'", lineno, toks[i].second);
                if (kv.key == "color") {
                    l.color = std::stoi(kv.val);
                    have_color = true;
                } else if (kv.key == "inv") {
                    l.inv = parse_guard_at(kv.val, lineno, toks[i].second);
                } else if (kv.key == "urg0") {
                    l.urg0 = parse_guard_at(kv.val, lineno, toks[i].second);
                } else if (kv.key == "urg1") {
                    l.urg1 = parse_guard_at(kv.val, lineno, toks[i].second);
                } else {
                    throw ParseError("unknown key '" + kv.key + "'", lineno, toks[i].second);
                }
            }
            if (!have_color) throw ParseError("loc needs color=", lineno, toks[0].second);
            g.locations.push_back(std::move(l));
        } else if (kw == "edge") {
            edge_lines.emplace_back(toks, lineno);
        } else {
            throw ParseError("unknown directive '" + kw + "'", lineno, toks[0].second);
        }
    }

    // edges are resolved after all locations exist (forward references)
    for (auto& [toks, ln] : edge_lines) {
        if (toks.size() < 4) throw ParseError("edge needs SRC ACTION [opts] DST", ln, toks[0].second);
        Edge e;
        auto src = g.location_id(toks[1].first);
        if (!src) throw ParseError("unknown location '" + toks[1].first + "'", ln, toks[1].second);
        e.src = *src;
        auto act = g.action_id(toks[2].first);
        if (!act) throw ParseError("unknown action '" + toks[2].first + "'", ln, toks[2].second);
        e.action = *act;
        auto dst = g.location_id(toks.back().first);
        if (!dst) throw ParseError("unknown location '" + toks.back().first + "'", ln, toks.back().second);
        e.dst = *dst;
        for (size_t i = 3; i + 1 < toks.size(); ++i) {
            KeyVal kv = split_keyval(toks[i].first);
            if (!kv.ok) throw ParseError("expected key=value, got '" + toks[i].first + "'", ln, toks[i].second);
            if (kv.key == "guard") {
                e.guard = parse_guard_at(kv.val, ln, toks[i].second);
            } else if (kv.key == "reset") {
                std::istringstream rs(kv.val);
                std::string part;
                while (std::getline(rs, part, ',')) {
                    if (part == "z") throw ParseError("reserved clock 'z' cannot be reset", ln, toks[i].second);
                    auto it = clock_ids.find(part);
                    if (it == clock_ids.end()) throw ParseError("unknown clock '" + part + "'", ln, toks[i].second);
                    e.resets.push_back(it->second);
                }
                std::sort(e.resets.begin(), e.resets.end());
                e.resets.erase(std::unique(e.resets.begin(), e.resets.end()), e.resets.end());
            } else {
                throw ParseError("unknown key '" + kv.key + "'", ln, toks[i].second);
            }
        }
        g.edges.push_back(std::move(e));
    }

    if (g.locations.empty()) throw ParseError("no locations", lineno ? lineno : 1, 1);
    if (!have_maxcolor)
        for (const auto& l : g.locations) g.max_color = std::max(g.max_color, l.color);
    for (const auto& l : g.locations)
        if (l.color > g.max_color)
            throw ParseError("color of '" + l.name + "' exceeds maxcolor", 1, 1);

    // compile all guards once
    int dim = g.dim();
    for (auto& l : g.locations) {
        l.inv_fed = guard_to_fed(l.inv, dim);
        l.urg0_fed = guard_to_fed(l.urg0, dim);
        l.urg1_fed = guard_to_fed(l.urg1, dim);
    }
    for (auto& e : g.edges) e.guard_fed = guard_to_fed(e.guard, dim);
    return g;
}

std::string serialize_arena(const TGA& g) {
    std::ostringstream oss;
    if (!g.clock_names.empty()) {
        oss << "clocks";
        for (const auto& c : g.clock_names) oss << " " << c;
        oss << "\n";
    }
    std::vector<std::string> a0, a1;
    for (const auto& a : g.actions) (a.owner == 0 ? a0 : a1).push_back(a.name);
    if (!a0.empty()) {
        oss << "actions0";
        for (const auto& a : a0) oss << " " << a;
        oss << "\n";
    }
    if (!a1.empty()) {
        oss << "actions1";
        for (const auto& a : a1) oss << " " << a;
        oss << "\n";
    }
    oss << "maxcolor " << g.max_color << "\n";
    for (const auto& l : g.locations) {
        oss << "loc " << l.name << " color=" << l.color
            << " inv=" << guard_to_string(l.inv, g.clock_names);
        if (!l.urg0.is_false()) oss << " urg0=" << guard_to_string(l.urg0, g.clock_names);
        if (!l.urg1.is_false()) oss << " urg1=" << guard_to_string(l.urg1, g.clock_names);
        oss << "\n";
    }
    for (const auto& e : g.edges) {
        oss << "edge " << g.locations[e.src].name << " " << g.action_name(e.action);
        if (!e.guard.is_true()) oss << " guard=" << guard_to_string(e.guard, g.clock_names);
        if (!e.resets.empty()) {
            oss << " reset=";
            for (size_t i = 0; i < e.resets.size(); ++i) {
                if (i) oss << ",";
                oss << g.clock_names[e.resets[i] - 1];
            }
        }
        oss << " " << g.locations[e.dst].name << "\n";
    }
    return oss.str();
}

std::map<int, int> max_constants(const TGA& g) {
    std::map<int, int> mc;
    mc[kClockZ] = 1;
    for (int c = 1; c <= g.nclocks(); ++c) {
        int m = 0;
        for (const auto& l : g.locations) {
            m = std::max(m, guard_max_constant(l.inv, c));
            m = std::max(m, guard_max_constant(l.urg0, c));
            m = std::max(m, guard_max_constant(l.urg1, c));
        }
        for (const auto& e : g.edges) m = std::max(m, guard_max_constant(e.guard, c));
        mc[c] = m;
    }
    return mc;
}

std::vector<int> clock_caps(const TGA& g) {
    auto mc = max_constants(g);
    std::vector<int> caps(g.nclocks());
    for (int c = 1; c <= g.nclocks(); ++c) caps[c - 1] = mc[c];
    return caps;
}

TGA gen_benchmark(int n, BenchmarkVariant variant) {
    if (n < 1) throw std::invalid_argument("benchmark size must be >= 1");
    std::ostringstream oss;
    oss << "clocks x\n";
    oss << "actions0 c_t";
    for (int i = 1; i <= n; ++i) oss << " c_a" << i;
    oss << "\n";
    oss << "actions1 e_b";
    for (int i = 1; i <= n; ++i) oss << " e_a" << i;
    for (int i = 1; i <= n; ++i) oss << " e_s" << i;
    oss << "\n";
    oss << "maxcolor 3\n";
    std::string inv_a, inv_t;
    switch (variant) {
        case BenchmarkVariant::depicted:
            inv_a = "x<1";
            inv_t = "x<" + std::to_string(n);
            break;
        case BenchmarkVariant::inv_lt_1:
            inv_a = "x<1";
            inv_t = "x<1";
            break;
        case BenchmarkVariant::inv_lt_n:
            inv_a = "x<" + std::to_string(n);
            inv_t = "x<" + std::to_string(n);
            break;
    }
    for (int i = 1; i <= n; ++i) {
        oss << "loc a" << i << " color=0 inv=" << inv_a << "\n";
        oss << "loc b" << i << " color=1 inv=true\n";
        oss << "loc s" << i << " color=2 inv=true\n";
    }
    oss << "loc t color=3 inv=" << inv_t << "\n";
    for (int i = 1; i <= n; ++i) {
        oss << "edge a" << i << " e_b b" << i << "\n";
        oss << "edge b" << i << " e_b a" << i << "\n";
        for (int j = 1; j <= n; ++j) {
            if (j != i) oss << "edge a" << i << " e_a" << j << " reset=x a" << j << "\n";
            oss << "edge a" << i << " e_s" << j << " reset=x s" << j << "\n";
            oss << "edge s" << i << " e_s" << j << " reset=x s" << j << "\n";
        }
        oss << "edge s" << i << " c_t guard=0<x<1 t\n";
        oss << "edge t c_a" << i << " reset=x a" << i << "\n";
    }
    return parse_arena(oss.str());
}

std::optional<BenchmarkVariant> benchmark_variant_of(const std::string& name) {
    if (name == "depicted") return BenchmarkVariant::depicted;
    if (name == "inv_lt_1") return BenchmarkVariant::inv_lt_1;
    if (name == "inv_lt_n") return BenchmarkVariant::inv_lt_n;
    return std::nullopt;
}

std::string benchmark_variant_name(BenchmarkVariant v) {
    switch (v) {
        case BenchmarkVariant::depicted: return "depicted";
        case BenchmarkVariant::inv_lt_1: return "inv_lt_1";
        case BenchmarkVariant::inv_lt_n: return "inv_lt_n";
    }
    return "?";
}

std::vector<std::string> validate_arena(const TGA& g) {
    std::vector<std::string> diags;
    if (g.locations.empty()) {
        diags.push_back("no locations");
        return diags;
    }
    for (const auto& l : g.locations) {
        if (l.color > g.max_color)
            diags.push_back("color of location '" + l.name + "' exceeds maxcolor");
        if (l.inv_fed.is_empty())
            diags.push_back("invariant of location '" + l.name + "' is unsatisfiable");
    }
    for (const auto& e : g.edges) {
        if (e.src < 0 || e.src >= (int)g.locations.size() || e.dst < 0 ||
            e.dst >= (int)g.locations.size())
            diags.push_back("edge endpoint out of range");
    }
    if (!diags.empty()) return diags;

    // Deadlock freedom, region by region: from every region inside the
    // invariant, either time can diverge or some regular action fires before
    // the invariant closes.
    std::vector<int> caps = clock_caps(g);
    const RegionSystem& rs = RegionSystem::get(g.nclocks(), caps);
    for (const auto& l : g.locations) {
        auto edges = g.edges_from(l.id);
        for (const auto& r0 : rs.all()) {
            auto rep0 = rs.representative(r0);
            if (!l.inv_fed.contains(rep0)) continue;
            // walk the time-successor chain
            bool action_found = false;
            bool diverges = false;
            RegionKey r = r0;
            std::string last_desc;
            for (int steps = 0; steps < (int)rs.all().size() + 2; ++steps) {
                auto rep = rs.representative(r);
                if (!l.inv_fed.contains(rep)) break;
                last_desc = r.to_string(g.clock_names);
                for (int ei : edges) {
                    const Edge& e = g.edges[ei];
                    if (!e.guard_fed.contains(rep)) continue;
                    auto tv = rep;
                    for (int c : e.resets) tv[c] = Rational(0);
                    if (!g.locations[e.dst].inv_fed.contains(tv)) continue;
                    // the owner must be able to wait up to this region
                    // without crossing its own no-wait set
                    bool blocked = false;
                    RegionKey w = r0;
                    const Fed& urg = g.action_owner(e.action) == 0 ? l.urg0_fed : l.urg1_fed;
                    for (int s2 = 0; s2 < (int)rs.all().size() + 2 && !(w == r); ++s2) {
                        if (urg.contains(rs.representative(w))) {
                            blocked = true;
                            break;
                        }
                        w = rs.successor(w);
                    }
                    if (!blocked) {
                        action_found = true;
                        break;
                    }
                }
                if (action_found) break;
                RegionKey nxt = rs.successor(r);
                if (nxt == r) {
                    diverges = true;
                    break;
                }
                r = nxt;
            }
            if (!action_found && !diverges) {
                diags.push_back("deadlock: location '" + l.name + "', region " +
                                r0.to_string(g.clock_names) + " (time blocked after " +
                                last_desc + ", no action enabled)");
            }
        }
    }
    return diags;
}

}  // namespace tpg
