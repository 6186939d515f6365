#include "tpg/guard.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

namespace tpg {

namespace {

struct GuardParser {
    const std::string& s;
    size_t pos = 0;
    const std::map<std::string, int>& clocks;
    int line;
    int col0;

    GuardParser(const std::string& s, const std::map<std::string, int>& clocks, int line, int col0)
        : s(s), clocks(clocks), line(line), col0(col0) {}

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, line, col0 + (int)pos);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool eat(const std::string& tok) {
        skip_ws();
        if (s.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }

    bool peek_cmp() {
        skip_ws();
        return pos < s.size() && (s[pos] == '<' || s[pos] == '>' || s[pos] == '=');
    }

    // returns one of "<", "<=", "=", ">=", ">"
    std::string read_cmp() {
        skip_ws();
        if (pos >= s.size()) fail("expected comparison operator");
        char c = s[pos];
        if (c == '=') {
            ++pos;
            return "=";
        }
        if (c == '<' || c == '>') {
            ++pos;
            if (pos < s.size() && s[pos] == '=') {
                ++pos;
                return std::string(1, c) + "=";
            }
            return std::string(1, c);
        }
        fail("expected comparison operator");
    }

    int read_int() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (start == pos) fail("expected integer literal");
        return std::stoi(s.substr(start, pos - start));
    }

    std::string read_ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
        if (start == pos) fail("expected identifier");
        return s.substr(start, pos - start);
    }

    int resolve(const std::string& name) {
        auto it = clocks.find(name);
        if (it == clocks.end()) fail("unknown clock '" + name + "'");
        return it->second;
    }

    Guard parse_or() {
        Guard g = parse_and();
        while (eat("||")) g = Guard::disj(std::move(g), parse_and());
        return g;
    }

    Guard parse_and() {
        Guard g = parse_unary();
        while (eat("&&")) g = Guard::conj(std::move(g), parse_unary());
        return g;
    }

    Guard parse_unary() {
        skip_ws();
        if (eat("!")) return Guard::negate(parse_unary());
        if (eat("(")) {
            Guard g = parse_or();
            if (!eat(")")) fail("expected ')'");
            return g;
        }
        return parse_atom();
    }

    Interval make_interval(const std::string& cmp, int c) {
        Interval iv;
        if (cmp == "<") {
            iv.hi = c;
            iv.hi_strict = true;
            iv.hi_inf = false;
        } else if (cmp == "<=") {
            iv.hi = c;
            iv.hi_inf = false;
        } else if (cmp == "=") {
            iv.lo = c;
            iv.hi = c;
            iv.hi_inf = false;
        } else if (cmp == ">=") {
            iv.lo = c;
        } else {  // ">"
            iv.lo = c;
            iv.lo_strict = true;
        }
        return iv;
    }

    Guard parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("expected guard atom");
        if (std::isdigit((unsigned char)s[pos])) {
            // INT CMP ID CMP INT
            int lo = read_int();
            std::string c1 = read_cmp();
            std::string name = read_ident();
            std::string c2 = read_cmp();
            int hi = read_int();
            if ((c1 != "<" && c1 != "<=") || (c2 != "<" && c2 != "<="))
                fail("two-sided atoms use < or <=");
            Interval iv;
            iv.lo = lo;
            iv.lo_strict = (c1 == "<");
            iv.hi = hi;
            iv.hi_strict = (c2 == "<");
            iv.hi_inf = false;
            if (iv.empty()) fail("empty interval in atom");
            return Guard::atom(resolve(name), iv);
        }
        std::string name = read_ident();
        if (name == "true") return Guard::tt();
        if (name == "false") return Guard::ff();
        std::string cmp = read_cmp();
        int c = read_int();
        Interval iv = make_interval(cmp, c);
        if (iv.empty()) fail("empty interval in atom");
        return Guard::atom(resolve(name), iv);
    }
};

Fed atom_fed(int clock, const Interval& iv, int dim) {
    Dbm z = Dbm::universal(dim);
    bool ok = true;
    ok &= z.constrain(0, clock, Bound::make(-iv.lo, iv.lo_strict));
    if (!iv.hi_inf) ok &= z.constrain(clock, 0, Bound::make(iv.hi, iv.hi_strict));
    if (!ok) return Fed::empty(dim);
    return Fed(z);
}

Fed atom_fed_neg(int clock, const Interval& iv, int dim) {
    // complement of an interval: below the lower bound or above the upper
    Fed r = Fed::empty(dim);
    if (iv.lo > 0 || iv.lo_strict) {
        Dbm z = Dbm::universal(dim);
        if (z.constrain(clock, 0, Bound::make(iv.lo, !iv.lo_strict))) r.add(z);
    }
    if (!iv.hi_inf) {
        Dbm z = Dbm::universal(dim);
        if (z.constrain(0, clock, Bound::make(-iv.hi, !iv.hi_strict))) r.add(z);
    }
    return r;
}

Fed to_fed(const Guard& g, int dim, bool neg) {
    switch (g.kind) {
        case Guard::Kind::True:
            return neg ? Fed::empty(dim) : Fed::universal(dim);
        case Guard::Kind::False:
            return neg ? Fed::universal(dim) : Fed::empty(dim);
        case Guard::Kind::Atom:
            return neg ? atom_fed_neg(g.clock, g.iv, dim) : atom_fed(g.clock, g.iv, dim);
        case Guard::Kind::Not:
            return to_fed(g.kids[0], dim, !neg);
        case Guard::Kind::And: {
            Fed r = to_fed(g.kids[0], dim, neg);
            for (size_t i = 1; i < g.kids.size(); ++i) {
                Fed k = to_fed(g.kids[i], dim, neg);
                r = neg ? r.join(k) : r.meet(k);
            }
            return r;
        }
        case Guard::Kind::Or: {
            Fed r = to_fed(g.kids[0], dim, neg);
            for (size_t i = 1; i < g.kids.size(); ++i) {
                Fed k = to_fed(g.kids[i], dim, neg);
                r = neg ? r.meet(k) : r.join(k);
            }
            return r;
        }
    }
    assert(false);
    return Fed::empty(dim);
}

}  // namespace

Guard parse_guard(const std::string& text, const std::map<std::string, int>& clocks, int line,
                  int col0) {
    GuardParser p(text, clocks, line, col0);
    Guard g = p.parse_or();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input after guard");
    return g;
}

std::string guard_to_string(const Guard& g, const std::vector<std::string>& clock_names) {
    auto name = [&](int c) -> std::string {
        if (c >= 1 && c <= (int)clock_names.size()) return clock_names[c - 1];
        return "x" + std::to_string(c);
    };
    switch (g.kind) {
        case Guard::Kind::True:
            return "true";
        case Guard::Kind::False:
            return "false";
        case Guard::Kind::Atom: {
            const Interval& iv = g.iv;
            std::ostringstream oss;
            bool has_lo = iv.lo > 0 || iv.lo_strict;
            if (!iv.hi_inf && has_lo && !(iv.lo == iv.hi)) {
                oss << iv.lo << (iv.lo_strict ? "<" : "<=") << name(g.clock)
                    << (iv.hi_strict ? "<" : "<=") << iv.hi;
            } else if (!iv.hi_inf && iv.lo == iv.hi && !iv.lo_strict && !iv.hi_strict) {
                oss << name(g.clock) << "=" << iv.lo;
            } else if (!iv.hi_inf && !has_lo) {
                oss << name(g.clock) << (iv.hi_strict ? "<" : "<=") << iv.hi;
            } else {
                oss << name(g.clock) << (iv.lo_strict ? ">" : ">=") << iv.lo;
            }
            return oss.str();
        }
        case Guard::Kind::Not:
            return "!(" + guard_to_string(g.kids[0], clock_names) + ")";
        case Guard::Kind::And: {
            std::string r;
            for (size_t i = 0; i < g.kids.size(); ++i) {
                if (i) r += "&&";
                bool paren = g.kids[i].kind == Guard::Kind::Or;
                r += paren ? "(" + guard_to_string(g.kids[i], clock_names) + ")"
                           : guard_to_string(g.kids[i], clock_names);
            }
            return r;
        }
        case Guard::Kind::Or: {
            std::string r;
            for (size_t i = 0; i < g.kids.size(); ++i) {
                if (i) r += "||";
                r += guard_to_string(g.kids[i], clock_names);
            }
            return r;
        }
    }
    return "?";
}

Fed guard_to_fed(const Guard& g, int dim) { return to_fed(g, dim, false); }

int guard_max_constant(const Guard& g, int clock) {
    switch (g.kind) {
        case Guard::Kind::Atom: {
            if (g.clock != clock) return 0;
            int m = g.iv.lo;
            if (!g.iv.hi_inf && g.iv.hi > m) m = g.iv.hi;
            return m;
        }
        case Guard::Kind::And:
        case Guard::Kind::Or:
        case Guard::Kind::Not: {
            int m = 0;
            for (const auto& k : g.kids) m = std::max(m, guard_max_constant(k, clock));
            return m;
        }
        default:
            return 0;
    }
}

}  // namespace tpg
