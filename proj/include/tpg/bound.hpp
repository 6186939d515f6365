#pragma once

#include <cstdint>
#include <string>

namespace tpg {

// A bound on a clock difference: value + strictness, encoded in one integer
// so that the natural order of the encoding is the tightness order:
//   (v, <) comes before (v, <=) comes before (v+1, <).
// raw = 2*value + (weak ? 1 : 0).  +infinity is a weak sentinel; a strict
// infinity is not representable on purpose.
class Bound {
public:
    static constexpr int32_t kInfValue = 1 << 28;

    constexpr Bound() : raw_(1) {}  // (0, <=)

    static constexpr Bound make(int32_t value, bool strict) {
        return Bound(2 * value + (strict ? 0 : 1));
    }
    static constexpr Bound strict(int32_t value) { return make(value, true); }
    static constexpr Bound weak(int32_t value) { return make(value, false); }
    static constexpr Bound inf() { return make(kInfValue, false); }
    static constexpr Bound zero() { return make(0, false); }

    constexpr int32_t value() const { return raw_ >> 1; }  // arithmetic shift
    constexpr bool is_strict() const { return (raw_ & 1) == 0; }
    constexpr bool is_inf() const { return value() >= kInfValue; }

    constexpr bool operator==(const Bound& o) const { return raw_ == o.raw_; }
    constexpr bool operator!=(const Bound& o) const { return raw_ != o.raw_; }
    constexpr bool operator<(const Bound& o) const { return raw_ < o.raw_; }
    constexpr bool operator<=(const Bound& o) const { return raw_ <= o.raw_; }

    // Path addition, saturating at infinity.
    constexpr Bound operator+(const Bound& o) const {
        if (is_inf() || o.is_inf()) return inf();
        return make(value() + o.value(), is_strict() || o.is_strict());
    }

    // Negation of the constraint x - y ~ c is y - x ~' -c with flipped
    // strictness.  Undefined for infinity (an infinite bound has no facet).
    constexpr Bound negated() const { return make(-value(), !is_strict()); }

    std::string to_string() const {
        if (is_inf()) return "inf";
        return (is_strict() ? "<" : "<=") + std::to_string(value());
    }

private:
    explicit constexpr Bound(int32_t raw) : raw_(raw) {}
    int32_t raw_;
};

}  // namespace tpg
