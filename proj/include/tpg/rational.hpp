#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace tpg {

using Rational = boost::rational<long long>;

inline long long rational_floor(const Rational& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

inline Rational rational_frac(const Rational& r) {
    return r - Rational(rational_floor(r));
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace tpg
