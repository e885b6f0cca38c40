// Exact rational arithmetic used everywhere in the library: a thin layer over
// GMP rationals plus the "p/q" string format used by all JSON interfaces.
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace liftgap {

using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                           boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;

inline Rat make_rat(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(num) / Rat(den);
}

/// Formats a rational as "p/q" ("p" when the denominator is 1).
inline std::string rat_to_string(const Rat& r) {
    const Int num = numerator(r);
    const Int den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Parses "p", "p/q", or "-p/q". Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        const Int num(s.substr(0, slash));
        const Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num) / Rat(den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

/// Decimal approximation for report readability; never used in comparisons.
inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

/// Floor of a nonnegative rational as a plain integer (small values only).
inline long long rat_floor_ll(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (r < 0 && q * denominator(r) != numerator(r)) q -= 1;
    return q.convert_to<long long>();
}

inline long long rat_ceil_ll(const Rat& r) {
    const long long f = rat_floor_ll(r);
    return Rat(f) == r ? f : f + 1;
}

}  // namespace liftgap
