#pragma once

#include "conekit/rational.hpp"

#include <optional>
#include <stdexcept>

namespace conekit {

// Closed rational interval [lo, hi] enclosing a (typically irrational) value.
struct RatInterval {
    Rat lo, hi;
    Rat width() const { return hi - lo; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};

namespace detail {

// 2 * atanh(t) = 2 * sum t^(2k+1)/(2k+1), for |t| < 1.
// Tail after K terms is bounded by t^(2K+1)/((2K+1)(1-t^2)).
inline RatInterval two_atanh(const Rat& t, unsigned terms) {
    Rat t2 = t * t;
    Rat pow = t;  // t^(2k+1)
    Rat sum = 0;
    for (unsigned k = 0; k < terms; ++k) {
        sum += pow / Rat(2 * k + 1);
        pow *= t2;
    }
    Rat tail = pow / (Rat(2 * terms + 1) * (Rat(1) - t2));
    return {2 * sum, 2 * (sum + tail)};
}

inline RatInterval log2_enclosure(unsigned terms) {
    // ln 2 = 2 atanh(1/3)
    return two_atanh(Rat(1, 3), terms);
}

}  // namespace detail

// Certified enclosure of ln(x) for rational x > 0. `terms` controls the
// series length; the enclosure shrinks as terms grows.
inline RatInterval log_enclosure(const Rat& x, unsigned terms = 8) {
    if (x <= 0) throw std::invalid_argument("log_enclosure: argument must be positive");
    if (x == 1) return {Rat(0), Rat(0)};
    if (x < 1) {
        RatInterval r = log_enclosure(Rat(1) / x, terms);
        return {-r.hi, -r.lo};
    }
    // Range-reduce: x = 2^e * m with m in [1,2).
    long e = 0;
    Rat m = x;
    while (m >= 2) { m /= 2; ++e; }
    RatInterval ln2 = detail::log2_enclosure(terms);
    RatInterval lnm = detail::two_atanh((m - 1) / (m + 1), terms);
    return {Rat(e) * ln2.lo + lnm.lo, Rat(e) * ln2.hi + lnm.hi};
}

// Refinement loop for comparisons against an enclosure-defined threshold.
// Enclosures of logs of rationals never collapse to a point unless the
// argument is 1, so the loop terminates for the inputs this library builds;
// the depth guard turns pathological ties into "unknown".
constexpr unsigned kMaxLogRefineDepth = 12;

template <typename EnclosureFn>
std::optional<bool> certified_le(const Rat& v, EnclosureFn f) {
    unsigned terms = 8;
    for (unsigned d = 0; d < kMaxLogRefineDepth; ++d, terms *= 2) {
        RatInterval I = f(terms);
        if (v <= I.lo) return true;
        if (v > I.hi) return false;
    }
    return std::nullopt;
}

template <typename EnclosureFn>
std::optional<bool> certified_ge(const Rat& v, EnclosureFn f) {
    unsigned terms = 8;
    for (unsigned d = 0; d < kMaxLogRefineDepth; ++d, terms *= 2) {
        RatInterval I = f(terms);
        if (v >= I.hi) return true;
        if (v < I.lo) return false;
    }
    return std::nullopt;
}

// Decides d in [1/ln n, ln n] for rational d >= 0 and integer n >= 2.
// Both conditions are decided via the same ln(n) enclosure:
//   d >= 1/ln n  <=>  d * ln n >= 1      (ln n > 0 for n >= 2)
//   d <= ln n.
inline std::optional<bool> in_log_window(const Rat& d, unsigned n) {
    if (n < 2) throw std::invalid_argument("in_log_window: n >= 2 required");
    if (d <= 0) return false;  // only the basepoint has distance 0; handled upstream
    unsigned terms = 8;
    for (unsigned depth = 0; depth < kMaxLogRefineDepth; ++depth, terms *= 2) {
        RatInterval L = log_enclosure(Rat(n), terms);
        // lower condition
        std::optional<bool> lower;
        if (d * L.lo >= 1) lower = true;
        else if (d * L.hi < 1) lower = false;
        // upper condition
        std::optional<bool> upper;
        if (d <= L.lo) upper = true;
        else if (d > L.hi) upper = false;
        if (lower && !*lower) return false;
        if (upper && !*upper) return false;
        if (lower && upper) return *lower && *upper;
    }
    return std::nullopt;
}

}  // namespace conekit
