#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace conekit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Canonical serialization: reduced "p/q", denominator always present,
// sign on the numerator. Used everywhere a rational leaves the process.
inline std::string to_string(const Rat& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

// Accepts "p/q", plain integers, and decimal/scientific literals
// ("0.5", "1e-6", "-2.25e3"). Everything is converted exactly.
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
        return Rat(p, q);
    }
    // decimal / scientific form
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') { neg = (s[i] == '-'); ++i; }
    Int mant = 0;
    long frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    long exp10 = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mant = mant * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            exp10 = std::stol(s.substr(i + 1));
            break;
        } else {
            throw std::invalid_argument("parse_rational: bad literal '" + s + "'");
        }
    }
    if (!seen_digit) throw std::invalid_argument("parse_rational: bad literal '" + s + "'");
    if (neg) mant = -mant;
    Rat r(mant);
    long e = exp10 - frac_digits;
    Int pow10 = boost::multiprecision::pow(Int(10), static_cast<unsigned>(e < 0 ? -e : e));
    if (e >= 0) r *= Rat(pow10);
    else r /= Rat(pow10);
    return r;
}

inline Int factorial(unsigned n) {
    Int f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline Int floor_rat(const Rat& r) {
    Int p = boost::multiprecision::numerator(r);
    Int q = boost::multiprecision::denominator(r);
    Int d = p / q;
    if (p < 0 && d * q != p) --d;
    return d;
}

inline Int ceil_rat(const Rat& r) {
    Int p = boost::multiprecision::numerator(r);
    Int q = boost::multiprecision::denominator(r);
    Int d = p / q;
    if (p > 0 && d * q != p) ++d;
    return d;
}

inline Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Integer square root (floor), for proxy thresholds like ceil(sqrt(H)).
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    if (n < 2) return n;
    Int x = n, y = (x + 1) / 2;
    while (y < x) { x = y; y = (x + n / x) / 2; }
    return x;
}

// Approximate double view, for human-readable summaries only.
inline double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace conekit
