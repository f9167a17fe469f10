#pragma once

#include "conekit/gh.hpp"
#include "conekit/log_enclosure.hpp"
#include "conekit/metric_space.hpp"
#include "conekit/rational.hpp"
#include "conekit/verdict.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conekit {

// X = wedge over n in [2..N] of (n! * annulus(Y, 1/ln n, ln n)), the space
// whose asymptotic cone at scale n! recovers Y.
struct DeconeSpace {
    FiniteMetricSpace base;       // the wedge X
    std::vector<int> part;        // per point; -1 for the shared basepoint e
    unsigned N = 0;               // max part index built (0: the k=0 convention, base == Y)
    std::vector<Int> alpha;       // alpha[n] = n!, valid for n in [2, N]

    int part_of(std::size_t x) const {
        if (x >= part.size()) throw std::out_of_range("DeconeSpace: point index");
        return part[x];
    }
};

enum class ScaleCase { Below, At, Above };

inline const char* to_string(ScaleCase c) {
    switch (c) {
        case ScaleCase::Below: return "below";
        case ScaleCase::At: return "at";
        default: return "above";
    }
}

inline DeconeSpace build_decone(const FiniteMetricSpace& Y, unsigned N) {
    if (N < 2) throw std::invalid_argument("build_decone: N >= 2 required");
    if (Y.pseudo) throw std::invalid_argument("build_decone: Y must be a genuine metric space");
    if (!validate(Y).is_holds()) throw std::invalid_argument("build_decone: Y fails metric axioms");

    std::vector<FiniteMetricSpace> parts;
    std::vector<int> ids;
    DeconeSpace X;
    X.N = N;
    X.alpha.assign(N + 1, Int(0));
    for (unsigned n = 2; n <= N; ++n) {
        X.alpha[n] = factorial(n);
        parts.push_back(rescale(annulus_log_window(Y, n), Rat(X.alpha[n])));
        ids.push_back(static_cast<int>(n));
    }
    WedgeSpace w = wedge(parts, ids);
    X.base = std::move(w.space);
    X.part = std::move(w.part);
    return X;
}

inline ScaleCase classify_scale(const DeconeSpace& X, std::size_t x, unsigned n) {
    if (n < 2 || n > X.N) throw std::invalid_argument("classify_scale: n out of range");
    int p = X.part_of(x);
    if (p < 0) throw std::invalid_argument("classify_scale: the basepoint has no part");
    if (p < static_cast<int>(n)) return ScaleCase::Below;
    if (p == static_cast<int>(n)) return ScaleCase::At;
    return ScaleCase::Above;
}

// The two proof bounds at scale n, as refinable enclosures:
//   Case 1 (below):  d(x,e)/n! <= (n-1)! ln(n-1) / n! = ln(n-1)/n
//   Case 3 (above):  d(x,e)/n! >= (n+1)! / (ln(n+1) n!) = (n+1)/ln(n+1)
inline RatInterval below_bound_enclosure(unsigned n, unsigned terms) {
    RatInterval L = log_enclosure(Rat(n - 1), terms);
    return {L.lo / Rat(n), L.hi / Rat(n)};
}

inline RatInterval above_bound_enclosure(unsigned n, unsigned terms) {
    RatInterval L = log_enclosure(Rat(n + 1), terms);
    return {Rat(n + 1) / L.hi, Rat(n + 1) / L.lo};
}

struct CaseBounds {
    RatInterval below_upper;  // encloses (n-1)! ln(n-1)/n!
    RatInterval above_lower;  // encloses (n+1)/ln(n+1)
};

inline CaseBounds case_bounds(const DeconeSpace& X, unsigned n, unsigned terms = 32) {
    if (n < 3 || n + 1 > X.N) throw std::invalid_argument("case_bounds: need 3 <= n <= N-1");
    return {below_bound_enclosure(n, terms), above_bound_enclosure(n, terms)};
}

// Certified trichotomy check at scale n: every Below point obeys the Case 1
// upper bound, every Above point the Case 3 lower bound.
inline Verdict check_case_bounds(const DeconeSpace& X, unsigned n) {
    if (n < 3 || n + 1 > X.N) throw std::invalid_argument("check_case_bounds: need 3 <= n <= N-1");
    Rat nfact(X.alpha[n]);
    for (std::size_t x = 0; x < X.base.size(); ++x) {
        if (X.part_of(x) < 0) continue;
        Rat ratio = X.base.d(x, X.base.basepoint) / nfact;
        ScaleCase c = classify_scale(X, x, n);
        if (c == ScaleCase::Below) {
            auto ok = certified_le(ratio, [&](unsigned t) { return below_bound_enclosure(n, t); });
            if (!ok) return Verdict::undetermined(Int(n), "enclosure refinement exhausted");
            if (!*ok) return Verdict::fails("Case 1 bound violated at " + X.base.points[x]);
        } else if (c == ScaleCase::Above) {
            auto ok = certified_ge(ratio, [&](unsigned t) { return above_bound_enclosure(n, t); });
            if (!ok) return Verdict::undetermined(Int(n), "enclosure refinement exhausted");
            if (!*ok) return Verdict::fails("Case 3 bound violated at " + X.base.points[x]);
        }
    }
    return Verdict::holds();
}

// phi_n(y): the copy of y in X_n when d(y,e) lies in the window, e otherwise.
// Returns an index into X.base.
inline std::size_t embed_phi(const DeconeSpace& X, const FiniteMetricSpace& Y, std::size_t y,
                             unsigned n) {
    if (n < 2 || n > X.N) throw std::invalid_argument("embed_phi: n out of range");
    if (y == Y.basepoint) return X.base.basepoint;
    std::optional<bool> in = in_log_window(Y.dist[y][Y.basepoint], n);
    if (!in) throw std::runtime_error("embed_phi: window membership undecidable");
    if (!*in) return X.base.basepoint;
    auto idx = X.base.find_point(std::to_string(n) + ":" + Y.points[y]);
    if (!idx) throw std::logic_error("embed_phi: expected copy missing from X_" + std::to_string(n));
    return *idx;
}

// Scale-n snapshot: the ball of radius R*n! around e drawn from X_n (at index
// n a cone representative sits in X_n; points of other parts belong to other
// scales and collapse or escape in the limit), distances divided back by n!.
inline FiniteMetricSpace cone_approx(const DeconeSpace& X, unsigned n, const Rat& R) {
    if (n < 2 || n > X.N) throw std::invalid_argument("cone_approx: n out of range");
    if (R <= 0) throw std::invalid_argument("cone_approx: R must be positive");
    Rat nfact(X.alpha[n]);
    Rat radius = R * nfact;
    std::vector<std::size_t> keep{X.base.basepoint};
    for (std::size_t x = 0; x < X.base.size(); ++x) {
        if (X.part_of(x) != static_cast<int>(n)) continue;
        if (X.base.d(x, X.base.basepoint) <= radius) keep.push_back(x);
    }
    FiniteMetricSpace snap = detail::subspace(X.base, keep);
    return rescale(snap, Rat(1) / nfact);
}

struct ConvergenceRow {
    unsigned n = 0;
    Rat gh_upper_bound;
    Rat window_lo, window_hi;  // certified outer bounds of [1/ln n, ln n]
};

// GH upper bounds between the scale-n snapshots and Ball_Y(e, R): must reach
// exactly 0 once the window covers [min nonzero distance, R].
inline std::vector<ConvergenceRow> verify_convergence(const FiniteMetricSpace& Y,
                                                      const DeconeSpace& X, const Rat& R,
                                                      const std::vector<unsigned>& schedule) {
    FiniteMetricSpace target = ball(Y, Y.basepoint, R);
    std::vector<ConvergenceRow> rows;
    rows.reserve(schedule.size());
    for (unsigned n : schedule) {
        ConvergenceRow row;
        row.n = n;
        FiniteMetricSpace snap = cone_approx(X, n, R);
        row.gh_upper_bound = gh_upper(snap, target, /*pointed=*/true);
        RatInterval L = log_enclosure(Rat(n), 64);
        // outward-rounded to denominator 10^6: still a certified outer
        // enclosure, but short enough to print
        const Int D = 1000000;
        row.window_lo = Rat(floor_rat(Rat(1) / L.hi * D), D);
        row.window_hi = Rat(ceil_rat(L.hi * D), D);
        rows.push_back(std::move(row));
    }
    return rows;
}

constexpr std::size_t kIterateSizeGuard = 20000;

// Corollary-style iteration: each stage's output is a finite (hence proper)
// space feeding the next build. k = 0 returns Y itself under the
// Cone^0 = X convention.
inline DeconeSpace iterate_decone(const FiniteMetricSpace& Y, unsigned k, unsigned N) {
    if (k == 0) {
        DeconeSpace X;
        X.base = Y;
        X.part.assign(Y.size(), -1);
        X.N = 0;
        return X;
    }
    FiniteMetricSpace cur = Y;
    DeconeSpace X;
    for (unsigned stage = 0; stage < k; ++stage) {
        if ((cur.size() - 1) * (N - 1) + 1 > kIterateSizeGuard)
            throw std::invalid_argument("iterate_decone: point-count guard exceeded at stage " +
                                        std::to_string(stage + 1));
        X = build_decone(cur, N);
        cur = X.base;
    }
    return X;
}

}  // namespace conekit
