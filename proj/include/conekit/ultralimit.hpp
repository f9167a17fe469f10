#pragma once

#include "conekit/filters.hpp"
#include "conekit/metric_space.hpp"
#include "conekit/rational.hpp"
#include "conekit/verdict.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace conekit {

// Dense rational sequence over [1, H].
struct ValueSequence {
    std::vector<Rat> values;  // values[n-1] = x_n

    Int horizon() const { return Int(values.size()); }
    const Rat& at(const Int& n) const {
        if (n < 1 || n > horizon()) throw std::out_of_range("ValueSequence: index");
        return values[static_cast<std::size_t>(n - 1)];
    }
};

// Sequence of points in one ambient finite metric space.
struct PointSequence {
    const FiniteMetricSpace* space = nullptr;
    std::vector<std::size_t> points;  // points[n-1] = index of x_n in *space

    Int horizon() const { return Int(points.size()); }
    std::size_t at(const Int& n) const {
        if (n < 1 || n > horizon()) throw std::out_of_range("PointSequence: index");
        return points[static_cast<std::size_t>(n - 1)];
    }
};

struct LimitResult {
    bool determined = false;
    Rat value;                  // midpoint of the tail cluster when determined
    std::vector<Rat> clusters;  // candidate cluster midpoints otherwise
};

// Sequence whose d(x_n, e_n)/alpha_n is unbounded on every generator: the
// paper's Case 3, no point of the cone.
struct NotInConeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Unboundedness proxy: maxima over rank-quartile windows of G keep growing.
inline bool looks_unbounded(const std::vector<Rat>& vals) {
    if (vals.size() < 8) return false;
    Rat w[4];
    bool seen[4] = {false, false, false, false};
    for (std::size_t i = 0; i < vals.size(); ++i) {
        std::size_t win = i * 4 / vals.size();
        Rat a = abs_rat(vals[i]);
        if (!seen[win] || a > w[win]) { w[win] = a; seen[win] = true; }
    }
    return w[1] < w[2] && w[2] < w[3] && 2 * w[3] >= 3 * w[1];
}

// Values of a sequence along the elements of G, in index order.
template <typename Fn>
std::vector<Rat> along(const IndexSet& G, const Int& horizon, Fn value_at) {
    std::vector<Rat> out;
    for (const auto& r : G.ranges())
        for (Int n = r.lo; n <= std::min(r.hi, horizon); ++n) out.push_back(value_at(n));
    return out;
}

}  // namespace detail

// mu-limit along a filter base: Determined(a) when the tail of the sequence,
// restricted to the base's generator intersection, concentrates in a single
// cluster. Clusters are split at sorted-value gaps wider than 2*eps.
inline LimitResult mu_limit_values(const std::vector<Rat>& on_g, const Rat& eps, const Int& horizon) {
    LimitResult res;
    if (on_g.empty()) throw std::invalid_argument("mu_limit: empty generator intersection");
    if (detail::looks_unbounded(on_g)) return res;  // not bounded: undetermined
    std::size_t m0 = (3 * on_g.size()) / 4;
    std::vector<Rat> tail(on_g.begin() + m0, on_g.end());
    std::sort(tail.begin(), tail.end());
    std::vector<std::pair<Rat, Rat>> blocks;  // [min, max] per cluster
    for (const Rat& v : tail) {
        if (blocks.empty() || v - blocks.back().second > 2 * eps) blocks.push_back({v, v});
        else blocks.back().second = v;
    }
    for (const auto& [lo, hi] : blocks) res.clusters.push_back((lo + hi) / 2);
    if (blocks.size() == 1 && blocks.front().second - blocks.front().first <= 4 * eps) {
        res.determined = true;
        res.value = res.clusters.front();
    }
    (void)horizon;
    return res;
}

inline LimitResult mu_limit(const ValueSequence& seq, const FilterBase& base, const Rat& eps) {
    if (eps <= 0) throw std::invalid_argument("mu_limit: eps must be positive");
    IndexSet G = intersect(base.core(), IndexSet::full(seq.horizon()));
    if (G.empty_set()) throw std::invalid_argument("mu_limit: generator intersection empty at horizon");
    auto on_g = detail::along(G, seq.horizon(), [&](const Int& n) { return seq.at(n); });
    return mu_limit_values(on_g, eps, seq.horizon());
}

// d_infinity at finite horizon: mu-limit of d(x_n, y_n)/alpha_n, defined only
// for sequences inside the cone window d(x_n, e)/alpha_n bounded on G.
inline LimitResult cone_distance(const PointSequence& xs, const PointSequence& ys,
                                 const ValueSequence& alpha, const FilterBase& base,
                                 const Rat& eps) {
    if (xs.space == nullptr || xs.space != ys.space)
        throw std::invalid_argument("cone_distance: sequences must share one ambient space");
    const FiniteMetricSpace& S = *xs.space;
    Int H = std::min(std::min(xs.horizon(), ys.horizon()), alpha.horizon());
    IndexSet G = intersect(base.core(), IndexSet::full(H));
    if (G.empty_set()) throw std::invalid_argument("cone_distance: generator intersection empty");

    for (const PointSequence* seq : {&xs, &ys}) {
        auto ratios = detail::along(G, H, [&](const Int& n) {
            return S.d(seq->at(n), S.basepoint) / alpha.at(n);
        });
        if (detail::looks_unbounded(ratios))
            throw NotInConeError("cone_distance: d(x_n,e)/alpha_n unbounded on the base");
    }
    auto on_g = detail::along(G, H, [&](const Int& n) {
        return S.d(xs.at(n), ys.at(n)) / alpha.at(n);
    });
    return mu_limit_values(on_g, eps, H);
}

// lim_mu x_n/(alpha_n + beta_n) = lim_mu x_n/alpha_n for bounded beta.
inline Verdict check_bounded_add(const ValueSequence& x, const ValueSequence& alpha,
                                 const ValueSequence& beta, const FilterBase& base,
                                 const Rat& eps) {
    Int H = std::min(std::min(x.horizon(), alpha.horizon()), beta.horizon());
    IndexSet G = intersect(base.core(), IndexSet::full(H));
    if (G.empty_set()) throw std::invalid_argument("check_bounded_add: empty generator intersection");
    auto betas = detail::along(G, H, [&](const Int& n) { return beta.at(n); });
    if (detail::looks_unbounded(betas))
        throw std::invalid_argument("check_bounded_add: beta not bounded on the base");

    auto r1 = detail::along(G, H, [&](const Int& n) { return x.at(n) / alpha.at(n); });
    auto r2 = detail::along(G, H, [&](const Int& n) {
        Rat denom = alpha.at(n) + beta.at(n);
        if (denom <= 0) throw std::invalid_argument("check_bounded_add: alpha+beta not positive");
        return x.at(n) / denom;
    });
    LimitResult L1 = mu_limit_values(r1, eps, H);
    LimitResult L2 = mu_limit_values(r2, eps, H);
    if (!L1.determined || !L2.determined) return Verdict::undetermined(H);
    if (abs_rat(L1.value - L2.value) < eps) return Verdict::holds();
    return Verdict::fails("limits differ by " + to_string(abs_rat(L1.value - L2.value)));
}

// Basepoint shift by a uniformly bounded amount: exact triangle bound at
// every generator index, cone membership preserved, and d_inf(e, e') = 0
// up to eps (C/alpha is infinitesimal in the limit).
inline Verdict check_basepoint_shift(const PointSequence& xs, const PointSequence& es,
                                     const PointSequence& e2s, const Rat& C,
                                     const ValueSequence& alpha, const FilterBase& base,
                                     const Rat& eps) {
    if (xs.space == nullptr || xs.space != es.space || xs.space != e2s.space)
        throw std::invalid_argument("check_basepoint_shift: mixed ambient spaces");
    const FiniteMetricSpace& S = *xs.space;
    Int H = std::min(std::min(xs.horizon(), es.horizon()),
                     std::min(e2s.horizon(), alpha.horizon()));
    IndexSet G = intersect(base.core(), IndexSet::full(H));
    if (G.empty_set()) throw std::invalid_argument("check_basepoint_shift: empty generator intersection");

    std::vector<Rat> shifted_ratio;
    for (const auto& r : G.ranges()) {
        for (Int n = r.lo; n <= std::min(r.hi, H); ++n) {
            if (S.d(es.at(n), e2s.at(n)) >= C)
                throw std::invalid_argument("check_basepoint_shift: d(e_n, e'_n) >= C at n=" + n.str());
            // exact triangle bound d(x,e')/a <= d(x,e)/a + C/a
            if (S.d(xs.at(n), e2s.at(n)) > S.d(xs.at(n), es.at(n)) + C)
                return Verdict::fails("triangle bound violated at n=" + n.str());
            shifted_ratio.push_back(S.d(xs.at(n), e2s.at(n)) / alpha.at(n));
        }
    }
    if (detail::looks_unbounded(shifted_ratio))
        return Verdict::fails("cone membership lost under basepoint shift");

    auto drift = detail::along(G, H, [&](const Int& n) {
        return S.d(es.at(n), e2s.at(n)) / alpha.at(n);
    });
    LimitResult L = mu_limit_values(drift, eps, H);
    if (!L.determined) return Verdict::undetermined(H, "d(e,e')/alpha limit undetermined");
    if (abs_rat(L.value) > eps) return Verdict::fails("d_inf(e,e') = " + to_string(L.value));
    return Verdict::holds();
}

}  // namespace conekit
