#pragma once

#include "conekit/metric_space.hpp"
#include "conekit/rational.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace conekit {

// A correspondence: pairs covering all points of both spaces. Distortion is
// max |d_A(i,i') - d_B(j,j')| over pairs of pairs; GH distance is half the
// minimal distortion.
struct Correspondence {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    bool pointed = false;
};

inline Rat distortion(const FiniteMetricSpace& A, const FiniteMetricSpace& B,
                      const Correspondence& c) {
    Rat m = 0;
    for (std::size_t a = 0; a < c.pairs.size(); ++a)
        for (std::size_t b = a; b < c.pairs.size(); ++b) {
            Rat diff = abs_rat(A.d(c.pairs[a].first, c.pairs[b].first) -
                               B.d(c.pairs[a].second, c.pairs[b].second));
            if (diff > m) m = diff;
        }
    return m;
}

constexpr std::size_t kGhExactGuard = 7;

namespace detail {

struct GhSearch {
    const FiniteMetricSpace& A;
    const FiniteMetricSpace& B;
    bool pointed;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::optional<Rat> best;

    // max new distortion contributed by pair (i,j) against assigned pairs
    Rat added(std::size_t i, std::size_t j) const {
        Rat m = 0;
        for (const auto& [i2, j2] : pairs) {
            Rat diff = abs_rat(A.d(i, i2) - B.d(j, j2));
            if (diff > m) m = diff;
        }
        return m;
    }

    void cover_b(std::size_t bi, const std::vector<std::size_t>& uncovered, const Rat& cur) {
        if (best && cur >= *best) return;
        if (bi == uncovered.size()) { best = cur; return; }
        std::size_t j = uncovered[bi];
        for (std::size_t i = 0; i < A.size(); ++i) {
            Rat d = added(i, j);
            Rat next = std::max(cur, d);
            if (best && next >= *best) continue;
            pairs.emplace_back(i, j);
            cover_b(bi + 1, uncovered, next);
            pairs.pop_back();
        }
    }

    void assign_a(std::size_t i, const Rat& cur) {
        if (best && cur >= *best) return;
        if (i == A.size()) {
            std::vector<bool> covered(B.size(), false);
            for (const auto& [a, b] : pairs) covered[b] = true;
            std::vector<std::size_t> uncovered;
            for (std::size_t j = 0; j < B.size(); ++j)
                if (!covered[j]) uncovered.push_back(j);
            cover_b(0, uncovered, cur);
            return;
        }
        if (pointed && i == A.basepoint) {
            Rat d = added(i, B.basepoint);
            pairs.emplace_back(i, B.basepoint);
            assign_a(i + 1, std::max(cur, d));
            pairs.pop_back();
            return;
        }
        for (std::size_t j = 0; j < B.size(); ++j) {
            Rat d = added(i, j);
            Rat next = std::max(cur, d);
            if (best && next >= *best) continue;
            pairs.emplace_back(i, j);
            assign_a(i + 1, next);
            pairs.pop_back();
        }
    }
};

// Sorting key making matched ranks of two isometric spaces line up whenever
// distance profiles are distinct: distance to basepoint, then the sorted row.
inline std::vector<Rat> profile_key(const FiniteMetricSpace& S, std::size_t i) {
    std::vector<Rat> row;
    row.reserve(S.size() + 1);
    row.push_back(S.d(i, S.basepoint));
    std::vector<Rat> rest(S.dist[i]);
    std::sort(rest.begin(), rest.end());
    row.insert(row.end(), rest.begin(), rest.end());
    return row;
}

inline Correspondence rank_correspondence(const FiniteMetricSpace&, const FiniteMetricSpace&,
                                          const std::vector<std::size_t>& ordA,
                                          const std::vector<std::size_t>& ordB, bool pointed) {
    Correspondence c;
    c.pointed = pointed;
    std::size_t K = std::max(ordA.size(), ordB.size());
    for (std::size_t k = 0; k < K; ++k)
        c.pairs.emplace_back(ordA[std::min(k, ordA.size() - 1)],
                             ordB[std::min(k, ordB.size() - 1)]);
    return c;
}

}  // namespace detail

// Exact GH distance by branch-and-bound over minimal covering correspondences
// (one partner per point of A, then one per still-uncovered point of B).
// Exhaustive by design; guarded to tiny verification targets.
inline Rat gh_exact(const FiniteMetricSpace& A, const FiniteMetricSpace& B, bool pointed = false) {
    check_shape(A);
    check_shape(B);
    if (A.size() > kGhExactGuard || B.size() > kGhExactGuard)
        throw std::invalid_argument("gh_exact: spaces exceed the exhaustive-search guard (7 points); "
                                    "use gh_lower/gh_upper");
    detail::GhSearch s{A, B, pointed, {}, std::nullopt};
    s.assign_a(0, Rat(0));
    return *s.best / 2;
}

// Certified lower bound: half the Hausdorff gap between the two distance
// multisets (any correspondence with distortion 2d places every distance of A
// within 2d of some distance of B, and vice versa). Subsumes the diameter gap.
inline Rat gh_lower(const FiniteMetricSpace& A, const FiniteMetricSpace& B) {
    check_shape(A);
    check_shape(B);
    auto all_dists = [](const FiniteMetricSpace& S) {
        std::vector<Rat> out;
        for (std::size_t i = 0; i < S.size(); ++i)
            for (std::size_t j = i; j < S.size(); ++j) out.push_back(S.d(i, j));
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<Rat> da = all_dists(A), db = all_dists(B);
    auto one_sided = [](const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
        Rat worst = 0;
        for (const Rat& x : xs) {
            Rat best = abs_rat(x - ys.front());
            for (const Rat& y : ys) {
                Rat d = abs_rat(x - y);
                if (d < best) best = d;
            }
            if (best > worst) worst = best;
        }
        return worst;
    };
    return std::max(one_sided(da, db), one_sided(db, da)) / 2;
}

// Heuristic upper bound: profile-rank matching refined by local swaps, with
// seeded random restarts. Any correspondence upper-bounds the optimum, so the
// result is always valid; exact relabeled copies with distinct profiles hit 0
// from the first rank matching.
inline Rat gh_upper(const FiniteMetricSpace& A, const FiniteMetricSpace& B, bool pointed = false) {
    check_shape(A);
    check_shape(B);
    auto order_by_key = [](const FiniteMetricSpace& S, bool base_first) {
        std::vector<std::size_t> ord(S.size());
        std::iota(ord.begin(), ord.end(), 0);
        std::vector<std::vector<Rat>> keys(S.size());
        for (std::size_t i = 0; i < S.size(); ++i) keys[i] = detail::profile_key(S, i);
        std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
            if (base_first) {
                if (a == S.basepoint) return b != S.basepoint;
                if (b == S.basepoint) return false;
            }
            return keys[a] < keys[b];
        });
        return ord;
    };
    std::vector<std::size_t> ordA = order_by_key(A, pointed), ordB = order_by_key(B, pointed);

    auto polish = [&](std::vector<std::size_t> oa, std::vector<std::size_t> ob) {
        Correspondence c = detail::rank_correspondence(A, B, oa, ob, pointed);
        Rat cur = distortion(A, B, c);
        bool improved = true;
        while (improved && cur > 0) {
            improved = false;
            auto try_orders = [&](std::vector<std::size_t>& ord, std::size_t lo) {
                for (std::size_t a = lo; a < ord.size() && !improved; ++a)
                    for (std::size_t b = a + 1; b < ord.size() && !improved; ++b) {
                        std::swap(ord[a], ord[b]);
                        Correspondence c2 = detail::rank_correspondence(A, B, oa, ob, pointed);
                        Rat d2 = distortion(A, B, c2);
                        if (d2 < cur) { cur = d2; improved = true; }
                        else std::swap(ord[a], ord[b]);
                    }
            };
            std::size_t lo = pointed ? 1 : 0;  // keep the basepoint pair fixed
            try_orders(oa, lo);
            if (!improved) try_orders(ob, lo);
        }
        return cur;
    };

    Rat best = polish(ordA, ordB);
    std::mt19937 rng(12345);  // deterministic restarts
    for (int restart = 0; restart < 8 && best > 0; ++restart) {
        std::vector<std::size_t> oa = ordA, ob = ordB;
        std::size_t lo = pointed ? 1 : 0;
        if (oa.size() > lo + 1) std::shuffle(oa.begin() + lo, oa.end(), rng);
        if (ob.size() > lo + 1) std::shuffle(ob.begin() + lo, ob.end(), rng);
        Rat r = polish(oa, ob);
        if (r < best) best = r;
    }
    return best / 2;
}

}  // namespace conekit
