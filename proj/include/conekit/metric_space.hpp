#pragma once

#include "conekit/log_enclosure.hpp"
#include "conekit/rational.hpp"
#include "conekit/verdict.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conekit {

// Finite pointed (pseudo-)metric space with exact rational distances.
// Finite spaces are trivially proper, which is all the constructions here need.
struct FiniteMetricSpace {
    std::vector<std::string> points;          // opaque labels
    std::vector<std::vector<Rat>> dist;       // symmetric, zero diagonal
    std::size_t basepoint = 0;                // index of e
    bool pseudo = false;                      // distinct points at distance 0 allowed?

    std::size_t size() const { return points.size(); }
    const Rat& d(std::size_t i, std::size_t j) const { return dist[i][j]; }

    Rat diameter() const {
        Rat m = 0;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (dist[i][j] > m) m = dist[i][j];
        return m;
    }

    Rat min_nonzero_distance() const {
        std::optional<Rat> m;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (dist[i][j] > 0 && (!m || dist[i][j] < *m)) m = dist[i][j];
        return m ? *m : Rat(0);
    }

    std::optional<std::size_t> find_point(const std::string& label) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (points[i] == label) return i;
        return std::nullopt;
    }
};

// Structural problems (shape mismatch) are errors, not a Fails verdict.
inline void check_shape(const FiniteMetricSpace& s) {
    if (s.points.empty()) throw std::invalid_argument("metric space: no points");
    if (s.dist.size() != s.points.size())
        throw std::invalid_argument("metric space: matrix row count != point count");
    for (const auto& row : s.dist)
        if (row.size() != s.points.size())
            throw std::invalid_argument("metric space: matrix is not square");
    if (s.basepoint >= s.points.size())
        throw std::invalid_argument("metric space: basepoint index out of range");
}

inline Verdict validate(const FiniteMetricSpace& s) {
    check_shape(s);
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (s.dist[i][i] != 0) return Verdict::fails("nonzero diagonal at " + s.points[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (s.dist[i][j] < 0) return Verdict::fails("negative distance");
            if (s.dist[i][j] != s.dist[j][i]) return Verdict::fails("asymmetric matrix");
            if (!s.pseudo && i != j && s.dist[i][j] == 0)
                return Verdict::fails("distinct points at distance 0: " + s.points[i] + "," + s.points[j]);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (s.dist[i][j] > s.dist[i][k] + s.dist[k][j])
                    return Verdict::fails("triangle inequality fails at (" + s.points[i] + "," +
                                          s.points[j] + "," + s.points[k] + ")");
    return Verdict::holds();
}

namespace detail {
inline FiniteMetricSpace subspace(const FiniteMetricSpace& s, const std::vector<std::size_t>& keep) {
    FiniteMetricSpace out;
    out.pseudo = s.pseudo;
    out.points.reserve(keep.size());
    for (auto i : keep) out.points.push_back(s.points[i]);
    out.dist.assign(keep.size(), std::vector<Rat>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = 0; b < keep.size(); ++b)
            out.dist[a][b] = s.dist[keep[a]][keep[b]];
    for (std::size_t a = 0; a < keep.size(); ++a)
        if (keep[a] == s.basepoint) out.basepoint = a;
    return out;
}
}  // namespace detail

// Closed annulus { y : rlo <= d(y,e) <= rhi } together with the basepoint,
// with the induced metric. rlo > rhi legally degenerates to {e}.
inline FiniteMetricSpace annulus(const FiniteMetricSpace& s, const Rat& rlo, const Rat& rhi) {
    check_shape(s);
    if (rlo <= 0) throw std::invalid_argument("annulus: rlo must be positive");
    std::vector<std::size_t> keep{s.basepoint};
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i == s.basepoint) continue;
        const Rat& d = s.dist[i][s.basepoint];
        if (rlo <= d && d <= rhi) keep.push_back(i);
    }
    return detail::subspace(s, keep);
}

// Annulus with the irrational window [1/ln n, ln n], membership decided by
// certified enclosure refinement. Rational distances never tie against ln n,
// so the depth guard firing means genuinely pathological input.
inline FiniteMetricSpace annulus_log_window(const FiniteMetricSpace& s, unsigned n) {
    check_shape(s);
    std::vector<std::size_t> keep{s.basepoint};
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i == s.basepoint) continue;
        std::optional<bool> in = in_log_window(s.dist[i][s.basepoint], n);
        if (!in)
            throw std::runtime_error("annulus_log_window: membership undecidable for point " +
                                     s.points[i] + " at n=" + std::to_string(n));
        if (*in) keep.push_back(i);
    }
    return detail::subspace(s, keep);
}

inline FiniteMetricSpace rescale(const FiniteMetricSpace& s, const Rat& c) {
    check_shape(s);
    if (c <= 0) throw std::invalid_argument("rescale: factor must be positive");
    FiniteMetricSpace out = s;
    for (auto& row : out.dist)
        for (auto& v : row) v *= c;
    return out;
}

// Wedge amalgam: all basepoints identified to a single e, induced metric
// within a part, d(x,e)+d(e,x') across parts. Non-basepoint points keep a
// part tag so downstream scale classification knows where they came from.
struct WedgeSpace {
    FiniteMetricSpace space;
    std::vector<int> part;  // per point; -1 for the shared basepoint
};

inline WedgeSpace wedge(const std::vector<FiniteMetricSpace>& parts,
                        const std::vector<int>& part_ids = {}) {
    if (parts.empty()) throw std::invalid_argument("wedge: no parts");
    if (!part_ids.empty() && part_ids.size() != parts.size())
        throw std::invalid_argument("wedge: part id count mismatch");
    for (const auto& p : parts) check_shape(p);

    WedgeSpace w;
    w.space.pseudo = false;
    w.space.points.push_back("e");
    w.space.basepoint = 0;
    w.part.push_back(-1);

    // (part index, original index) for each non-basepoint point
    std::vector<std::pair<std::size_t, std::size_t>> origin{{0, 0}};  // dummy for e
    for (std::size_t p = 0; p < parts.size(); ++p) {
        int tag = part_ids.empty() ? static_cast<int>(p) : part_ids[p];
        for (std::size_t i = 0; i < parts[p].size(); ++i) {
            if (i == parts[p].basepoint) continue;
            w.space.points.push_back(std::to_string(tag) + ":" + parts[p].points[i]);
            w.part.push_back(tag);
            origin.emplace_back(p, i);
        }
    }
    const std::size_t n = w.space.points.size();
    w.space.dist.assign(n, std::vector<Rat>(n, Rat(0)));
    auto base_dist = [&](std::size_t k) {  // d(point k, e)
        auto [p, i] = origin[k];
        return parts[p].dist[i][parts[p].basepoint];
    };
    for (std::size_t a = 1; a < n; ++a) {
        Rat da = base_dist(a);
        w.space.dist[a][0] = w.space.dist[0][a] = da;
        for (std::size_t b = a + 1; b < n; ++b) {
            auto [pa, ia] = origin[a];
            auto [pb, ib] = origin[b];
            Rat d = (pa == pb) ? parts[pa].dist[ia][ib] : da + base_dist(b);
            w.space.dist[a][b] = w.space.dist[b][a] = d;
        }
    }
    return w;
}

// Closed ball of radius R around the given center, induced metric.
inline FiniteMetricSpace ball(const FiniteMetricSpace& s, std::size_t center, const Rat& R) {
    check_shape(s);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.dist[i][center] <= R) keep.push_back(i);
    FiniteMetricSpace out = detail::subspace(s, keep);
    // keep the ball pointed at its center when the center is not the basepoint
    for (std::size_t a = 0; a < keep.size(); ++a)
        if (keep[a] == center) out.basepoint = a;
    return out;
}

}  // namespace conekit
