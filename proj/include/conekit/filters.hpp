#pragma once

#include "conekit/index_set.hpp"
#include "conekit/rational.hpp"
#include "conekit/verdict.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace conekit {

// Finite-horizon proxies for the limit statements "a_n/n -> inf" (fast) and
// "a_n/a_{n+1} -> 0" (thin). All thresholds are operational defaults; they
// are configuration, not truth.
struct TailTestConfig {
    Rat fast_growth = Rat(15, 8);    // r(end) must exceed growth * r(mid) to Hold
                                     // (just under 2: a pure quadratic set has
                                     // r(end)/r(mid) = 2M/(M+1), below 2 for odd M)
    Rat fast_fail_cap = Rat(10);     // bounded witness cap for Fails
    Rat fast_flat = Rat(5, 4);       // max/min checkpoint spread counting as "bounded"
    Rat trend_slack = Rat(9, 10);    // allowed dip between quartile samples
    Rat thin_threshold = Rat(1, 10); // last ratio must fall below this to Hold
    Rat thin_fail_floor = Rat(1, 8); // last ratio at or above this can witness Fails
    unsigned quartile_samples = 16;
};

namespace detail {

// Ratio a_k/k at rank k (1-based).
inline Rat fast_ratio(const IndexSet& A, const Int& k) { return Rat(A.nth(k), k); }

// Evenly spaced ranks in [lo, hi], at most `n` of them, endpoints included.
inline std::vector<Int> sample_ranks(const Int& lo, const Int& hi, unsigned n) {
    std::vector<Int> out;
    Int span = hi - lo;
    if (span < Int(n)) {
        for (Int k = lo; k <= hi; ++k) out.push_back(k);
        return out;
    }
    for (unsigned i = 0; i < n; ++i) out.push_back(lo + span * i / (n - 1));
    return out;
}

}  // namespace detail

// Fast: a_n / n -> infinity. Holds on a growing, monotone-trending tail;
// Fails on a flat bounded tail witnessed at three spaced checkpoints.
inline Verdict is_fast(const IndexSet& A, const TailTestConfig& cfg = {}) {
    Int M = A.count();
    if (M < 16) return Verdict::undetermined(A.horizon(), "fewer than 16 elements");
    Int i1 = (M + 1) / 2, i2 = (3 * M + 3) / 4, i3 = M;
    Rat r1 = detail::fast_ratio(A, i1);
    Rat r2 = detail::fast_ratio(A, i2);
    Rat r3 = detail::fast_ratio(A, i3);

    bool grows = r1 <= r2 && r2 <= r3 && r3 >= cfg.fast_growth * r1 && r3 * r3 >= Rat(i3);
    if (grows) {
        // monotone trend across the last quartile, small dips tolerated
        Rat prev;
        bool first = true, trending = true;
        for (const Int& k : detail::sample_ranks(i2, i3, cfg.quartile_samples)) {
            Rat r = detail::fast_ratio(A, k);
            if (!first && r < cfg.trend_slack * prev) { trending = false; break; }
            prev = r;
            first = false;
        }
        if (trending) return Verdict::holds("ratio at tail: " + to_string(r3));
    }
    Rat rmax = std::max({r1, r2, r3}), rmin = std::min({r1, r2, r3});
    if (rmax <= cfg.fast_fail_cap && rmax <= cfg.fast_flat * rmin)
        return Verdict::fails("bounded ratio " + to_string(rmax) + " at three checkpoints");
    return Verdict::undetermined(A.horizon());
}

// Thin: a_n / a_{n+1} -> 0.
inline Verdict is_thin(const IndexSet& A, const TailTestConfig& cfg = {}) {
    Int M = A.count();
    if (M < 5) return Verdict::undetermined(A.horizon(), "fewer than 5 elements");
    Int R = M - 1;  // number of consecutive ratios
    auto q = [&](const Int& k) { return Rat(A.nth(k), A.nth(k + 1)); };
    Int i1 = (R + 1) / 2, i2 = (3 * R + 3) / 4, i3 = R;
    Rat q1 = q(i1), q2 = q(i2), q3 = q(i3);
    if (q1 >= q2 && q2 >= q3 && q3 <= cfg.thin_threshold)
        return Verdict::holds("tail ratio " + to_string(q3));
    if (q3 >= cfg.thin_fail_floor && q3 >= cfg.trend_slack * q1)
        return Verdict::fails("ratio stuck at " + to_string(q3));
    return Verdict::undetermined(A.horizon());
}

// Every thin set is fast; at finite horizon the check is that a certified
// thin set never gets a Fails verdict from the fast test.
inline Verdict thin_implies_fast(const IndexSet& A, const TailTestConfig& cfg = {}) {
    Verdict t = is_thin(A, cfg);
    if (!t.is_holds())
        throw std::invalid_argument("thin_implies_fast: input not certified thin");
    Verdict f = is_fast(A, cfg);
    if (f.is_fails()) return Verdict::fails("thin set got a fast=Fails verdict");
    return Verdict::holds();
}

inline Verdict union_preserves_fast(const IndexSet& A, const IndexSet& B,
                                    const TailTestConfig& cfg = {}) {
    if (is_fast(A, cfg).is_fails() || is_fast(B, cfg).is_fails())
        throw std::invalid_argument("union_preserves_fast: inputs must not fail the fast test");
    Verdict u = is_fast(unite(A, B), cfg);
    if (u.is_fails()) return Verdict::fails("union of fast sets got fast=Fails");
    return Verdict::holds();
}

// ---------------------------------------------------------------------------
// Filter bases

// Finitely generated stand-in for a filter: generator list at a common
// horizon plus a finite-intersection-property status. The proxy for
// "infinite intersection" is that pairwise intersections carry at least
// ceil(sqrt(H)) elements.
struct FilterBase {
    std::vector<IndexSet> generators;
    Int horizon = 1;
    Verdict fip_status;

    // Intersection of all generators, the smallest set the base certifies.
    IndexSet core() const {
        if (generators.empty()) return IndexSet::full(horizon);
        IndexSet g = generators.front();
        for (std::size_t i = 1; i < generators.size(); ++i) g = intersect(g, generators[i]);
        return g;
    }
};

inline FilterBase make_filter_base(std::vector<IndexSet> gens, Int horizon) {
    FilterBase fb;
    fb.horizon = std::move(horizon);
    fb.generators = std::move(gens);
    Int need = isqrt(fb.horizon);
    if (need * need < fb.horizon) ++need;
    bool big = true;
    for (std::size_t i = 0; i < fb.generators.size(); ++i)
        for (std::size_t j = i + 1; j < fb.generators.size(); ++j)
            if (intersect(fb.generators[i], fb.generators[j]).count() < need) big = false;
    IndexSet core = fb.core();
    if (core.empty_set()) fb.fip_status = Verdict::fails("empty finite intersection");
    else if (big) fb.fip_status = Verdict::holds();
    else fb.fip_status = Verdict::undetermined(fb.horizon, "intersections below sqrt(H) proxy");
    return fb;
}

// ---------------------------------------------------------------------------
// Slow filter stand-in: cofinite sets plus complements of fast sets.

struct SlowBase {
    FilterBase base;
    Int horizon = 1;
    TailTestConfig cfg;

    // "finite" proxy at horizon: few elements, all well below H.
    bool finite_at_horizon(const IndexSet& S) const {
        if (S.empty_set()) return true;
        return S.count() < 16 || S.max_element() <= isqrt(horizon);
    }

    // Fast-or-finite, up to stripping a finite prefix (adding or removing
    // finitely many elements does not change fastness).
    bool fast_or_finite(const IndexSet& S) const {
        if (finite_at_horizon(S)) return true;
        if (is_fast(S, cfg).is_holds()) return true;
        IndexSet tail = intersect(S, IndexSet::cofinite_tail(isqrt(horizon) + 1, horizon));
        return is_fast(tail, cfg).is_holds();
    }

    Verdict member(const IndexSet& S) const {
        IndexSet comp = S.complement();
        if (fast_or_finite(comp)) return Verdict::holds("complement fast-or-finite");
        if (fast_or_finite(S)) return Verdict::fails("set itself fast-or-finite, complement is not");
        return Verdict::undetermined(horizon);
    }
};

inline SlowBase slow_base(const Int& horizon, const TailTestConfig& cfg = {}) {
    if (horizon < 1000) throw std::invalid_argument("slow_base: horizon >= 1000 required");
    SlowBase sb;
    sb.horizon = horizon;
    sb.cfg = cfg;
    std::vector<IndexSet> gens;
    gens.push_back(IndexSet::cofinite_tail(isqrt(horizon) + 1, horizon));
    gens.push_back(powers_set(2, horizon).complement());
    gens.push_back(squares_set(horizon).complement());
    sb.base = make_filter_base(std::move(gens), horizon);
    return sb;
}

// ---------------------------------------------------------------------------
// Floor scaling psi(n) = floor(alpha_n) and its level sets S_r.

struct FloorScaling {
    std::vector<Int> psi;  // psi[n-1] = floor(alpha_n)

    Int horizon() const { return Int(psi.size()); }

    Int operator()(const Int& n) const {
        if (n < 1 || n > Int(psi.size())) throw std::out_of_range("FloorScaling: index");
        return psi[static_cast<std::size_t>(n - 1)];
    }

    // S_r = psi^{-1}({r}) as an IndexSet over the index domain.
    IndexSet level_set(const Int& r) const {
        std::vector<Int> e;
        for (std::size_t i = 0; i < psi.size(); ++i)
            if (psi[i] == r) e.push_back(Int(i + 1));
        return IndexSet(std::move(e), horizon());
    }

    std::map<Int, Int> level_sizes() const {
        std::map<Int, Int> m;
        for (const Int& v : psi) ++m[v];
        return m;
    }

    IndexSet image(const IndexSet& B) const {
        std::vector<Int> e;
        for (const Int& n : B.to_elems()) {
            Int v = (*this)(n);
            if (v >= 1) e.push_back(v);
        }
        Int h = e.empty() ? Int(1) : *std::max_element(e.begin(), e.end());
        return IndexSet(std::move(e), h);
    }

    IndexSet preimage(const IndexSet& A) const {
        std::vector<Int> e;
        for (std::size_t i = 0; i < psi.size(); ++i)
            if (psi[i] >= 1 && A.contains(psi[i])) e.push_back(Int(i + 1));
        return IndexSet(std::move(e), horizon());
    }
};

inline FloorScaling floor_scaling(const std::vector<Rat>& alpha) {
    FloorScaling fs;
    fs.psi.reserve(alpha.size());
    for (const Rat& a : alpha) {
        if (a <= 0) throw std::invalid_argument("floor_scaling: alpha must be positive");
        fs.psi.push_back(floor_rat(a));
    }
    return fs;
}

struct BoundedAccumulation {
    Verdict verdict;
    Int witness = 0;  // max |S_r| observed when Holds
};

// Bounded accumulation: all level sets S_r uniformly small. At finite
// horizon: Holds when the per-r maxima have a stabilized tail, Fails when
// they grow along the checked windows.
inline BoundedAccumulation bounded_accumulation(const std::vector<Rat>& alpha) {
    FloorScaling fs = floor_scaling(alpha);
    std::map<Int, Int> sizes = fs.level_sizes();
    BoundedAccumulation out;
    if (sizes.empty()) {
        out.verdict = Verdict::undetermined(fs.horizon(), "no levels");
        return out;
    }
    std::vector<Int> by_r;
    Int overall = 0;
    for (const auto& [r, c] : sizes) {
        by_r.push_back(c);
        if (c > overall) overall = c;
    }
    std::size_t n = by_r.size();
    if (n < 4) {
        out.verdict = Verdict::holds("few levels");
        out.witness = overall;
        return out;
    }
    Int w[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t win = i * 4 / n;
        if (by_r[i] > w[win]) w[win] = by_r[i];
    }
    if (w[1] < w[2] && w[2] < w[3]) {
        out.verdict = Verdict::fails("level-set sizes grow across windows");
        return out;
    }
    if (w[3] <= w[2]) {
        out.verdict = Verdict::holds();
        out.witness = overall;
        return out;
    }
    out.verdict = Verdict::undetermined(fs.horizon());
    return out;
}

// T = A_1 u ... u A_N with |A_i ∩ S_r| <= 1: round-robin within each level
// set by ascending element order.
inline std::vector<IndexSet> split_bounded(const IndexSet& T, const std::vector<Rat>& alpha,
                                           unsigned N) {
    if (N == 0) throw std::invalid_argument("split_bounded: N must be positive");
    FloorScaling fs = floor_scaling(alpha);
    std::map<Int, std::vector<Int>> buckets;  // r -> elements of T ∩ S_r, ascending
    for (const Int& t : T.to_elems()) {
        if (t > fs.horizon())
            throw std::invalid_argument("split_bounded: T exceeds alpha's index range");
        buckets[fs(t)].push_back(t);
    }
    std::vector<std::vector<Int>> pieces(N);
    for (auto& [r, elems] : buckets) {
        if (elems.size() > N)
            throw std::invalid_argument("split_bounded: |T ∩ S_" + r.str() + "| = " +
                                        std::to_string(elems.size()) + " exceeds N");
        for (std::size_t j = 0; j < elems.size(); ++j) pieces[j].push_back(elems[j]);
    }
    std::vector<IndexSet> out;
    out.reserve(N);
    for (auto& p : pieces) out.emplace_back(std::move(p), T.horizon());
    return out;
}

// ---------------------------------------------------------------------------
// Pushforward filter: A in mu' iff psi^{-1}(A) in mu.

struct Pushforward {
    FilterBase forward;       // generators are psi-images of the source generators
    FilterBase source;
    FloorScaling psi;

    // Membership for an arbitrary A: the best candidate witness inside the
    // source base is its full generator intersection (the smallest set it
    // certifies), so the check reduces to one subset test each way.
    Verdict member(const IndexSet& A) const {
        IndexSet pre = psi.preimage(A);
        IndexSet core = source.core();
        if (core.subset_of(pre)) return Verdict::holds();
        IndexSet pre_comp = intersect(pre.complement(), IndexSet::full(psi.horizon()));
        if (core.subset_of(pre_comp)) return Verdict::fails();
        return Verdict::undetermined(source.horizon);
    }
};

inline Pushforward pushforward(const FilterBase& base, const FloorScaling& psi) {
    if (base.fip_status.is_fails())
        throw std::invalid_argument("pushforward: source base lacks FIP");
    Pushforward pf;
    pf.source = base;
    pf.psi = psi;
    std::vector<IndexSet> gens;
    Int h = 1;
    for (const IndexSet& B : base.generators) {
        IndexSet img = psi.image(intersect(B, IndexSet::full(psi.horizon())));
        if (img.horizon() > h) h = img.horizon();
        gens.push_back(img);
    }
    for (auto& g : gens) g = IndexSet::from_ranges(g.ranges(), h, g.tag());
    pf.forward = make_filter_base(std::move(gens), h);
    return pf;
}

}  // namespace conekit
