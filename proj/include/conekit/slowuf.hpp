#pragma once

#include "conekit/filters.hpp"
#include "conekit/index_set.hpp"
#include "conekit/metric_space.hpp"
#include "conekit/rational.hpp"
#include "conekit/verdict.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace conekit {

// The interval family X_{L,a_n} = [a_n/L, L a_n] ∩ N over a thin seed A,
// materialized with exact integer endpoints [ceil(a/L), floor(L a)]. The
// minimal initial segment is dropped so the remaining blocks are pairwise
// disjoint.
struct IntervalSystem {
    struct Block { Int a, lo, hi; };

    IndexSet A;                 // the thin seed
    Rat L;
    std::vector<Block> blocks;  // kept blocks, ascending
    std::size_t dropped = 0;    // initial blocks removed to enforce disjointness
    Int horizon = 1;            // floor(L * max A)

    const Block* block_of_seed(const Int& a) const {
        for (const Block& b : blocks)
            if (b.a == a) return &b;
        return nullptr;
    }
};

inline IntervalSystem make_intervals(const IndexSet& A, const Rat& L,
                                     const TailTestConfig& cfg = {}) {
    if (L <= 1) throw std::invalid_argument("make_intervals: L > 1 required");
    if (!is_thin(A, cfg).is_holds())
        throw std::invalid_argument("make_intervals: seed not certified thin");
    IntervalSystem sys;
    sys.A = A;
    sys.L = L;
    std::vector<IntervalSystem::Block> all;
    for (const Int& a : A.to_elems())
        all.push_back({a, ceil_rat(Rat(a) / L), floor_rat(L * Rat(a))});
    // consecutive disjointness (hi_j < lo_{j+1}) gives pairwise disjointness
    std::size_t drop = 0;
    for (std::size_t j = 0; j + 1 < all.size(); ++j)
        if (all[j].hi >= all[j + 1].lo) drop = j + 1;
    sys.dropped = drop;
    sys.blocks.assign(all.begin() + drop, all.end());
    sys.horizon = all.empty() ? Int(1) : all.back().hi;
    return sys;
}

// X_{L,I}: union of the blocks selected by I ⊆ A, as a range-backed IndexSet.
inline IndexSet x_li(const IntervalSystem& sys, const IndexSet& I) {
    if (!I.subset_of(sys.A)) throw std::invalid_argument("x_li: I must be a subset of the seed A");
    std::vector<IndexSet::Range> ranges;
    for (const IntervalSystem::Block& b : sys.blocks)
        if (I.contains(b.a)) ranges.push_back({b.lo, b.hi});
    return IndexSet::from_ranges(std::move(ranges), sys.horizon);
}

struct RatioWitness {
    Int a;
    Int checkpoint;  // the x at which the density ratio was counted
    Rat ratio;       // exact |X ∩ [1,x-1]|/x
    Rat bound;       // the proof's lower bound at this a
};

struct RatioReport {
    Verdict verdict;
    std::vector<RatioWitness> witnesses;
};

// Along the subsequence x = L a_n of elements of X_{L,I}, the density stays
// >= 1 - 1/L^2 - 1/(L a_n): criterion (*) fails along it, so X_{L,I} is not
// fast. Only indices with L a_n integral contribute: the proof's subsequence
// consists of elements of X itself, and when L a_n falls strictly inside a
// gap no element of the block realizes the bound.
inline RatioReport verify_not_fast(const IntervalSystem& sys, const IndexSet& I) {
    IndexSet X = x_li(sys, I);
    RatioReport rep;
    rep.verdict = Verdict::holds();
    for (const IntervalSystem::Block& b : sys.blocks) {
        if (!I.contains(b.a)) continue;
        if (sys.L * Rat(b.a) != Rat(b.hi)) continue;  // L a not an element of X
        RatioWitness w;
        w.a = b.a;
        w.checkpoint = b.hi;  // = L a
        w.ratio = density_ratio(X, w.checkpoint);
        w.bound = Rat(1) - Rat(1) / (sys.L * sys.L) - Rat(1) / (sys.L * Rat(b.a));
        if (w.ratio < w.bound)
            rep.verdict = Verdict::fails("ratio below bound at a=" + b.a.str());
        rep.witnesses.push_back(std::move(w));
    }
    if (rep.witnesses.empty())
        rep.verdict = Verdict::undetermined(sys.horizon, "no subsequence elements selected");
    return rep;
}

// Along y = ceil(a_n/L), the density of the complement stays
// >= 1 - L^2 a_{n-1}/a_n - L/a_n (a_{n-1}: the previous kept seed element).
inline RatioReport verify_complement_not_fast(const IntervalSystem& sys, const IndexSet& I) {
    IndexSet comp = x_li(sys, I).complement();
    RatioReport rep;
    rep.verdict = Verdict::holds();
    const Int* prev = nullptr;
    for (const IntervalSystem::Block& b : sys.blocks) {
        if (prev && I.contains(b.a)) {
            RatioWitness w;
            w.a = b.a;
            w.checkpoint = b.lo;  // ceil(a/L)
            w.ratio = density_ratio(comp, w.checkpoint);
            w.bound = Rat(1) - sys.L * sys.L * Rat(*prev) / Rat(b.a) - sys.L / Rat(b.a);
            if (w.ratio < w.bound)
                rep.verdict = Verdict::fails("complement ratio below bound at a=" + b.a.str());
            rep.witnesses.push_back(std::move(w));
        }
        prev = &b.a;
    }
    if (rep.witnesses.empty()) rep.verdict = Verdict::undetermined(sys.horizon, "no pairs checked");
    return rep;
}

struct ChainReport {
    Verdict verdict;
    std::string counterexample;
};

// The filters F_L form an ascending chain as L decreases to 1: smaller L gives
// smaller generator sets, X_{L_k,I} ⊆ X_{L_r,I} for L_k < L_r. All systems in
// the chain share the largest drop count so early blocks line up. Also checks
// the FIP proxy of each generator family against the slow-base generators.
inline ChainReport ascending_chain(const IndexSet& A, const std::vector<Rat>& Ls,
                                   const TailTestConfig& cfg = {}) {
    ChainReport rep;
    if (Ls.empty()) { rep.verdict = Verdict::holds("vacuous"); return rep; }
    for (const Rat& L : Ls)
        if (L <= 1) throw std::invalid_argument("ascending_chain: all L must exceed 1");

    std::vector<IntervalSystem> systems;
    std::size_t common_drop = 0;
    for (const Rat& L : Ls) {
        systems.push_back(make_intervals(A, L, cfg));
        common_drop = std::max(common_drop, systems.back().dropped);
    }
    for (IntervalSystem& s : systems) {
        std::size_t extra = common_drop - s.dropped;
        s.blocks.erase(s.blocks.begin(), s.blocks.begin() + extra);
        s.dropped = common_drop;
    }

    // test family of subsets of A
    std::vector<IndexSet> family;
    family.push_back(A);
    std::vector<Int> elems = A.to_elems();
    std::vector<Int> alt, half;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i % 2 == 0) alt.push_back(elems[i]);
        if (i < elems.size() / 2) half.push_back(elems[i]);
    }
    family.emplace_back(std::move(alt), A.horizon());
    family.emplace_back(std::move(half), A.horizon());

    // expected orientation: Ls strictly decreasing, so later systems nest inside
    // earlier ones
    for (std::size_t k = 0; k + 1 < systems.size(); ++k) {
        if (!(Ls[k + 1] < Ls[k])) {
            rep.verdict = Verdict::fails("L sequence not strictly decreasing at position " +
                                         std::to_string(k + 1));
            return rep;
        }
        for (const IndexSet& I : family) {
            IndexSet small = x_li(systems[k + 1], I);
            IndexSet big = x_li(systems[k], I);
            if (!small.subset_of(big)) {
                // name one offending element
                for (const Int& e : small.to_elems()) {
                    if (!big.contains(e)) { rep.counterexample = e.str(); break; }
                }
                rep.verdict = Verdict::fails("containment X_{L_k,I} ⊆ X_{L_r,I} fails");
                return rep;
            }
        }
    }

    // FIP proxy against the slow base at the chain horizon
    Int H = systems.front().horizon;
    if (H < 1000) H = 1000;
    SlowBase sb = slow_base(H, cfg);
    Int need = isqrt(H);
    if (need * need < H) ++need;
    for (const IntervalSystem& s : systems) {
        IndexSet gen = x_li(s, A);
        for (const IndexSet& g : sb.base.generators) {
            if (intersect(gen, g).count() < need) {
                rep.verdict = Verdict::undetermined(H, "FIP proxy below sqrt(H) for L=" +
                                                           to_string(s.L));
                return rep;
            }
        }
    }
    rep.verdict = Verdict::holds();
    return rep;
}

// A point sequence given only on the seed indices a_n.
struct SeedSequence {
    const FiniteMetricSpace* space = nullptr;
    std::map<Int, std::size_t> at_seed;  // a_n -> point index
};

// phi's image: piecewise-constant on the blocks, basepoint elsewhere.
struct BlockSequence {
    const FiniteMetricSpace* space = nullptr;
    std::vector<std::pair<IndexSet::Range, std::size_t>> blocks;  // sorted disjoint
    std::size_t default_point = 0;  // the basepoint, off every block
    Int horizon = 1;

    std::size_t at(const Int& m) const {
        for (const auto& [r, p] : blocks)
            if (r.lo <= m && m <= r.hi) return p;
        return default_point;
    }
};

// y_m := x_{a_n} for m in X_{L,a_n}; the basepoint off every block (the map
// only needs to be defined on X_{L,A}, the extension keeps it total).
inline BlockSequence build_phi(const SeedSequence& x, const IntervalSystem& sys) {
    if (x.space == nullptr) throw std::invalid_argument("build_phi: sequence has no ambient space");
    BlockSequence y;
    y.space = x.space;
    y.default_point = x.space->basepoint;
    y.horizon = sys.horizon;
    const Int* prev_hi = nullptr;
    for (const IntervalSystem::Block& b : sys.blocks) {
        if (prev_hi && *prev_hi >= b.lo)
            throw std::invalid_argument("build_phi: overlapping intervals at a=" + b.a.str());
        auto it = x.at_seed.find(b.a);
        if (it == x.at_seed.end())
            throw std::invalid_argument("build_phi: sequence undefined at seed a=" + b.a.str());
        y.blocks.push_back({{b.lo, b.hi}, it->second});
        prev_hi = &b.hi;
    }
    return y;
}

struct BilipschitzReport {
    Verdict verdict;
    Rat worst_ratio = 1;  // max multiplicative deviation from an isometry; <= L
};

// The sandwich d(x_{a_n},e)/(L a_n) <= d(phi(x)_m,e)/m <= d(x_{a_n},e)/(a_n/L)
// for every m in every block. Both sides are monotone in m, so the integer
// endpoints ceil(a/L), floor(L a) decide the whole block exactly.
inline BilipschitzReport verify_bilipschitz(const SeedSequence& x, const IntervalSystem& sys,
                                            const FiniteMetricSpace& space) {
    if (x.space != &space) throw std::invalid_argument("verify_bilipschitz: ambient space mismatch");
    BilipschitzReport rep;
    rep.verdict = Verdict::holds();
    for (const IntervalSystem::Block& b : sys.blocks) {
        auto it = x.at_seed.find(b.a);
        if (it == x.at_seed.end())
            throw std::invalid_argument("verify_bilipschitz: sequence undefined at a=" + b.a.str());
        Rat D = space.d(it->second, space.basepoint);
        for (const Int& m : {b.lo, b.hi}) {
            // lower: D/(L a) <= D/m ; upper: D/m <= L D/a ; exact rationals
            if (D / (sys.L * Rat(b.a)) > D / Rat(m) || D / Rat(m) > sys.L * D / Rat(b.a)) {
                rep.verdict = Verdict::fails("sandwich fails at m=" + m.str());
                return rep;
            }
        }
        Rat dev = std::max(Rat(b.a) / Rat(b.lo), Rat(b.hi) / Rat(b.a));
        if (dev > rep.worst_ratio) rep.worst_ratio = dev;
    }
    return rep;
}

}  // namespace conekit
