#include "conekit/slowuf.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace conekit;

namespace {

FiniteMetricSpace triangle_space() {
    FiniteMetricSpace s;
    s.points = {"e", "p", "q"};
    s.basepoint = 0;
    s.dist = {{Rat(0), Rat(1), Rat(2)}, {Rat(1), Rat(0), Rat(2)}, {Rat(2), Rat(2), Rat(0)}};
    return s;
}

SeedSequence alternating_seed(const IndexSet& A, const FiniteMetricSpace& S) {
    SeedSequence x;
    x.space = &S;
    std::size_t turn = 1;
    for (const Int& a : A.to_elems()) {
        x.at_seed[a] = turn;
        turn = (turn == 1) ? 2 : 1;
    }
    return x;
}

}  // namespace

TEST_CASE("make_intervals on the factorial seed, L = 2: one dropped block") {
    IndexSet A = factorial_set(3, 12);
    IntervalSystem sys = make_intervals(A, Rat(2));
    // [3,12] (a=6) touches [12,48] (a=24) at 12, so the first block is dropped
    CHECK(sys.dropped == 1);
    REQUIRE(sys.blocks.size() == 9);
    CHECK(sys.blocks.front().a == 24);
    CHECK(sys.blocks.front().lo == 12);
    CHECK(sys.blocks.front().hi == 48);
    // remaining blocks pairwise disjoint
    for (std::size_t i = 0; i + 1 < sys.blocks.size(); ++i)
        CHECK(sys.blocks[i].hi < sys.blocks[i + 1].lo);
    CHECK(sys.block_of_seed(Int(24)) != nullptr);
    CHECK(sys.block_of_seed(Int(6)) == nullptr);
}

TEST_CASE("make_intervals rejects bad inputs") {
    IndexSet A = factorial_set(3, 12);
    CHECK_THROWS(make_intervals(A, Rat(1)));
    CHECK_THROWS(make_intervals(squares_set(1000000), Rat(2)));  // not thin
}

TEST_CASE("x_li unions exactly the selected blocks") {
    IndexSet A = factorial_set(3, 12);
    IntervalSystem sys = make_intervals(A, Rat(2));
    IndexSet all = x_li(sys, A);
    CHECK(all.contains(12));
    CHECK(all.contains(48));
    CHECK_FALSE(all.contains(49));
    CHECK(all.contains(60));  // in [60, 240] from a = 120

    IndexSet I({Int(24)}, A.horizon());
    IndexSet one = x_li(sys, I);
    CHECK(one.count() == 37);  // [12, 48]
    CHECK_THROWS(x_li(sys, IndexSet({Int(7)}, A.horizon())));  // 7 not in A
}

TEST_CASE("verify_not_fast: witnesses along L a_n meet the proof bound exactly") {
    IndexSet A = factorial_set(3, 12);
    for (const Rat& L : {Rat(2), Rat(3, 2), Rat(5, 4), Rat(9, 8)}) {
        IntervalSystem sys = make_intervals(A, L);
        RatioReport rep = verify_not_fast(sys, A);
        CHECK(rep.verdict.is_holds());
        CHECK_FALSE(rep.witnesses.empty());
        for (const auto& w : rep.witnesses) {
            CHECK(w.ratio >= w.bound);
            CHECK(Rat(w.checkpoint) == L * Rat(w.a));  // only genuine subsequence elements
        }
    }
    // L = 2 witnesses sit above 1 - 1/4 - 1/(2*24) ~ 0.729
    IntervalSystem s2 = make_intervals(A, Rat(2));
    for (const auto& w : verify_not_fast(s2, A).witnesses) CHECK(w.ratio >= Rat(74, 100));
}

TEST_CASE("verify_complement_not_fast holds on the factorial seed") {
    IndexSet A = factorial_set(3, 12);
    for (const Rat& L : {Rat(2), Rat(3, 2), Rat(5, 4), Rat(9, 8)}) {
        IntervalSystem sys = make_intervals(A, L);
        RatioReport rep = verify_complement_not_fast(sys, A);
        CHECK(rep.verdict.is_holds());
        CHECK_FALSE(rep.witnesses.empty());
        for (const auto& w : rep.witnesses) CHECK(w.ratio >= w.bound);
    }
}

TEST_CASE("the X_{L,I} sets themselves never certify as fast") {
    IndexSet A = factorial_set(3, 12);
    IntervalSystem sys = make_intervals(A, Rat(2));
    CHECK_FALSE(is_fast(x_li(sys, A)).is_holds());
}

TEST_CASE("ascending_chain nests as L decreases") {
    IndexSet A = factorial_set(3, 12);
    ChainReport rep = ascending_chain(A, {Rat(2), Rat(3, 2), Rat(5, 4), Rat(9, 8)});
    CHECK(rep.verdict.is_holds());
    // wrong orientation is a Fails, not an error
    CHECK(ascending_chain(A, {Rat(3, 2), Rat(2)}).verdict.is_fails());
    CHECK(ascending_chain(A, {}).verdict.is_holds());
    CHECK_THROWS(ascending_chain(A, {Rat(1, 2)}));
}

TEST_CASE("build_phi: piecewise-constant on blocks, basepoint elsewhere") {
    IndexSet A = factorial_set(3, 12);
    IntervalSystem sys = make_intervals(A, Rat(2));
    FiniteMetricSpace S = triangle_space();
    SeedSequence x = alternating_seed(A, S);
    BlockSequence y = build_phi(x, sys);
    const IntervalSystem::Block& b = sys.blocks.front();  // a = 24
    CHECK(y.at(b.lo) == x.at_seed[Int(24)]);
    CHECK(y.at(b.hi) == x.at_seed[Int(24)]);
    CHECK(y.at(b.hi + 1) == S.basepoint);  // gap between blocks
    CHECK(y.at(Int(1)) == S.basepoint);

    SeedSequence missing;
    missing.space = &S;
    CHECK_THROWS(build_phi(missing, sys));

    IntervalSystem overlap = sys;
    overlap.blocks[1].lo = overlap.blocks[0].hi;  // force an overlap
    CHECK_THROWS(build_phi(x, overlap));
}

TEST_CASE("verify_bilipschitz: sandwich holds, worst ratio bounded by L and monotone") {
    IndexSet A = factorial_set(3, 12);
    FiniteMetricSpace S = triangle_space();
    SeedSequence x = alternating_seed(A, S);
    Rat prev_worst;
    bool first = true;
    for (const Rat& L : {Rat(2), Rat(3, 2), Rat(5, 4), Rat(9, 8)}) {
        IntervalSystem sys = make_intervals(A, L);
        BilipschitzReport rep = verify_bilipschitz(x, sys, S);
        CHECK(rep.verdict.is_holds());
        CHECK(rep.worst_ratio <= L);
        CHECK(rep.worst_ratio >= 1);
        if (!first) CHECK(rep.worst_ratio <= prev_worst);
        prev_worst = rep.worst_ratio;
        first = false;
    }
    FiniteMetricSpace other = triangle_space();
    CHECK_THROWS(verify_bilipschitz(x, make_intervals(A, Rat(2)), other));
}
