#include "conekit/index_set.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace conekit;

TEST_CASE("construction collapses duplicates and merges adjacency") {
    IndexSet s({Int(3), Int(1), Int(2), Int(2), Int(7)}, Int(10));
    CHECK(s.count() == 4);
    CHECK(s.ranges().size() == 2);  // [1,3] and [7,7]
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(4));
    CHECK(s.min_element() == 1);
    CHECK(s.max_element() == 7);
    CHECK_THROWS(IndexSet({Int(0)}, Int(5)));
}

TEST_CASE("from_ranges merges overlaps; horizon rides up to max element") {
    auto s = IndexSet::from_ranges({{Int(5), Int(9)}, {Int(8), Int(12)}, {Int(20), Int(20)}}, Int(10));
    CHECK(s.ranges().size() == 2);
    CHECK(s.count() == 9);
    CHECK(s.horizon() == 20);
}

TEST_CASE("count_below and density_ratio are exact") {
    auto s = IndexSet::from_ranges({{Int(10), Int(19)}}, Int(100));
    CHECK(s.count_below(10) == 0);
    CHECK(s.count_below(15) == 5);
    CHECK(s.count_below(50) == 10);
    CHECK(density_ratio(s, Int(20)) == Rat(10, 20));
    CHECK_THROWS(density_ratio(s, Int(0)));
}

TEST_CASE("nth is 1-based across ranges") {
    auto s = IndexSet::from_ranges({{Int(2), Int(4)}, {Int(10), Int(11)}}, Int(20));
    CHECK(s.nth(1) == 2);
    CHECK(s.nth(3) == 4);
    CHECK(s.nth(4) == 10);
    CHECK(s.nth(5) == 11);
    CHECK_THROWS(s.nth(6));
    CHECK_THROWS(s.nth(0));
}

TEST_CASE("complement within [1,H] and involution") {
    auto s = IndexSet::from_ranges({{Int(3), Int(5)}}, Int(10));
    auto c = s.complement();
    CHECK(c.count() == 7);
    CHECK(c.contains(1));
    CHECK_FALSE(c.contains(4));
    CHECK(c.complement() == s);
    CHECK(intersect(s, c).empty_set());
    CHECK(unite(s, c) == IndexSet::full(10));
}

TEST_CASE("intersect and unite on range-backed sets") {
    auto a = IndexSet::from_ranges({{Int(1), Int(10)}, {Int(20), Int(30)}}, Int(40));
    auto b = IndexSet::from_ranges({{Int(8), Int(25)}}, Int(40));
    auto i = intersect(a, b);
    CHECK(i.count() == 3 + 6);  // [8,10] and [20,25]
    auto u = unite(a, b);
    CHECK(u.count() == 30);  // [1,30]
    CHECK(i.subset_of(a));
    CHECK(i.subset_of(b));
    CHECK(a.subset_of(u));
    CHECK_FALSE(a.subset_of(b));
}

TEST_CASE("rule-backed builders") {
    auto p2 = powers_set(2, 1000000);
    CHECK(p2.count() == 19);
    CHECK(p2.contains(524288));
    CHECK(p2.rule() == "powers:2");

    auto f = factorial_set(3, 12);
    CHECK(f.count() == 10);
    CHECK(f.min_element() == 6);
    CHECK(f.max_element() == 479001600);

    auto sq = squares_set(100);
    CHECK(sq.count() == 10);
    auto cu = cubes_set(1000);
    CHECK(cu.count() == 10);

    // 2^(n^2) blows past any naive horizon; rule-backed carries it anyway
    auto nsq = powers2_nsq_set(6);
    CHECK(nsq.count() == 6);
    CHECK(nsq.max_element() == (Int(1) << 36));
    CHECK(nsq.horizon() >= nsq.max_element());
}

TEST_CASE("cofinite tail and counting at large horizon") {
    Int H = 1000000;
    auto t = IndexSet::cofinite_tail(Int(1001), H);
    CHECK(t.count() == H - 1000);
    CHECK(t.tag() == EventualTag::Cofinite);
    auto c = powers_set(2, H).complement();
    CHECK(c.count() == H - 19);
    CHECK(density_ratio(c, H) > Rat(99, 100));
}
