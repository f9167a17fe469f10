#include "conekit/log_enclosure.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace conekit;

TEST_CASE("log_enclosure brackets known values") {
    // ln 2 = 0.693147..., ln 10 = 2.302585...
    RatInterval l2 = log_enclosure(Rat(2), 16);
    CHECK(l2.lo <= Rat(693148, 1000000));
    CHECK(l2.hi >= Rat(693147, 1000000));
    CHECK(l2.lo >= Rat(69, 100));
    CHECK(l2.hi <= Rat(70, 100));

    RatInterval l10 = log_enclosure(Rat(10), 16);
    CHECK(l10.lo >= Rat(23, 10));
    CHECK(l10.hi <= Rat(231, 100));

    RatInterval l1 = log_enclosure(Rat(1));
    CHECK(l1.lo == 0);
    CHECK(l1.hi == 0);
}

TEST_CASE("log_enclosure of reciprocals negates") {
    RatInterval a = log_enclosure(Rat(3), 16);
    RatInterval b = log_enclosure(Rat(1, 3), 16);
    CHECK(b.lo == -a.hi);
    CHECK(b.hi == -a.lo);
}

TEST_CASE("enclosure width shrinks as terms grow") {
    RatInterval coarse = log_enclosure(Rat(7), 4);
    RatInterval fine = log_enclosure(Rat(7), 32);
    CHECK(fine.width() < coarse.width());
    CHECK(coarse.lo <= fine.lo);
    CHECK(fine.hi <= coarse.hi);
}

TEST_CASE("log_enclosure rejects non-positive arguments") {
    CHECK_THROWS(log_enclosure(Rat(0)));
    CHECK_THROWS(log_enclosure(Rat(-2)));
}

TEST_CASE("certified comparisons decide strict inequalities") {
    auto ln3 = [](unsigned t) { return log_enclosure(Rat(3), t); };
    // ln 3 = 1.0986...
    auto below = certified_le(Rat(1), ln3);
    REQUIRE(below);
    CHECK(*below);
    auto above = certified_le(Rat(11, 10), ln3);
    REQUIRE(above);
    CHECK_FALSE(*above);
    auto ge = certified_ge(Rat(11, 10), ln3);
    REQUIRE(ge);
    CHECK(*ge);
}

TEST_CASE("in_log_window decides membership in [1/ln n, ln n]") {
    // n = 3: window [0.9102, 1.0986]
    auto mid = in_log_window(Rat(1), 3);
    REQUIRE(mid);
    CHECK(*mid);
    auto high = in_log_window(Rat(2), 3);
    REQUIRE(high);
    CHECK_FALSE(*high);
    auto low = in_log_window(Rat(1, 5), 3);
    REQUIRE(low);
    CHECK_FALSE(*low);
    CHECK_FALSE(*in_log_window(Rat(0), 3));
    // n = 2 has an empty window (ln 2 < 1 < 1/ln 2): nothing fits
    auto n2 = in_log_window(Rat(1), 2);
    REQUIRE(n2);
    CHECK_FALSE(*n2);
    CHECK_THROWS(in_log_window(Rat(1), 1));
}
