#include "conekit/ultralimit.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace conekit;

namespace {

const long H = 2000;
const Rat eps(1, 1000000);

ValueSequence alternating() {
    ValueSequence s;
    for (long n = 1; n <= H; ++n) s.values.push_back(n % 2 == 0 ? Rat(1) : Rat(-1));
    return s;
}

FilterBase parity_base(bool even) {
    std::vector<Int> e;
    for (Int v = even ? 2 : 1; v <= H; v += 2) e.push_back(v);
    return make_filter_base({IndexSet(std::move(e), Int(H))}, Int(H));
}

FiniteMetricSpace triangle_space() {
    FiniteMetricSpace s;
    s.points = {"e", "p", "f"};
    s.basepoint = 0;
    s.dist = {{Rat(0), Rat(1), Rat(1, 2)},
              {Rat(1), Rat(0), Rat(1)},
              {Rat(1, 2), Rat(1), Rat(0)}};
    return s;
}

}  // namespace

TEST_CASE("mu-limit of (-1)^n depends on the base: the dichotomy") {
    ValueSequence x = alternating();
    LimitResult evens = mu_limit(x, parity_base(true), eps);
    REQUIRE(evens.determined);
    CHECK(evens.value == Rat(1));
    LimitResult odds = mu_limit(x, parity_base(false), eps);
    REQUIRE(odds.determined);
    CHECK(odds.value == Rat(-1));
    // the full base sees both clusters: no determination
    LimitResult both = mu_limit(x, make_filter_base({IndexSet::full(H)}, Int(H)), eps);
    CHECK_FALSE(both.determined);
    CHECK(both.clusters.size() == 2);
}

TEST_CASE("constant and harmonic sequences") {
    ValueSequence c;
    c.values.assign(H, Rat(7, 3));
    LimitResult lc = mu_limit(c, parity_base(true), eps);
    REQUIRE(lc.determined);
    CHECK(lc.value == Rat(7, 3));

    ValueSequence h;
    for (long n = 1; n <= H; ++n) h.values.push_back(Rat(1, n));
    LimitResult lh = mu_limit(h, make_filter_base({IndexSet::full(H)}, Int(H)), Rat(1, 100));
    REQUIRE(lh.determined);
    CHECK(abs_rat(lh.value) <= Rat(1, 100));
}

TEST_CASE("unbounded sequences stay undetermined") {
    ValueSequence x;
    for (long n = 1; n <= H; ++n) x.values.push_back(Rat(n));
    LimitResult l = mu_limit(x, make_filter_base({IndexSet::full(H)}, Int(H)), eps);
    CHECK_FALSE(l.determined);
}

TEST_CASE("mu_limit validates inputs") {
    ValueSequence x = alternating();
    CHECK_THROWS(mu_limit(x, parity_base(true), Rat(0)));
    FilterBase far = make_filter_base({IndexSet::cofinite_tail(Int(H + 1), Int(2 * H))}, Int(2 * H));
    CHECK_THROWS(mu_limit(x, far, eps));
}

TEST_CASE("cone_distance for in-cone sequences, NotInConeError otherwise") {
    FiniteMetricSpace S = triangle_space();
    FilterBase base = make_filter_base({IndexSet::full(H)}, Int(H));
    ValueSequence alpha;
    for (long n = 1; n <= H; ++n) alpha.values.push_back(Rat(n));

    PointSequence xs{&S, std::vector<std::size_t>(H, 1)};  // constant p
    PointSequence es{&S, std::vector<std::size_t>(H, 0)};  // constant e
    LimitResult d = cone_distance(xs, es, alpha, base, Rat(1, 100));
    REQUIRE(d.determined);
    CHECK(abs_rat(d.value) <= Rat(1, 100));  // d(p,e)/n -> 0

    // alpha shrinking like 1/n makes d(p,e)/alpha = n: escapes every ball
    ValueSequence shrink;
    for (long n = 1; n <= H; ++n) shrink.values.push_back(Rat(1, n));
    CHECK_THROWS_AS(cone_distance(xs, es, shrink, base, eps), NotInConeError);

    PointSequence other{nullptr, {}};
    CHECK_THROWS(cone_distance(xs, other, alpha, base, eps));
}

TEST_CASE("check_bounded_add: bounded beta never moves the limit") {
    FilterBase base = make_filter_base({IndexSet::full(H)}, Int(H));
    ValueSequence x, alpha, beta;
    for (long n = 1; n <= H; ++n) {
        alpha.values.push_back(Rat(n) * Rat(n));
        x.values.push_back(Rat(3) * Rat(n) * Rat(n));
        beta.values.push_back(Rat(n % 7, 4));  // bounded in [0, 3/2]; alpha+beta stays positive
    }
    CHECK(check_bounded_add(x, alpha, beta, base, Rat(1, 1000)).is_holds());

    // beta = alpha is not bounded: rejected
    CHECK_THROWS(check_bounded_add(x, alpha, alpha, base, eps));
}

TEST_CASE("check_basepoint_shift: bounded shift keeps the cone and its basepoint") {
    FiniteMetricSpace S = triangle_space();
    FilterBase base = make_filter_base({IndexSet::full(H)}, Int(H));
    ValueSequence alpha;
    for (long n = 1; n <= H; ++n) alpha.values.push_back(Rat(n));
    PointSequence xs{&S, std::vector<std::size_t>(H, 1)};
    PointSequence es{&S, std::vector<std::size_t>(H, 0)};
    PointSequence fs{&S, std::vector<std::size_t>(H, 2)};  // shifted basepoint, d(e,f)=1/2

    CHECK(check_basepoint_shift(xs, es, fs, Rat(1), alpha, base, Rat(1, 10)).is_holds());
    // C at or below the actual shift distance is rejected
    CHECK_THROWS(check_basepoint_shift(xs, es, fs, Rat(1, 2), alpha, base, Rat(1, 10)));
}
