#include "conekit/decone.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace conekit;

namespace {

// Y = {e, p} at distance 1.
FiniteMetricSpace pair_space() {
    FiniteMetricSpace s;
    s.points = {"e", "p"};
    s.basepoint = 0;
    s.dist = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    return s;
}

FiniteMetricSpace triple_space() {
    FiniteMetricSpace s;
    s.points = {"e", "p", "q"};
    s.basepoint = 0;
    s.dist = {{Rat(0), Rat(1), Rat(5, 4)},
              {Rat(1), Rat(0), Rat(3, 4)},
              {Rat(5, 4), Rat(3, 4), Rat(0)}};
    return s;
}

}  // namespace

TEST_CASE("build_decone on the 2-point example: X_2 empty, X_3/X_4 at 6 and 24") {
    DeconeSpace X = build_decone(pair_space(), 4);
    // X_2's window [1/ln 2, ln 2] is empty, so only e survives there
    CHECK_FALSE(X.base.find_point("2:p"));
    auto p3 = X.base.find_point("3:p");
    auto p4 = X.base.find_point("4:p");
    REQUIRE(p3);
    REQUIRE(p4);
    CHECK(X.base.d(*p3, X.base.basepoint) == Rat(6));    // 3! * 1
    CHECK(X.base.d(*p4, X.base.basepoint) == Rat(24));   // 4! * 1
    CHECK(X.base.d(*p3, *p4) == Rat(30));                // wedge: 6 + 24
    CHECK(X.alpha[3] == 6);
    CHECK(X.alpha[4] == 24);
    CHECK(validate(X.base).is_holds());
}

TEST_CASE("build_decone validates its input") {
    CHECK_THROWS(build_decone(pair_space(), 1));
    auto bad = pair_space();
    bad.dist[0][1] = Rat(-1);
    CHECK_THROWS(build_decone(bad, 4));
    auto ps = pair_space();
    ps.pseudo = true;
    CHECK_THROWS(build_decone(ps, 4));
}

TEST_CASE("classify_scale tags parts below/at/above n") {
    DeconeSpace X = build_decone(pair_space(), 6);
    auto p3 = *X.base.find_point("3:p");
    auto p4 = *X.base.find_point("4:p");
    auto p5 = *X.base.find_point("5:p");
    CHECK(classify_scale(X, p3, 4) == ScaleCase::Below);
    CHECK(classify_scale(X, p4, 4) == ScaleCase::At);
    CHECK(classify_scale(X, p5, 4) == ScaleCase::Above);
    CHECK_THROWS(classify_scale(X, X.base.basepoint, 4));
    CHECK_THROWS(classify_scale(X, p3, 99));
}

TEST_CASE("case bounds hold at every interior scale") {
    DeconeSpace X = build_decone(triple_space(), 8);
    for (unsigned n = 3; n <= 7; ++n) CHECK(check_case_bounds(X, n).is_holds());
    CaseBounds cb = case_bounds(X, 4);
    // ln 3 / 4 = 0.27465...; 5 / ln 5 = 3.10667...
    CHECK(cb.below_upper.lo > Rat(2746, 10000));
    CHECK(cb.below_upper.hi < Rat(2747, 10000));
    CHECK(cb.above_lower.lo > Rat(3106, 1000));
    CHECK(cb.above_lower.hi < Rat(3107, 1000));
    CHECK_THROWS(case_bounds(X, 2));
    CHECK_THROWS(case_bounds(X, 8));
}

TEST_CASE("embed_phi lands on the labeled copy or the basepoint") {
    auto Y = pair_space();
    DeconeSpace X = build_decone(Y, 5);
    CHECK(embed_phi(X, Y, 0, 3) == X.base.basepoint);   // basepoint maps to e
    CHECK(embed_phi(X, Y, 1, 2) == X.base.basepoint);   // outside X_2's window
    auto p3 = *X.base.find_point("3:p");
    CHECK(embed_phi(X, Y, 1, 3) == p3);
    // the embedded copy carries the exactly rescaled distance
    CHECK(X.base.d(embed_phi(X, Y, 1, 3), X.base.basepoint) == Rat(X.alpha[3]) * Y.d(1, 0));
}

TEST_CASE("cone_approx: small radius sees only e; full radius recovers Y exactly") {
    auto Y = pair_space();
    DeconeSpace X = build_decone(Y, 5);
    // R below 1/ln n: nothing of X_n fits in the ball
    auto tiny = cone_approx(X, 3, Rat(1, 2));
    CHECK(tiny.size() == 1);
    CHECK(tiny.points[0] == "e");
    // R = 1 at n = 3: snapshot is an exact copy of Y at scale 1
    auto snap = cone_approx(X, 3, Rat(1));
    REQUIRE(snap.size() == 2);
    CHECK(snap.d(0, 1) == Rat(1));
    CHECK(gh_exact(snap, Y, /*pointed=*/true) == 0);
    CHECK_THROWS(cone_approx(X, 3, Rat(0)));
    CHECK_THROWS(cone_approx(X, 99, Rat(1)));
}

TEST_CASE("verify_convergence reaches exact zero once the window covers Y") {
    auto Y = triple_space();
    DeconeSpace X = build_decone(Y, 8);
    auto rows = verify_convergence(Y, X, Y.diameter(), {3, 4, 5, 6, 7, 8});
    REQUIRE(rows.size() == 6);
    // distances lie in [3/4, 5/4]; the window covers them from n = 4 on
    // (1/ln 4 = 0.721 < 3/4, ln 4 = 1.386 > 5/4)
    for (const auto& r : rows)
        if (r.n >= 4) CHECK(r.gh_upper_bound == 0);
    for (const auto& r : rows) {
        CHECK(r.window_lo > 0);
        CHECK(r.window_lo < r.window_hi);
    }
}

TEST_CASE("iterate_decone: k = 0 is Y itself; the size guard trips early") {
    auto Y = triple_space();
    DeconeSpace X0 = iterate_decone(Y, 0, 5);
    CHECK(X0.N == 0);
    CHECK(X0.base.size() == Y.size());
    CHECK(X0.part == std::vector<int>(Y.size(), -1));

    DeconeSpace X1 = iterate_decone(Y, 1, 5);
    CHECK(X1.N == 5);
    CHECK(X1.base.size() > Y.size());

    CHECK_THROWS_AS(iterate_decone(Y, 1, 20001), std::invalid_argument);
}
