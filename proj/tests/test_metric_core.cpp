#include "conekit/metric_space.hpp"

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

// Unit square with the diagonal rationalized (99/70 ~ sqrt 2, triangle-safe).
FiniteMetricSpace square_space() {
    FiniteMetricSpace s;
    s.points = {"00", "10", "01", "11"};
    s.basepoint = 0;
    Rat d(99, 70);
    s.dist = {{Rat(0), Rat(1), Rat(1), d},
              {Rat(1), Rat(0), d, Rat(1)},
              {Rat(1), d, Rat(0), Rat(1)},
              {d, Rat(1), Rat(1), Rat(0)}};
    return s;
}

}  // namespace

TEST_CASE("validate holds on genuine metric spaces") {
    CHECK(validate(triangle_space()).is_holds());
    CHECK(validate(square_space()).is_holds());
}

TEST_CASE("validate fails on broken axioms") {
    auto s = triangle_space();
    s.dist[0][1] = Rat(5);  // breaks symmetry
    CHECK(validate(s).is_fails());

    s = triangle_space();
    s.dist[1][2] = s.dist[2][1] = Rat(10);  // breaks triangle
    CHECK(validate(s).is_fails());

    s = triangle_space();
    s.dist[1][2] = s.dist[2][1] = Rat(0);  // distinct points at distance 0
    s.dist[0][2] = s.dist[2][0] = Rat(1);  // keep the triangle inequality intact
    CHECK(validate(s).is_fails());
    s.pseudo = true;  // distance-0 pairs are legal in pseudo-metric mode
    CHECK(validate(s).is_holds());
}

TEST_CASE("check_shape treats structural problems as errors") {
    FiniteMetricSpace s;
    CHECK_THROWS_AS(check_shape(s), std::invalid_argument);
    s.points = {"a", "b"};
    s.dist = {{Rat(0)}};
    CHECK_THROWS_AS(check_shape(s), std::invalid_argument);
    s = triangle_space();
    s.basepoint = 9;
    CHECK_THROWS_AS(check_shape(s), std::invalid_argument);
}

TEST_CASE("diameter, min distance, find_point") {
    auto s = triangle_space();
    CHECK(s.diameter() == Rat(2));
    CHECK(s.min_nonzero_distance() == Rat(1));
    REQUIRE(s.find_point("q"));
    CHECK(*s.find_point("q") == 2);
    CHECK_FALSE(s.find_point("zz"));
}

TEST_CASE("annulus keeps the basepoint and the selected shell") {
    auto s = triangle_space();
    auto a = annulus(s, Rat(3, 2), Rat(3));
    REQUIRE(a.size() == 2);  // e and q
    CHECK(a.points[0] == "e");
    CHECK(a.points[1] == "q");
    CHECK(a.d(0, 1) == Rat(2));
    // degenerate window collapses to {e}
    auto empty = annulus(s, Rat(5), Rat(4));
    CHECK(empty.size() == 1);
    CHECK_THROWS(annulus(s, Rat(0), Rat(1)));
}

TEST_CASE("annulus_log_window uses certified membership") {
    auto s = triangle_space();
    // n=3: window [0.9102, 1.0986] keeps p (d=1) but not q (d=2)
    auto a3 = annulus_log_window(s, 3);
    REQUIRE(a3.size() == 2);
    CHECK(a3.points[1] == "p");
    // n=8: ln 8 = 2.079 keeps both
    auto a8 = annulus_log_window(s, 8);
    CHECK(a8.size() == 3);
    // n=2: empty window
    CHECK(annulus_log_window(s, 2).size() == 1);
}

TEST_CASE("rescale is exact and invertible") {
    auto s = square_space();
    auto big = rescale(s, Rat(720));
    CHECK(big.d(0, 3) == Rat(99, 70) * 720);
    auto back = rescale(big, Rat(1, 720));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) CHECK(back.d(i, j) == s.d(i, j));
    CHECK_THROWS(rescale(s, Rat(0)));
}

TEST_CASE("wedge glues at e with cross-part sum metric") {
    auto t = triangle_space();
    WedgeSpace w = wedge({t, t}, {3, 4});
    // 1 shared basepoint + 2 points per part
    REQUIRE(w.space.size() == 5);
    CHECK(w.space.points[0] == "e");
    CHECK(w.part[0] == -1);
    auto p3 = w.space.find_point("3:p");
    auto q4 = w.space.find_point("4:q");
    REQUIRE(p3);
    REQUIRE(q4);
    CHECK(w.space.d(*p3, 0) == Rat(1));
    CHECK(w.space.d(*p3, *q4) == Rat(1) + Rat(2));  // across parts: d(x,e)+d(e,x')
    auto p3q3 = w.space.find_point("3:q");
    CHECK(w.space.d(*p3, *p3q3) == Rat(2));  // within a part: induced metric
    CHECK(validate(w.space).is_holds());
    CHECK_THROWS(wedge({}));
}

TEST_CASE("ball selects by radius and re-points at the center") {
    auto s = triangle_space();
    auto b = ball(s, 0, Rat(1));
    CHECK(b.size() == 2);  // e, p
    auto bq = ball(s, 2, Rat(2));
    CHECK(bq.size() == 3);
    CHECK(bq.points[bq.basepoint] == "q");
}
