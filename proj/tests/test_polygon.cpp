#include <doctest.h>

#include <algorithm>
#include <random>

#include "twistsum/errors.hpp"
#include "twistsum/polygon.hpp"

using namespace twistsum;

namespace {

// Independent hull oracle: for each candidate point, keep it iff no chord
// between two other points passes strictly below it, then drop collinear
// interior points.
NewtonPolygon brute_hull(std::vector<std::pair<Rational, Rational>> pts) {
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<Rational, Rational>> kept;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool below = false;
        for (std::size_t a = 0; a < pts.size() && !below; ++a)
            for (std::size_t b = a + 1; b < pts.size() && !below; ++b) {
                if (a == i || b == i) continue;
                if (pts[a].first <= pts[i].first && pts[i].first <= pts[b].first) {
                    Rational chord = pts[a].second + (pts[b].second - pts[a].second) *
                                                         (pts[i].first - pts[a].first) /
                                                         (pts[b].first - pts[a].first);
                    if (chord < pts[i].second) below = true;
                }
            }
        if (!below) kept.push_back(pts[i]);
    }
    // drop interior collinear points
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& pt : kept) {
        while (out.size() >= 2) {
            const auto& a = out[out.size() - 2];
            const auto& b = out[out.size() - 1];
            if ((b.second - a.second) * (pt.first - a.first) ==
                (pt.second - a.second) * (b.first - a.first))
                out.pop_back();
            else
                break;
        }
        out.push_back(pt);
    }
    return NewtonPolygon{out};
}

}  // namespace

TEST_CASE("polygon from slopes and evaluation") {
    NewtonPolygon P = polygon_from_slopes({Rational(0), Rational(2), Rational(5)});
    CHECK(P.points.front() == std::pair<Rational, Rational>(0, 0));
    CHECK(P.value_at(Rational(1)) == 0);
    CHECK(P.value_at(Rational(2)) == 2);
    CHECK(P.value_at(Rational(3)) == 7);
    CHECK(P.value_at(make_rational(5, 2)) == make_rational(9, 2));
    CHECK(P.is_convex());
}

TEST_CASE("lower hull drops dominated and collinear points") {
    NewtonPolygon H = lower_hull({{Rational(0), Rational(0)},
                                  {Rational(1), Rational(5)},
                                  {Rational(2), Rational(2)},
                                  {Rational(3), Rational(3)},
                                  {Rational(4), Rational(4)}});
    // (2,2) and (3,3) lie on the chord from (0,0) to (4,4) and are dropped
    CHECK(H.points == std::vector<std::pair<Rational, Rational>>{
                          {Rational(0), Rational(0)}, {Rational(4), Rational(4)}});
    CHECK(H.is_convex());
    CHECK_THROWS_AS(lower_hull({{Rational(1), Rational(0)}, {Rational(2), Rational(0)}}),
                    validation_error);
    CHECK_THROWS_AS(lower_hull({{Rational(0), Rational(0)}, {Rational(0), Rational(1)}}),
                    validation_error);
}

TEST_CASE("hull equals brute-force oracle on random point sets") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> nd(2, 8), num(-20, 20), den(1, 9);
    for (int iter = 0; iter < 1000; ++iter) {
        int n = nd(rng);
        std::vector<std::pair<Rational, Rational>> pts;
        pts.emplace_back(Rational(0), make_rational(num(rng), den(rng)));
        for (int i = 1; i < n; ++i)
            pts.emplace_back(Rational(i), make_rational(num(rng), den(rng)));
        NewtonPolygon a = lower_hull(pts);
        NewtonPolygon b = brute_hull(pts);
        REQUIRE(a.points == b.points);
    }
}

TEST_CASE("comparison report") {
    NewtonPolygon P = polygon_from_slopes({Rational(1), Rational(3)});
    NewtonPolygon Q = polygon_from_slopes({Rational(0), Rational(4)});
    ComparisonReport r = compare_polygons(P, Q, 2);
    CHECK(r.dominated);
    CHECK(r.contact_points == std::vector<long>{0, 2});
}

TEST_CASE("scaling") {
    NewtonPolygon P = polygon_from_slopes({Rational(1), Rational(2)});
    NewtonPolygon S = scale_polygon(P, make_rational(3, 2));
    CHECK(S.value_at(Rational(2)) == make_rational(9, 2));
}
