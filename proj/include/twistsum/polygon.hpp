#pragma once

#include <utility>
#include <vector>

#include "twistsum/rational.hpp"

namespace twistsum {

// Piecewise-linear function given by its vertex points, x strictly
// increasing. Every polygon produced here starts at (0, 0).
struct NewtonPolygon {
    std::vector<std::pair<Rational, Rational>> points;

    std::vector<Rational> slopes() const;
    Rational value_at(const Rational& x) const;
    bool is_convex() const;
    Rational x_min() const { return points.front().first; }
    Rational x_max() const { return points.back().first; }
};

// Polygon with vertices at 0, 1, ..., slopes.size(), starting at (0, 0).
NewtonPolygon polygon_from_slopes(const std::vector<Rational>& slopes);

// Lower convex hull. Input points must have distinct abscissae with the
// first (after sorting) at 0. Collinear interior points are dropped.
NewtonPolygon lower_hull(std::vector<std::pair<Rational, Rational>> pts);

struct ComparisonReport {
    bool dominated = false;               // P(n) >= Q(n) for all compared n
    std::vector<long> contact_points;     // integer n with P(n) == Q(n)
};

// Compare P and Q at integers 0..n_max.
ComparisonReport compare_polygons(const NewtonPolygon& P, const NewtonPolygon& Q, long n_max);

NewtonPolygon scale_polygon(const NewtonPolygon& P, const Rational& c);

}  // namespace twistsum
