#include "twistsum/polygon.hpp"

#include <algorithm>

#include "twistsum/errors.hpp"

namespace twistsum {

std::vector<Rational> NewtonPolygon::slopes() const {
    std::vector<Rational> s;
    for (std::size_t i = 1; i < points.size(); ++i) {
        Rational m = (points[i].second - points[i - 1].second) /
                     (points[i].first - points[i - 1].first);
        m.canonicalize();
        s.push_back(m);
    }
    return s;
}

Rational NewtonPolygon::value_at(const Rational& x) const {
    if (points.empty() || x < points.front().first || x > points.back().first)
        throw validation_error("value_at: abscissa outside polygon range");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (x <= points[i].first) {
            const auto& [x0, y0] = points[i - 1];
            const auto& [x1, y1] = points[i];
            if (x == x0) return y0;
            Rational y = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            y.canonicalize();
            return y;
        }
    }
    return points.back().second;
}

bool NewtonPolygon::is_convex() const {
    auto s = slopes();
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] < s[i - 1]) return false;
    return true;
}

NewtonPolygon polygon_from_slopes(const std::vector<Rational>& slopes) {
    NewtonPolygon poly;
    Rational y(0);
    poly.points.emplace_back(Rational(0), y);
    long x = 0;
    for (const auto& m : slopes) {
        y += m;
        y.canonicalize();
        poly.points.emplace_back(Rational(++x), y);
    }
    return poly;
}

NewtonPolygon lower_hull(std::vector<std::pair<Rational, Rational>> pts) {
    if (pts.empty()) throw validation_error("lower_hull: no points");
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].first == pts[i - 1].first)
            throw validation_error("lower_hull: duplicate abscissae");
    if (pts.front().first != 0)
        throw validation_error("lower_hull: first abscissa must be 0");

    // Monotone chain, lower envelope only. Collinear middle points are
    // removed (>= 0 cross product test).
    std::vector<std::pair<Rational, Rational>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // b above or on segment a-p?
            Rational cross = (b.first - a.first) * (p.second - a.second) -
                             (b.second - a.second) * (p.first - a.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    NewtonPolygon poly;
    poly.points = std::move(hull);
    return poly;
}

ComparisonReport compare_polygons(const NewtonPolygon& P, const NewtonPolygon& Q, long n_max) {
    if (P.x_max() < n_max || Q.x_max() < n_max)
        throw validation_error("compare_polygons: polygons do not cover [0, n_max]");
    ComparisonReport rep;
    rep.dominated = true;
    for (long n = 0; n <= n_max; ++n) {
        Rational pn = P.value_at(Rational(n));
        Rational qn = Q.value_at(Rational(n));
        if (pn < qn) rep.dominated = false;
        if (pn == qn) rep.contact_points.push_back(n);
    }
    return rep;
}

NewtonPolygon scale_polygon(const NewtonPolygon& P, const Rational& c) {
    if (c <= 0) throw validation_error("scale_polygon: scale must be positive");
    NewtonPolygon out;
    out.points.reserve(P.points.size());
    for (const auto& [x, y] : P.points) {
        Rational ys = y * c;
        ys.canonicalize();
        out.points.emplace_back(x, ys);
    }
    return out;
}

}  // namespace twistsum
