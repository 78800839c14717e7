#pragma once

/// Planar geometry kernel: points, segments, simple polygons, areas,
/// containment, rectangle clipping and perimeter arithmetic.
///
/// Everything works in plain double precision. Inputs are expected at
/// "desk scale" (coordinates of a few hundred grid units at most), where
/// the boundary tolerance below dwarfs accumulated rounding error.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridify {

/// Tolerance for classifying a point as lying on a polygon boundary.
inline constexpr double kBoundaryTol = 1e-9;
/// Tolerance for area comparisons (module-inside-polygon tests).
inline constexpr double kAreaTol = 1e-9;

struct Point {
    double x = 0;
    double y = 0;

    constexpr Point() = default;
    constexpr Point(double px, double py) : x(px), y(py) {}

    constexpr Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    constexpr Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    constexpr Point operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Point&) const = default;

    double norm() const { return std::hypot(x, y); }
    double norm_linf() const { return std::max(std::abs(x), std::abs(y)); }
};

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

/// Axis-aligned rectangle [xmin,xmax] x [ymin,ymax].
struct Rect {
    double xmin = 0, ymin = 0, xmax = 0, ymax = 0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double area() const { return width() * height(); }
    Point center() const { return {(xmin + xmax) / 2, (ymin + ymax) / 2}; }
    bool contains(const Point& p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
    bool intersects(const Rect& o) const {
        return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
    }
    Rect inflated(double d) const { return {xmin - d, ymin - d, xmax + d, ymax + d}; }
};

/// Distance from point p to segment [a,b].
inline double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    Point ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 <= 0) return distance(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

/// Distance between two segments [a,b] and [c,d].
inline double segment_segment_distance(const Point& a, const Point& b,
                                       const Point& c, const Point& d) {
    // Proper crossing means distance zero.
    double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return 0.0;
    return std::min(std::min(point_segment_distance(c, a, b), point_segment_distance(d, a, b)),
                    std::min(point_segment_distance(a, c, d), point_segment_distance(b, c, d)));
}

namespace detail {

/// Proper or improper intersection test between segments [a,b] and [c,d].
inline bool segments_intersect(const Point& a, const Point& b,
                               const Point& c, const Point& d) {
    auto orient = [](const Point& p, const Point& q, const Point& r) {
        double v = cross(q - p, r - p);
        if (v > 0) return 1;
        if (v < 0) return -1;
        return 0;
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    auto on_seg = [](const Point& p, const Point& q, const Point& r) {
        return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) &&
               std::min(p.y, r.y) <= q.y && q.y <= std::max(p.y, r.y);
    };
    if (o1 == 0 && on_seg(a, c, b)) return true;
    if (o2 == 0 && on_seg(a, d, b)) return true;
    if (o3 == 0 && on_seg(c, a, d)) return true;
    if (o4 == 0 && on_seg(c, b, d)) return true;
    return false;
}

}  // namespace detail

/// Validity test for a raw vertex list: no two non-adjacent edges intersect,
/// adjacent edges meet only at the shared vertex.
inline bool is_simple(const std::vector<Point>& verts) {
    std::size_t n = verts.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (verts[i] == verts[(i + 1) % n]) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        Point a = verts[i], b = verts[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            Point c = verts[j], d = verts[(j + 1) % n];
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                // Shared endpoint is fine; any further contact is not.
                const Point& shared = (j == i + 1) ? b : a;
                const Point& afar = (j == i + 1) ? a : b;
                const Point& cfar = (j == i + 1) ? d : c;
                if (std::abs(cross(afar - shared, cfar - shared)) <= 0 &&
                    dot(afar - shared, cfar - shared) > 0)
                    return false;  // collinear overlap
                continue;
            }
            if (detail::segments_intersect(a, b, c, d)) return false;
        }
    }
    return true;
}

enum class PointLocation { inside, boundary, outside };

/// Cyclic arc-length position along a polygon boundary.
struct PathPosition {
    double arc_length = 0;
};

/// Simple polygon with CCW orientation, normalized at construction.
class Polygon {
public:
    explicit Polygon(std::vector<Point> verts) {
        // Drop duplicate consecutive vertices.
        std::vector<Point> cleaned;
        for (const Point& p : verts) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw std::invalid_argument("polygon vertex not finite");
            if (cleaned.empty() || distance(cleaned.back(), p) > kBoundaryTol)
                cleaned.push_back(p);
        }
        while (cleaned.size() > 1 && distance(cleaned.front(), cleaned.back()) <= kBoundaryTol)
            cleaned.pop_back();
        if (cleaned.size() < 3) throw std::invalid_argument("polygon needs >= 3 vertices");
        double a2 = 0;  // twice the signed area
        for (std::size_t i = 0; i < cleaned.size(); ++i)
            a2 += cross(cleaned[i], cleaned[(i + 1) % cleaned.size()]);
        if (a2 < 0) std::reverse(cleaned.begin(), cleaned.end());
        if (std::abs(a2) <= 0) throw std::invalid_argument("polygon has zero area");
        if (!is_simple(cleaned)) throw std::invalid_argument("polygon boundary is not simple");
        verts_ = std::move(cleaned);
        cum_.resize(verts_.size() + 1);
        cum_[0] = 0;
        for (std::size_t i = 0; i < verts_.size(); ++i)
            cum_[i + 1] = cum_[i] + distance(verts_[i], verts_[(i + 1) % verts_.size()]);
    }

    const std::vector<Point>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    const Point& vertex(std::size_t i) const { return verts_[i % verts_.size()]; }
    double perimeter_length() const { return cum_.back(); }

    /// Arc-length offset of vertex i from vertex 0.
    double vertex_arc(std::size_t i) const { return cum_[i]; }

    /// Point at cyclic arc-length position s.
    Point point_at(double s) const {
        double L = perimeter_length();
        s = std::fmod(s, L);
        if (s < 0) s += L;
        auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
        std::size_t i = (it == cum_.begin()) ? 0 : (it - cum_.begin() - 1);
        if (i >= verts_.size()) i = verts_.size() - 1;
        double seg_len = cum_[i + 1] - cum_[i];
        double t = seg_len > 0 ? (s - cum_[i]) / seg_len : 0;
        return verts_[i] + (vertex(i + 1) - verts_[i]) * t;
    }

    Rect bounding_box() const {
        Rect r{verts_[0].x, verts_[0].y, verts_[0].x, verts_[0].y};
        for (const Point& p : verts_) {
            r.xmin = std::min(r.xmin, p.x);
            r.xmax = std::max(r.xmax, p.x);
            r.ymin = std::min(r.ymin, p.y);
            r.ymax = std::max(r.ymax, p.y);
        }
        return r;
    }

    Polygon translated(const Point& v) const {
        std::vector<Point> vs = verts_;
        for (Point& p : vs) p = p + v;
        return Polygon(std::move(vs));
    }

    Polygon scaled(double s) const {
        std::vector<Point> vs = verts_;
        for (Point& p : vs) p = p * s;
        return Polygon(std::move(vs));
    }

private:
    std::vector<Point> verts_;
    std::vector<double> cum_;  // cumulative arc length, cum_[n] = perimeter
};

/// Positive shoelace area.
inline double polygon_area(const Polygon& p) {
    double a2 = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        a2 += cross(p.vertex(i), p.vertex(i + 1));
    return a2 / 2;
}

/// Even-odd classification with boundary tolerance kBoundaryTol.
inline PointLocation point_in_polygon(const Point& pt, const Polygon& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (point_segment_distance(pt, p.vertex(i), p.vertex(i + 1)) <= kBoundaryTol)
            return PointLocation::boundary;
    bool in = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point& a = p.vertex(i);
        const Point& b = p.vertex(i + 1);
        if ((a.y > pt.y) != (b.y > pt.y)) {
            double xcross = a.x + (pt.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (xcross > pt.x) in = !in;
        }
    }
    return in ? PointLocation::inside : PointLocation::outside;
}

namespace detail {

/// Clip a closed vertex ring against the half-plane keep(p) >= 0.
template <typename F>
inline void clip_halfplane(std::vector<Point>& ring, F&& signed_dist) {
    std::vector<Point> out;
    out.reserve(ring.size() + 4);
    std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& cur = ring[i];
        const Point& nxt = ring[(i + 1) % n];
        double dc = signed_dist(cur), dn = signed_dist(nxt);
        if (dc >= 0) out.push_back(cur);
        if ((dc > 0 && dn < 0) || (dc < 0 && dn > 0)) {
            double t = dc / (dc - dn);
            out.push_back(cur + (nxt - cur) * t);
        }
    }
    ring = std::move(out);
}

}  // namespace detail

/// Area of the intersection of polygon p with an axis-aligned rectangle,
/// by Sutherland-Hodgman clipping against the four rectangle edges. The
/// clip window is convex, so degenerate zero-width bridges in the clipped
/// ring do not change the signed area.
inline double clip_area(const Polygon& p, const Rect& r) {
    if (r.width() <= 0 || r.height() <= 0)
        throw std::invalid_argument("degenerate clip rectangle");
    Rect bb = p.bounding_box();
    if (!bb.intersects(r)) return 0.0;
    std::vector<Point> ring = p.vertices();
    detail::clip_halfplane(ring, [&](const Point& q) { return q.x - r.xmin; });
    if (ring.empty()) return 0.0;
    detail::clip_halfplane(ring, [&](const Point& q) { return r.xmax - q.x; });
    if (ring.empty()) return 0.0;
    detail::clip_halfplane(ring, [&](const Point& q) { return q.y - r.ymin; });
    if (ring.empty()) return 0.0;
    detail::clip_halfplane(ring, [&](const Point& q) { return r.ymax - q.y; });
    if (ring.size() < 3) return 0.0;
    double a2 = 0;
    for (std::size_t i = 0; i < ring.size(); ++i)
        a2 += cross(ring[i], ring[(i + 1) % ring.size()]);
    return std::max(0.0, a2 / 2);
}

/// Shortest distance between two boundary positions along the boundary.
inline double perimeter_distance(const Polygon& p, PathPosition a, PathPosition b) {
    double L = p.perimeter_length();
    double d = std::fmod(std::abs(a.arc_length - b.arc_length), L);
    return std::min(d, L - d);
}

/// True if any edge of the polygon intersects the rectangle.
inline bool boundary_intersects_rect(const Polygon& p, const Rect& r) {
    Point c0{r.xmin, r.ymin}, c1{r.xmax, r.ymin}, c2{r.xmax, r.ymax}, c3{r.xmin, r.ymax};
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point& a = p.vertex(i);
        const Point& b = p.vertex(i + 1);
        if (r.contains(a) || r.contains(b)) return true;
        if (detail::segments_intersect(a, b, c0, c1) || detail::segments_intersect(a, b, c1, c2) ||
            detail::segments_intersect(a, b, c2, c3) || detail::segments_intersect(a, b, c3, c0))
            return true;
    }
    return false;
}

}  // namespace gridify
