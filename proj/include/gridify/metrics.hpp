#pragma once

/// Certified similarity measurements: directed/undirected Hausdorff distance
/// between closed boundaries and between regions, and symmetric difference
/// between a polygon and a cell set.
///
/// Hausdorff values are computed by adaptive subdivision. Distance-to-a-set
/// is 1-Lipschitz along any segment, which yields certified upper bounds on
/// every unexplored piece; refinement stops once the global gap is below the
/// requested tolerance.

#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>
#include <vector>

#include "gridify/geometry.hpp"
#include "gridify/grid.hpp"
#include "gridify/segment_index.hpp"

namespace gridify {

struct DistanceResult {
    double value = 0;        // best estimate
    double error_bound = 0;  // |value - true| <= error_bound
};

namespace detail {

inline double tent_upper(double d0, double d1, double len) {
    return (d0 + d1 + len) / 2;
}

}  // namespace detail

/// max over the closed polyline `a` of the distance to `b`, within tol.
/// If `threshold` >= 0, stops early once the answer is certified on one side
/// of the threshold (value/error still honest for that purpose).
inline DistanceResult hausdorff_boundary_directed(const std::vector<Point>& a,
                                                 const SegmentIndex& b, double tol,
                                                 double threshold = -1) {
    if (tol <= 0) throw std::invalid_argument("tol must be positive");
    auto eval = [&](const Point& p) { return b.distance(p); };
    double lower = 0;
    std::size_t n = a.size();
    std::vector<double> vert_d(n);
    for (std::size_t i = 0; i < n; ++i) {
        vert_d[i] = eval(a[i]);
        lower = std::max(lower, vert_d[i]);
    }
    struct Piece {
        double upper;
        Point p0, p1;
        double d0, d1;
        bool operator<(const Piece& o) const { return upper < o.upper; }
    };
    std::priority_queue<Piece> pieces;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = a[i];
        const Point& q = a[(i + 1) % n];
        double up = detail::tent_upper(vert_d[i], vert_d[(i + 1) % n], distance(p, q));
        pieces.push({up, p, q, vert_d[i], vert_d[(i + 1) % n]});
    }
    while (!pieces.empty()) {
        if (threshold >= 0 &&
            (lower > threshold || pieces.top().upper <= threshold))
            break;
        Piece top = pieces.top();
        if (top.upper - lower <= tol) break;
        pieces.pop();
        Point mid = (top.p0 + top.p1) * 0.5;
        double dm = eval(mid);
        lower = std::max(lower, dm);
        double half = distance(top.p0, mid);
        double u0 = detail::tent_upper(top.d0, dm, half);
        double u1 = detail::tent_upper(dm, top.d1, half);
        if (u0 > lower) pieces.push({u0, top.p0, mid, top.d0, dm});
        if (u1 > lower) pieces.push({u1, mid, top.p1, dm, top.d1});
    }
    double upper = pieces.empty() ? lower : std::max(lower, pieces.top().upper);
    return {(lower + upper) / 2, (upper - lower) / 2};
}

inline DistanceResult hausdorff_boundary_directed(const std::vector<Point>& a,
                                                 const std::vector<Point>& b, double tol,
                                                 double threshold = -1) {
    SegmentIndex idx(b);
    return hausdorff_boundary_directed(a, idx, tol, threshold);
}

/// Undirected boundary Hausdorff distance.
inline DistanceResult hausdorff_boundary(const std::vector<Point>& a,
                                         const std::vector<Point>& b, double tol) {
    DistanceResult ab = hausdorff_boundary_directed(a, b, tol);
    DistanceResult ba = hausdorff_boundary_directed(b, a, tol);
    if (ab.value >= ba.value) return ab;
    return ba;
}

/// A region is either a simple polygon or a finite union of unit cells.
class RegionRef {
public:
    explicit RegionRef(const Polygon& p)
        : poly_(&p), index_(std::make_shared<SegmentIndex>(p.vertices())), bbox_(p.bounding_box()) {}
    explicit RegionRef(const CellSet& s) : cells_(&s) {
        int cmin, rmin, cmax, rmax;
        s.bounds(cmin, rmin, cmax, rmax);
        bbox_ = Rect{double(cmin), double(rmin), double(cmax + 1), double(rmax + 1)};
    }

    const Rect& bbox() const { return bbox_; }

    bool contains(const Point& p) const {
        if (poly_) return point_in_polygon(p, *poly_) != PointLocation::outside;
        Cell c{int(std::floor(p.x)), int(std::floor(p.y))};
        // A point on a shared edge counts if any incident cell is present.
        for (int dc = -1; dc <= 0; ++dc)
            for (int dr = -1; dr <= 0; ++dr) {
                Cell cc{c.col + dc, c.row + dr};
                if (cells_->contains(cc) && cell_rect(cc).contains(p)) return true;
            }
        return false;
    }

    /// Exact rectangle-region intersection test (no false positives).
    bool intersects(const Rect& r) const {
        if (!bbox_.intersects(r)) return false;
        if (poly_) {
            if (boundary_intersects_rect(*poly_, r)) return true;
            return point_in_polygon(r.center(), *poly_) == PointLocation::inside;
        }
        int c0 = int(std::floor(r.xmin)), c1 = int(std::floor(r.xmax));
        int r0 = int(std::floor(r.ymin)), r1 = int(std::floor(r.ymax));
        for (int c = c0; c <= c1; ++c)
            for (int rr = r0; rr <= r1; ++rr)
                if (cells_->contains({c, rr}) && cell_rect({c, rr}).intersects(r)) return true;
        return false;
    }

    /// Distance from p to the region (0 inside, else distance to boundary).
    double distance_to(const Point& p) const {
        if (contains(p)) return 0;
        if (poly_) return index_->distance(p);
        // Expanding search over nearby cells.
        Cell c{int(std::floor(p.x)), int(std::floor(p.y))};
        double best = std::numeric_limits<double>::infinity();
        for (int radius = 0;; ++radius) {
            if (std::isfinite(best) && double(radius - 1) > best) break;
            bool found = false;
            for (int dc = -radius; dc <= radius; ++dc)
                for (int dr = -radius; dr <= radius; ++dr) {
                    if (std::max(std::abs(dc), std::abs(dr)) != radius) continue;
                    Cell cc{c.col + dc, c.row + dr};
                    if (!cells_->contains(cc)) continue;
                    found = true;
                    Rect cr = cell_rect(cc);
                    double dx = std::max({cr.xmin - p.x, 0.0, p.x - cr.xmax});
                    double dy = std::max({cr.ymin - p.y, 0.0, p.y - cr.ymax});
                    best = std::min(best, std::hypot(dx, dy));
                }
            (void)found;
            if (!std::isfinite(best) && radius > 2 + int(bbox_.width() + bbox_.height())) {
                // Out of range of the set; distance to bbox corner region.
                for (const Cell& cc : cells_->cells()) {
                    Rect cr = cell_rect(cc);
                    double dx = std::max({cr.xmin - p.x, 0.0, p.x - cr.xmax});
                    double dy = std::max({cr.ymin - p.y, 0.0, p.y - cr.ymax});
                    best = std::min(best, std::hypot(dx, dy));
                }
                break;
            }
        }
        return best;
    }

    /// Distance from p to the region's boundary, measured from either side.
    double boundary_distance(const Point& p) const {
        if (poly_) return index_->distance(p);
        if (!contains(p)) return distance_to(p);
        // Inside: expanding search over empty cells (the complement).
        Cell c{int(std::floor(p.x)), int(std::floor(p.y))};
        double best = std::numeric_limits<double>::infinity();
        for (int radius = 0;; ++radius) {
            if (double(radius - 1) > best) break;
            for (int dc = -radius; dc <= radius; ++dc)
                for (int dr = -radius; dr <= radius; ++dr) {
                    if (std::max(std::abs(dc), std::abs(dr)) != radius) continue;
                    Cell cc{c.col + dc, c.row + dr};
                    if (cells_->contains(cc)) continue;
                    Rect cr = cell_rect(cc);
                    double dx = std::max({cr.xmin - p.x, 0.0, p.x - cr.xmax});
                    double dy = std::max({cr.ymin - p.y, 0.0, p.y - cr.ymax});
                    best = std::min(best, std::hypot(dx, dy));
                }
        }
        return best;
    }

    /// Closed boundary ring(s) flattened; for a cell set this is the outer
    /// boundary cycle (requires validity).
    std::vector<Point> boundary_ring() const {
        if (poly_) return poly_->vertices();
        return boundary_cycle(*cells_).as_points();
    }

private:
    const Polygon* poly_ = nullptr;
    const CellSet* cells_ = nullptr;
    std::shared_ptr<SegmentIndex> index_;
    Rect bbox_;
};

/// Directed region Hausdorff distance: max over region x of the distance to
/// region y, by quadtree branch-and-bound with Lipschitz pruning.
inline DistanceResult hausdorff_region_directed(const RegionRef& x, const RegionRef& y,
                                                double tol, double threshold = -1) {
    if (tol <= 0) throw std::invalid_argument("tol must be positive");
    struct Node {
        double upper;
        Rect r;
        bool operator<(const Node& o) const { return upper < o.upper; }
    };
    auto node_of = [&](const Rect& r) {
        Point c = r.center();
        double rad = std::hypot(r.width(), r.height()) / 2;
        double d = y.distance_to(c);
        // Inside y, a box whose circumradius stays clear of y's boundary
        // lies entirely in y and contributes 0 — that keeps the quadtree
        // from refining the whole interior when the true maximum is small.
        double upper = d > 0 ? d + rad : std::max(0.0, rad - y.boundary_distance(c));
        return Node{upper, r};
    };
    std::priority_queue<Node> heap;
    double lower = 0;
    {
        Rect bb = x.bbox();
        // Seed with a grid of roughly unit nodes for tighter starting bounds.
        int nx = std::max(1, int(std::ceil(bb.width())));
        int ny = std::max(1, int(std::ceil(bb.height())));
        double sx = bb.width() / nx, sy = bb.height() / ny;
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                Rect r{bb.xmin + i * sx, bb.ymin + j * sy,
                       bb.xmin + (i + 1) * sx, bb.ymin + (j + 1) * sy};
                if (!x.intersects(r)) continue;
                Node nd = node_of(r);
                Point c = r.center();
                if (x.contains(c)) lower = std::max(lower, y.distance_to(c));
                heap.push(nd);
            }
    }
    while (!heap.empty()) {
        Node top = heap.top();
        if (top.upper - lower <= tol) break;
        if (threshold >= 0 && (lower > threshold || top.upper <= threshold)) break;
        heap.pop();
        Rect r = top.r;
        double diag = std::hypot(r.width(), r.height());
        if (diag <= tol / 2) {
            // r intersects x and every point of r is within diag of some
            // x-point in r, so the center value is a valid lower bound
            // up to diag.
            lower = std::max(lower, y.distance_to(r.center()) - diag);
            continue;
        }
        Point c = r.center();
        Rect quads[4] = {{r.xmin, r.ymin, c.x, c.y},
                         {c.x, r.ymin, r.xmax, c.y},
                         {r.xmin, c.y, c.x, r.ymax},
                         {c.x, c.y, r.xmax, r.ymax}};
        for (const Rect& q : quads) {
            if (!x.intersects(q)) continue;
            Node nd = node_of(q);
            Point qc = q.center();
            if (x.contains(qc)) lower = std::max(lower, y.distance_to(qc));
            if (nd.upper > lower) heap.push(nd);
        }
    }
    double upper = heap.empty() ? lower : std::max(lower, heap.top().upper);
    return {(lower + upper) / 2, (upper - lower) / 2};
}

/// Area of the symmetric difference between polygon p and cell set q.
inline double symmetric_difference_area(const Polygon& p, const CellSet& q) {
    double overlap = 0;
    for (const Cell& c : q.cells()) overlap += clip_area(p, cell_rect(c));
    return polygon_area(p) + double(q.size()) - 2 * overlap;
}

/// Symmetric difference normalized by the input polygon's area.
inline double normalized_symmetric_difference(const Polygon& p, const CellSet& q) {
    return symmetric_difference_area(p, q) / polygon_area(p);
}

}  // namespace gridify
