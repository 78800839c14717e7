#pragma once

// Shared test oracles: independent reimplementations used to cross-check
// the library (Monte-Carlo areas, ray casting, dense-sampling Hausdorff,
// quadratic point-contact scan) plus small corpus generators.

#include <random>
#include <vector>

#include "gridify/fixtures.hpp"
#include "gridify/geometry.hpp"
#include "gridify/grid.hpp"

namespace testing_oracles {

using namespace gridify;

// Winding-number containment, written independently of the library's
// even-odd crossing test.
inline bool winding_inside(const Point& pt, const std::vector<Point>& ring) {
    int winding = 0;
    std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        if (a.y <= pt.y) {
            if (b.y > pt.y && cross(b - a, pt - a) > 0) ++winding;
        } else {
            if (b.y <= pt.y && cross(b - a, pt - a) < 0) --winding;
        }
    }
    return winding != 0;
}

// Monte-Carlo estimate of area(p ∩ r).
inline double mc_clip_area(const Polygon& p, const Rect& r, int samples, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(r.xmin, r.xmax), uy(r.ymin, r.ymax);
    int hits = 0;
    for (int i = 0; i < samples; ++i)
        if (winding_inside({ux(rng), uy(rng)}, p.vertices())) ++hits;
    return r.area() * hits / samples;
}

inline double mc_area(const Polygon& p, int samples, unsigned seed) {
    return mc_clip_area(p, p.bounding_box(), samples, seed);
}

// Monte-Carlo symmetric difference between polygon and cell set.
inline double mc_symdiff(const Polygon& p, const CellSet& q, int samples, unsigned seed) {
    Rect bb = p.bounding_box();
    int cmin, rmin, cmax, rmax;
    q.bounds(cmin, rmin, cmax, rmax);
    bb.xmin = std::min(bb.xmin, double(cmin));
    bb.ymin = std::min(bb.ymin, double(rmin));
    bb.xmax = std::max(bb.xmax, double(cmax + 1));
    bb.ymax = std::max(bb.ymax, double(rmax + 1));
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(bb.xmin, bb.xmax), uy(bb.ymin, bb.ymax);
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
        Point pt{ux(rng), uy(rng)};
        bool in_p = winding_inside(pt, p.vertices());
        bool in_q = q.contains({int(std::floor(pt.x)), int(std::floor(pt.y))});
        if (in_p != in_q) ++hits;
    }
    return bb.area() * hits / samples;
}

// Dense-sampling directed Hausdorff between closed rings.
inline double dense_hausdorff_directed(const std::vector<Point>& a, const std::vector<Point>& b,
                                       int samples_per_unit = 200) {
    auto ring_point = [](const std::vector<Point>& ring, double s) {
        std::size_t n = ring.size();
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) total += distance(ring[i], ring[(i + 1) % n]);
        s = std::fmod(s, total);
        for (std::size_t i = 0; i < n; ++i) {
            double l = distance(ring[i], ring[(i + 1) % n]);
            if (s <= l) return ring[i] + (ring[(i + 1) % n] - ring[i]) * (l > 0 ? s / l : 0);
            s -= l;
        }
        return ring[0];
    };
    double la = 0;
    for (std::size_t i = 0; i < a.size(); ++i) la += distance(a[i], a[(i + 1) % a.size()]);
    int m = std::max(16, int(la * samples_per_unit));
    double worst = 0;
    for (int i = 0; i < m; ++i) {
        Point p = ring_point(a, la * i / m);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j)
            best = std::min(best, point_segment_distance(p, b[j], b[(j + 1) % b.size()]));
        worst = std::max(worst, best);
    }
    return worst;
}

// Quadratic point-contact scan.
inline std::vector<std::pair<Cell, Cell>> point_contacts_oracle(const CellSet& s) {
    std::vector<Cell> cells = s.sorted();
    std::vector<std::pair<Cell, Cell>> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            const Cell& a = cells[i];
            const Cell& b = cells[j];
            if (std::abs(a.col - b.col) != 1 || std::abs(a.row - b.row) != 1) continue;
            if (s.contains({a.col, b.row}) || s.contains({b.col, a.row})) continue;
            out.emplace_back(std::min(a, b), std::max(a, b));
        }
    std::sort(out.begin(), out.end());
    return out;
}

// Random simply connected, contact-free cell blob grown cell by cell.
inline CellSet random_valid_cellset(int target, unsigned seed) {
    std::mt19937 rng(seed);
    CellSet s;
    s.insert({0, 0});
    while (int(s.size()) < target) {
        std::vector<Cell> frontier;
        for (const Cell& c : s.sorted())
            for (const Cell& n : {Cell{c.col + 1, c.row}, Cell{c.col - 1, c.row},
                                  Cell{c.col, c.row + 1}, Cell{c.col, c.row - 1}})
                if (!s.contains(n)) frontier.push_back(n);
        std::shuffle(frontier.begin(), frontier.end(), rng);
        bool grew = false;
        for (const Cell& n : frontier) {
            CellSet next = s;
            next.insert(n);
            if (is_simply_connected(next) && point_contacts(next).empty()) {
                s = std::move(next);
                grew = true;
                break;
            }
        }
        if (!grew) break;
    }
    return s;
}

// Thin diagonal quadrilateral spanning the 2x2 window, used for the
// lower-bound enumeration check.
inline Polygon diagonal_sliver() {
    double d = 0.005, w = 0.01;
    double h = w / (2 * std::sqrt(2.0));
    Point a{d, d}, b{2 - d, 2 - d}, off{-h, h};
    return Polygon({a + off, a - off, b - off, b + off});
}

}  // namespace testing_oracles
