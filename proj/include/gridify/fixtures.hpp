#pragma once

/// Test polygon generators: the narrow comb that drives the Frechet lower
/// bound, seeded random simple polygons, thin zigzag slivers, and an
/// exhaustive optimal-grid-polygon enumerator for tiny windows.

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "gridify/frechet_distance.hpp"
#include "gridify/geometry.hpp"
#include "gridify/grid.hpp"
#include "gridify/metrics.hpp"

namespace gridify {

struct CombParams {
    double beta = 0;
    int n = 0;        // spike line vertex count, odd
    double phi = 0;   // minimum interior angle of the body
    int k = 0;        // body is a regular k-gon
    double side = 0;  // k-gon side length, (n-1)/sqrt(2)
};

inline CombParams comb_params(double beta) {
    if (!(beta > std::sqrt(2.0))) throw std::invalid_argument("beta must exceed sqrt(2)");
    CombParams cp;
    cp.beta = beta;
    cp.n = 2 * int(std::ceil(0.25 * std::sqrt(beta * beta - 2))) + 1;
    cp.phi = std::acos(1 - 4 / (beta * beta));
    cp.k = 4;
    while ((cp.k - 2) * M_PI / cp.k < cp.phi) ++cp.k;
    cp.side = (cp.n - 1) / std::sqrt(2.0);
    return cp;
}

/// Regular k-gon whose right-hand vertical edge is replaced by a line of
/// spikes p_1..p_n with p_i = (0, i/sqrt(2)) for odd i and
/// (sqrt(beta^2-2)/2, i/sqrt(2)) for even i. Every spike arm then has
/// length beta/2 and apex angle phi, so the polygon is (sqrt2, beta)-narrow
/// and the spike line's vertical span matches the replaced edge.
inline Polygon comb_polygon(double beta) {
    CombParams cp = comb_params(beta);
    double R = cp.side / (2 * std::sin(M_PI / cp.k));
    std::vector<Point> verts;
    // k-gon counterclockwise, first vertex at the top of the right edge.
    for (int j = 0; j < cp.k; ++j) {
        double a = M_PI / cp.k + 2 * M_PI * j / cp.k;
        verts.push_back({R * std::cos(a), R * std::sin(a)});
    }
    // Last k-gon vertex is the bottom of the right edge; append the spike
    // line's interior vertices so it closes at the first vertex.
    double X = R * std::cos(M_PI / cp.k);
    double spike = 0.5 * std::sqrt(beta * beta - 2);
    double y0 = -cp.side / 2 - 1 / std::sqrt(2.0);  // places p_1 at the bottom
    for (int i = 2; i <= cp.n - 1; ++i) {
        double x = (i % 2 == 0) ? spike : 0.0;
        verts.push_back({X + x, y0 + i / std::sqrt(2.0)});
    }
    return Polygon(verts);
}

/// Deterministic random simple polygon: uniform points untangled by 2-opt
/// edge uncrossing (total length strictly decreases, so it terminates).
inline Polygon random_simple_polygon(int n, unsigned seed) {
    if (n < 3) throw std::invalid_argument("need at least 3 vertices");
    for (unsigned s = seed;; ++s) {
        std::mt19937 rng(s);
        std::uniform_real_distribution<double> coord(0.0, 10.0);
        std::vector<Point> pts(n);
        for (Point& p : pts) p = {coord(rng), coord(rng)};
        long swaps = 0;
        bool crossing = true, gave_up = false;
        while (crossing && !gave_up) {
            crossing = false;
            for (int i = 0; i < n && !gave_up; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    if (j == i + 1 || (i == 0 && j == n - 1)) continue;
                    if (!detail::segments_intersect(pts[i], pts[(i + 1) % n], pts[j],
                                                    pts[(j + 1) % n]))
                        continue;
                    std::reverse(pts.begin() + i + 1, pts.begin() + j + 1);
                    crossing = true;
                    if (++swaps > 1000000) gave_up = true;
                    break;
                }
            }
        }
        if (gave_up) continue;
        try {
            return Polygon(pts);
        } catch (const std::invalid_argument&) {
            continue;  // degenerate layout; retry with the next seed
        }
    }
}

/// Zigzag strip of uniform width around a polyline centerline with the
/// given total length and number of turns.
inline Polygon thin_sliver(double length, double width, int turns) {
    if (width <= 0) throw std::invalid_argument("width must be positive");
    if (length <= 0) throw std::invalid_argument("length must be positive");
    if (turns < 0) throw std::invalid_argument("turns must be nonnegative");
    std::vector<Point> center;
    int segs = turns + 1;
    if (turns == 0) {
        center = {{0, 0}, {length, 0}};
    } else {
        double step = length / (segs * std::sqrt(2.0));
        for (int i = 0; i <= segs; ++i) center.push_back({i * step, (i % 2) * step});
    }
    // Miter offset on both sides.
    std::size_t m = center.size();
    std::vector<Point> normals(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        Point d = center[i + 1] - center[i];
        double l = d.norm();
        normals[i] = {-d.y / l, d.x / l};
    }
    auto offset_pt = [&](std::size_t i, double sign) {
        Point nsum;
        if (i == 0) {
            nsum = normals[0];
        } else if (i == m - 1) {
            nsum = normals[m - 2];
        } else {
            nsum = normals[i - 1] + normals[i];
            double l = nsum.norm();
            nsum = {nsum.x / l, nsum.y / l};
            double scale = 1 / dot(nsum, normals[i]);
            nsum = {nsum.x * scale, nsum.y * scale};
        }
        return center[i] + nsum * (sign * width / 2);
    };
    std::vector<Point> verts;
    for (std::size_t i = 0; i < m; ++i) verts.push_back(offset_pt(i, -1));
    for (std::size_t i = m; i-- > 0;) verts.push_back(offset_pt(i, 1));
    return Polygon(verts);
}

struct CellWindow {
    int cmin = 0, rmin = 0, cmax = 0, rmax = 0;
    int cells() const { return (cmax - cmin + 1) * (rmax - rmin + 1); }
};

enum class GridObjective { symdiff, hausdorff_boundary, frechet };

struct BruteForceResult {
    CellSet cells;
    double value = 0;
};

/// Exhaustively enumerate every nonempty simply connected, point-contact
/// free subset of the window and return the objective minimizer
/// (lexicographic tie-break on the sorted cell list).
inline BruteForceResult brute_force_best_grid_polygon(const Polygon& p, const CellWindow& w,
                                                      GridObjective objective,
                                                      double tol = 1e-4) {
    int nc = w.cells();
    if (nc > 16) throw std::invalid_argument("window larger than 16 cells");
    std::vector<Cell> all;
    for (int r = w.rmin; r <= w.rmax; ++r)
        for (int c = w.cmin; c <= w.cmax; ++c) all.push_back({c, r});
    BruteForceResult best;
    best.value = std::numeric_limits<double>::infinity();
    std::vector<Cell> best_sorted;
    for (unsigned mask = 1; mask < (1u << nc); ++mask) {
        CellSet s;
        for (int i = 0; i < nc; ++i)
            if (mask & (1u << i)) s.insert(all[i]);
        if (!is_simply_connected(s)) continue;
        if (!point_contacts(s).empty()) continue;
        double v = 0;
        switch (objective) {
            case GridObjective::symdiff:
                v = symmetric_difference_area(p, s);
                break;
            case GridObjective::hausdorff_boundary:
                v = hausdorff_boundary(p.vertices(), boundary_cycle(s).as_points(), tol).value;
                break;
            case GridObjective::frechet:
                v = frechet_closed(p.vertices(), boundary_cycle(s).as_points(), tol).value;
                break;
        }
        std::vector<Cell> sv = s.sorted();
        bool better = v < best.value - 1e-12 ||
                      (v <= best.value + 1e-12 && (best_sorted.empty() || sv < best_sorted));
        if (better) {
            best.value = std::min(v, best.value);
            best.cells = std::move(s);
            best_sorted = std::move(sv);
        }
    }
    return best;
}

/// Count of valid subsets in a window (used to sanity-check the enumerator).
inline std::size_t count_valid_grid_polygons(const CellWindow& w) {
    int nc = w.cells();
    if (nc > 16) throw std::invalid_argument("window larger than 16 cells");
    std::vector<Cell> all;
    for (int r = w.rmin; r <= w.rmax; ++r)
        for (int c = w.cmin; c <= w.cmax; ++c) all.push_back({c, r});
    std::size_t count = 0;
    for (unsigned mask = 1; mask < (1u << nc); ++mask) {
        CellSet s;
        for (int i = 0; i < nc; ++i)
            if (mask & (1u << i)) s.insert(all[i]);
        if (is_simply_connected(s) && point_contacts(s).empty()) ++count;
    }
    return count;
}

}  // namespace gridify
