#pragma once

/// Grid polygon with a certified Frechet bound: trace the input boundary
/// through the unit squares centered on grid vertices, keep the visit order
/// as a cyclic chain with a mapping onto the perimeter, remove duplicate
/// vertices by cutting the shorter mapped side, and expand degenerate one-
/// or two-vertex chains into a 4-cycle. For a (sqrt2, beta)-narrow input the
/// result satisfies d_F(dP, dQ) <= (beta + sqrt2)/2.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gridify/geometry.hpp"
#include "gridify/grid.hpp"
#include "gridify/hausdorff_construct.hpp"
#include "gridify/narrowness.hpp"

namespace gridify {

struct Visit {
    GridVertex vertex;
    double start = 0;  // arc-length where this visit begins
};

/// Cyclic visit chain; visit i covers [entries[i].start, entries[i+1].start)
/// on the perimeter (cyclically).
struct VisitMapping {
    std::vector<Visit> entries;
    double perimeter = 0;

    double length_of(std::size_t i) const {
        double s = entries[i].start;
        double e = entries[(i + 1) % entries.size()].start;
        double d = e - s;
        if (d <= 0) d += perimeter;
        if (entries.size() == 1) d = perimeter;
        return d;
    }
};

namespace frechet_detail2 {

inline double to_half_grid(double v) {
    // distance to the nearest half-integer (square boundary line)
    return std::abs(v + 0.5 - std::round(v + 0.5));
}

/// True if the boundary runs through (or within 1e-9 of) a square corner or
/// a polygon vertex lies on a square boundary line.
inline bool degenerate_trace(const Polygon& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point& a = p.vertex(i);
        const Point& b = p.vertex(i + 1);
        if (to_half_grid(a.x) < 1e-9 || to_half_grid(a.y) < 1e-9) return true;
        // Line crossings landing on the perpendicular half-grid.
        if (std::abs(b.x - a.x) > 0) {
            int k0 = int(std::ceil(std::min(a.x, b.x) - 0.5));
            int k1 = int(std::floor(std::max(a.x, b.x) - 0.5));
            for (int k = k0; k <= k1; ++k) {
                double t = (k + 0.5 - a.x) / (b.x - a.x);
                if (t < 0 || t > 1) continue;
                if (to_half_grid(a.y + t * (b.y - a.y)) < 1e-9) return true;
            }
        }
        if (std::abs(b.y - a.y) > 0) {
            int k0 = int(std::ceil(std::min(a.y, b.y) - 0.5));
            int k1 = int(std::floor(std::max(a.y, b.y) - 0.5));
            for (int k = k0; k <= k1; ++k) {
                double t = (k + 0.5 - a.y) / (b.y - a.y);
                if (t < 0 || t > 1) continue;
                if (to_half_grid(a.x + t * (b.x - a.x)) < 1e-9) return true;
            }
        }
    }
    return false;
}

}  // namespace frechet_detail2

/// Cyclic chain of grid vertices whose squares the boundary visits, in
/// visiting order, with the perimeter partition. Inputs running through a
/// square corner are traced on a copy nudged by a deterministic 1e-7 offset.
inline VisitMapping trace_visits(const Polygon& input) {
    Polygon p = input;
    for (int attempt = 0; frechet_detail2::degenerate_trace(p); ++attempt) {
        if (attempt >= 16) throw std::runtime_error("could not resolve degenerate square trace");
        p = input.translated({(attempt + 1) * 1e-7, (attempt + 1) * 1.37e-7});
    }
    VisitMapping vm;
    vm.perimeter = p.perimeter_length();
    GridVertex cur{int(std::lround(p.vertex(0).x)), int(std::lround(p.vertex(0).y))};
    vm.entries.push_back({cur, 0.0});
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point& a = p.vertex(i);
        const Point& b = p.vertex(i + 1);
        double base = p.vertex_arc(i);
        double len = distance(a, b);
        struct Crossing {
            double t;
            int axis;  // 0: vertical line (col changes), 1: horizontal
            int dir;
        };
        std::vector<Crossing> cr;
        if (std::abs(b.x - a.x) > 0) {
            int k0 = int(std::ceil(std::min(a.x, b.x) - 0.5));
            int k1 = int(std::floor(std::max(a.x, b.x) - 0.5));
            for (int k = k0; k <= k1; ++k) {
                double t = (k + 0.5 - a.x) / (b.x - a.x);
                if (t <= 0 || t >= 1) continue;
                cr.push_back({t, 0, b.x > a.x ? 1 : -1});
            }
        }
        if (std::abs(b.y - a.y) > 0) {
            int k0 = int(std::ceil(std::min(a.y, b.y) - 0.5));
            int k1 = int(std::floor(std::max(a.y, b.y) - 0.5));
            for (int k = k0; k <= k1; ++k) {
                double t = (k + 0.5 - a.y) / (b.y - a.y);
                if (t <= 0 || t >= 1) continue;
                cr.push_back({t, 1, b.y > a.y ? 1 : -1});
            }
        }
        std::sort(cr.begin(), cr.end(), [](const Crossing& x, const Crossing& y) { return x.t < y.t; });
        for (const Crossing& c : cr) {
            if (c.axis == 0)
                cur.x += c.dir;
            else
                cur.y += c.dir;
            vm.entries.push_back({cur, base + c.t * len});
        }
    }
    // The walk ends back at the starting square; fold the wrap-around visit
    // into the last entry.
    if (vm.entries.size() > 1 && vm.entries.front().vertex == vm.entries.back().vertex)
        vm.entries.erase(vm.entries.begin());
    return vm;
}

/// Remove repeated vertices: for the first pair of occurrences (in chain
/// order), delete the side whose mapped perimeter length is smaller,
/// concatenating its coverage into the surviving occurrence.
inline VisitMapping remove_duplicates(VisitMapping vm) {
    auto cyc_len = [&](double s, double e) {
        double d = e - s;
        if (d < 0) d += vm.perimeter;
        return d;
    };
    for (;;) {
        std::size_t n = vm.entries.size();
        std::size_t di = n, dk = n;
        for (std::size_t i = 0; i < n && di == n; ++i)
            for (std::size_t k = i + 1; k < n; ++k)
                if (vm.entries[i].vertex == vm.entries[k].vertex) {
                    di = i;
                    dk = k;
                    break;
                }
        if (di == n) break;
        // Side A: visits di+1..dk (absorbed into di). Side B: dk+1..di
        // cyclically (absorbed into dk). Compare the strictly-between
        // mapped lengths.
        double lenA = cyc_len(vm.entries[(di + 1) % n].start, vm.entries[dk].start);
        double lenB = cyc_len(vm.entries[(dk + 1) % n].start, vm.entries[di].start);
        bool removeA;
        if (lenA != lenB) {
            removeA = lenA < lenB;
        } else {
            GridVertex fa = vm.entries[(di + 1) % n].vertex;
            GridVertex fb = vm.entries[(dk + 1) % n].vertex;
            removeA = fa < fb;
        }
        if (removeA) {
            vm.entries.erase(vm.entries.begin() + di + 1, vm.entries.begin() + dk + 1);
        } else {
            vm.entries.erase(vm.entries.begin() + dk + 1, vm.entries.end());
            vm.entries.erase(vm.entries.begin(), vm.entries.begin() + di + 1);
        }
    }
    return vm;
}

/// Final cycle: the chain itself when it has >= 3 vertices, else a 4-cycle
/// extended toward the nearby boundary so the extension maps within sqrt2.
inline GridCycle degenerate_expand(const VisitMapping& vm, const Polygon& p) {
    GridCycle cycle;
    if (vm.entries.size() >= 3) {
        for (const Visit& v : vm.entries) cycle.vertices.push_back(v.vertex);
        return cycle;
    }
    if (vm.entries.size() == 1) {
        GridVertex v = vm.entries[0].vertex;
        Point q = p.vertex(0);
        int dx = q.x >= v.x ? 1 : -1;
        int dy = q.y >= v.y ? 1 : -1;
        cycle.vertices = {v, {v.x + dx, v.y}, {v.x + dx, v.y + dy}, {v.x, v.y + dy}};
        return cycle;
    }
    GridVertex u = vm.entries[0].vertex, v = vm.entries[1].vertex;
    // The visits meet on the common square boundary; extend toward that
    // meeting point.
    Point meet = p.point_at(std::fmod(vm.entries[1].start, p.perimeter_length()));
    if (u.y == v.y) {
        int dy = meet.y >= u.y ? 1 : -1;
        cycle.vertices = {u, v, {v.x, v.y + dy}, {u.x, u.y + dy}};
    } else {
        int dx = meet.x >= u.x ? 1 : -1;
        cycle.vertices = {u, v, {v.x + dx, v.y}, {u.x + dx, u.y}};
    }
    return cycle;
}

struct FrechetBuild {
    VisitMapping chain;
    GridCycle cycle;
    CellSet cells;
    double beta_used = 0;
    double claimed_bound = 0;
};

inline FrechetBuild construct_frechet(const Polygon& p) {
    FrechetBuild b;
    b.chain = remove_duplicates(trace_visits(p));
    b.cycle = degenerate_expand(b.chain, p);
    // Normalize to counterclockwise.
    double area2 = 0;
    std::size_t n = b.cycle.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const GridVertex& a = b.cycle.vertices[i];
        const GridVertex& c = b.cycle.vertices[(i + 1) % n];
        area2 += double(a.x) * c.y - double(c.x) * a.y;
    }
    if (area2 < 0) std::reverse(b.cycle.vertices.begin() + 1, b.cycle.vertices.end());
    b.cells = fill_cycle(b.cycle);
    if (b.cells.empty())
        throw InvariantViolation("deduplicated chain encloses no cells");
    NarrownessResult nr = narrowness(p, std::sqrt(2.0));
    b.beta_used = std::max(std::sqrt(2.0), nr.beta);
    b.claimed_bound = (b.beta_used + std::sqrt(2.0)) / 2;
    return b;
}

}  // namespace gridify
