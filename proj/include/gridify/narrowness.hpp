#pragma once

/// alpha-narrowness of a simple polygon: the largest perimeter distance
/// between two boundary points at Euclidean distance at most alpha. The
/// maximum is attained either with the Euclidean distance exactly alpha
/// (with one point at a vertex, or both points equidistant from the
/// intersection of their supporting lines) or with perimeter distance
/// exactly half the perimeter; each case yields a finite candidate family
/// over edge pairs, giving a quadratic-time algorithm.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gridify/geometry.hpp"
#include "gridify/grid.hpp"

namespace gridify {

struct NarrownessWitness {
    Point p, q;
    PathPosition p_pos, q_pos;
    double euclid = 0;  // <= alpha
    double along = 0;   // perimeter distance |pq|
};

struct NarrownessResult {
    double beta = 0;
    NarrownessWitness witness;
};

namespace narrowness_detail {

struct Candidate {
    Point p, q;
    double sp, sq;  // arc-length positions
};

/// t-interval of edge a->b inside the closed disk(center, radius).
inline std::optional<std::pair<double, double>> edge_disk_interval(const Point& a, const Point& b,
                                                                  const Point& center,
                                                                  double radius) {
    Point d = b - a, f = a - center;
    double A = dot(d, d);
    double B = dot(f, d);
    double Cq = dot(f, f) - radius * radius;
    if (A < 1e-18) {
        if (Cq <= 0) return std::pair{0.0, 1.0};
        return std::nullopt;
    }
    double disc = B * B - A * Cq;
    if (disc < 0) return std::nullopt;
    double s = std::sqrt(disc);
    double t0 = std::max((-B - s) / A, 0.0);
    double t1 = std::min((-B + s) / A, 1.0);
    if (t0 > t1) return std::nullopt;
    return std::pair{t0, t1};
}

}  // namespace narrowness_detail

inline NarrownessResult narrowness(const Polygon& poly, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
    using narrowness_detail::Candidate;
    std::size_t n = poly.size();
    double L = poly.perimeter_length();
    std::vector<Candidate> cands;
    auto arc_on_edge = [&](std::size_t i, double t) {
        double a0 = poly.vertex_arc(i);
        double len = distance(poly.vertex(i), poly.vertex(i + 1));
        return std::fmod(a0 + t * len, L);
    };

    // (1) One point at a vertex; the other at an extreme of edge-disk
    // overlap.
    for (std::size_t iv = 0; iv < n; ++iv) {
        const Point& v = poly.vertex(iv);
        double sv = poly.vertex_arc(iv);
        for (std::size_t ie = 0; ie < n; ++ie) {
            auto iv2 = narrowness_detail::edge_disk_interval(poly.vertex(ie), poly.vertex(ie + 1),
                                                            v, alpha);
            if (!iv2) continue;
            for (double t : {iv2->first, iv2->second}) {
                Point q = poly.vertex(ie) + (poly.vertex(ie + 1) - poly.vertex(ie)) * t;
                cands.push_back({v, q, sv, arc_on_edge(ie, t)});
            }
        }
    }

    // (2) Both points interior to nonparallel edges, equidistant from the
    // supporting-line intersection, at Euclidean distance exactly alpha.
    for (std::size_t i = 0; i < n; ++i) {
        Point a1 = poly.vertex(i), b1 = poly.vertex(i + 1);
        Point d1 = b1 - a1;
        double l1 = d1.norm();
        for (std::size_t j = i + 1; j < n; ++j) {
            Point a2 = poly.vertex(j), b2 = poly.vertex(j + 1);
            Point d2 = b2 - a2;
            double l2 = d2.norm();
            double denom = cross(d1, d2);
            if (std::abs(denom) < 1e-12 * l1 * l2) continue;  // parallel
            double tx = cross(a2 - a1, d2) / denom;
            Point x = a1 + d1 * tx;  // line intersection
            Point u1 = d1 * (1 / l1), u2 = d2 * (1 / l2);
            for (int s1 : {-1, 1})
                for (int s2 : {-1, 1}) {
                    Point diff{s1 * u1.x - s2 * u2.x, s1 * u1.y - s2 * u2.y};
                    double dn = diff.norm();
                    if (dn < 1e-12) continue;
                    double d = alpha / dn;
                    Point p = x + u1 * (s1 * d);
                    Point q = x + u2 * (s2 * d);
                    double tp = dot(p - a1, d1) / (l1 * l1);
                    double tq = dot(q - a2, d2) / (l2 * l2);
                    if (tp < -1e-9 || tp > 1 + 1e-9 || tq < -1e-9 || tq > 1 + 1e-9) continue;
                    tp = std::clamp(tp, 0.0, 1.0);
                    tq = std::clamp(tq, 0.0, 1.0);
                    cands.push_back({p, q, arc_on_edge(i, tp), arc_on_edge(j, tq)});
                }
        }
    }

    // (3) Pairs realizing perimeter distance exactly |P|/2 while staying
    // within alpha; constant-time feasibility per ordered edge pair.
    for (std::size_t i = 0; i < n; ++i) {
        Point t = poly.vertex(i), u = poly.vertex(i + 1);
        double lu = distance(t, u);
        double arc_u = std::fmod(poly.vertex_arc(i) + lu, L);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Point v = poly.vertex(j), w = poly.vertex(j + 1);
            double lv = distance(v, w);
            double uv = poly.vertex_arc(j) - arc_u;
            if (uv < 0) uv += L;
            double R = lu / lv;
            double C = (L / 2 - lu - uv) / lv;
            Point c = t - v + (v - w) * C;
            Point r = u - t + (v - w) * R;  // u + vR - t - wR
            double A = dot(r, r);
            double B = dot(c, r);
            double K = dot(c, c) - alpha * alpha;
            double lo, hi;
            if (A < 1e-18) {
                if (K > 0) continue;
                lo = 0;
                hi = 1;
            } else {
                double disc = B * B - A * K;
                if (disc < -1e-12) continue;
                double s = std::sqrt(std::max(disc, 0.0));
                lo = std::max((-B - s) / A, 0.0);
                hi = std::min((-B + s) / A, 1.0);
                if (lo > hi) continue;
            }
            // lambda_q = C + R lambda_p must also land in [0,1].
            double qlo = std::max(lo, (0 - C) / R);
            double qhi = std::min(hi, (1 - C) / R);
            if (qlo > qhi) continue;
            double lp = (qlo + qhi) / 2;
            double lq = C + R * lp;
            if (lq < -1e-9 || lq > 1 + 1e-9) continue;
            lq = std::clamp(lq, 0.0, 1.0);
            Point p = t + (u - t) * lp;
            Point q = v + (w - v) * lq;
            cands.push_back({p, q, arc_on_edge(i, lp), arc_on_edge(j, lq)});
        }
    }

    NarrownessResult best;
    for (const Candidate& cd : cands) {
        double euclid = distance(cd.p, cd.q);
        if (euclid > alpha + 1e-9) continue;
        double along = perimeter_distance(poly, {cd.sp}, {cd.sq});
        if (along > best.beta) {
            best.beta = along;
            best.witness = {cd.p, cd.q, {cd.sp}, {cd.sq}, euclid, along};
        }
    }
    return best;
}

/// Sampling estimate of the alpha-narrowness with error O(step): boundary
/// points at arc-length spacing `step`, pairs found through a uniform grid
/// hash, pruned by the cyclic index gap. Pairs are accepted up to
/// alpha + spacing: the admissible set is closed, so an optimum attained
/// at Euclidean distance exactly alpha (opposite parallel edges, say) has
/// its nearest sample pair slightly beyond alpha, and rejecting it would
/// leave an O(1) gap no step refinement could close.
inline double narrowness_bruteforce(const Polygon& poly, double alpha, double step) {
    if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
    if (step <= 0) throw std::invalid_argument("step must be positive");
    double L = poly.perimeter_length();
    std::size_t N = std::max<std::size_t>(4, std::size_t(std::ceil(L / step)));
    double h = L / double(N);
    double reach = alpha + h;
    std::vector<Point> pts(N);
    for (std::size_t k = 0; k < N; ++k) pts[k] = poly.point_at(k * h);
    std::unordered_map<Cell, std::vector<std::uint32_t>, CellHash> grid;
    auto key = [&](const Point& p) {
        return Cell{int(std::floor(p.x / reach)), int(std::floor(p.y / reach))};
    };
    for (std::size_t k = 0; k < N; ++k) grid[key(pts[k])].push_back(std::uint32_t(k));
    double best = 0;
    double a2 = reach * reach;
    for (std::size_t k = 0; k < N; ++k) {
        Cell c = key(pts[k]);
        for (int dc = -1; dc <= 1; ++dc)
            for (int dr = -1; dr <= 1; ++dr) {
                auto it = grid.find({c.col + dc, c.row + dr});
                if (it == grid.end()) continue;
                for (std::uint32_t m : it->second) {
                    if (m <= k) continue;
                    std::size_t gap = std::min<std::size_t>(m - k, N - (m - k));
                    double along = double(gap) * h;
                    if (along <= best) continue;
                    Point d = pts[m] - pts[k];
                    if (d.x * d.x + d.y * d.y <= a2) best = along;
                }
            }
    }
    return best;
}

}  // namespace gridify
