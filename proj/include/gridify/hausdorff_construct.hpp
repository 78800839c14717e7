#pragma once

/// Grid-polygon construction with guaranteed Hausdorff bounds: classify
/// cells against the input polygon, assemble Q1..Q4, then optionally
/// post-process to shrink the symmetric difference while keeping a relaxed
/// bound in all four directed senses.

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gridify/geometry.hpp"
#include "gridify/grid.hpp"
#include "gridify/metrics.hpp"
#include "gridify/segment_index.hpp"

namespace gridify {

/// Raised when a construction invariant that should hold by theory fails.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Per-cell module flags over a finite window around the polygon.
class CellClassification {
public:
    CellClassification(int cmin, int rmin, int cmax, int rmax)
        : cmin_(cmin), rmin_(rmin), cmax_(cmax), rmax_(rmax),
          subset_((cmax - cmin + 1) * (rmax - rmin + 1), 0),
          intersects_((cmax - cmin + 1) * (rmax - rmin + 1), 0) {}

    bool in_window(const Cell& c) const {
        return c.col >= cmin_ && c.col <= cmax_ && c.row >= rmin_ && c.row <= rmax_;
    }
    bool module_subset(const Cell& c) const { return in_window(c) && subset_[idx(c)]; }
    bool module_intersects(const Cell& c) const { return in_window(c) && intersects_[idx(c)]; }

    void set(const Cell& c, bool subset, bool intersects) {
        subset_[idx(c)] = subset;
        intersects_[idx(c)] = intersects;
    }

    int cmin() const { return cmin_; }
    int rmin() const { return rmin_; }
    int cmax() const { return cmax_; }
    int rmax() const { return rmax_; }

    template <typename F>
    void for_each(F&& f) const {
        for (int r = rmin_; r <= rmax_; ++r)
            for (int c = cmin_; c <= cmax_; ++c)
                f(Cell{c, r}, subset_[idx({c, r})] != 0, intersects_[idx({c, r})] != 0);
    }

    bool operator==(const CellClassification& o) const = default;

private:
    std::size_t idx(const Cell& c) const {
        return std::size_t(c.row - rmin_) * (cmax_ - cmin_ + 1) + (c.col - cmin_);
    }
    int cmin_, rmin_, cmax_, rmax_;
    std::vector<std::uint8_t> subset_, intersects_;
};

namespace hausdorff_detail {

inline void window_bounds(const Polygon& p, int& cmin, int& rmin, int& cmax, int& rmax) {
    Rect bb = p.bounding_box();
    cmin = int(std::floor(bb.xmin)) - 2;
    cmax = int(std::floor(bb.xmax)) + 2;
    rmin = int(std::floor(bb.ymin)) - 2;
    rmax = int(std::floor(bb.ymax)) + 2;
}

/// Does the module of c intersect the polygon boundary?
inline bool module_meets_boundary(const Polygon& p, const Cell& c) {
    return boundary_intersects_rect(p, module_of(c));
}

inline bool segment_meets_rect(const Point& a, const Point& b, const Rect& r) {
    if (r.contains(a) || r.contains(b)) return true;
    Point c0{r.xmin, r.ymin}, c1{r.xmax, r.ymin}, c2{r.xmax, r.ymax}, c3{r.xmin, r.ymax};
    return detail::segments_intersect(a, b, c0, c1) || detail::segments_intersect(a, b, c1, c2) ||
           detail::segments_intersect(a, b, c2, c3) || detail::segments_intersect(a, b, c3, c0);
}

}  // namespace hausdorff_detail

/// Baseline classification: clip every module in the window against P.
inline CellClassification classify_cells(const Polygon& p) {
    int cmin, rmin, cmax, rmax;
    hausdorff_detail::window_bounds(p, cmin, rmin, cmax, rmax);
    CellClassification cc(cmin, rmin, cmax, rmax);
    for (int r = rmin; r <= rmax; ++r) {
        for (int c = cmin; c <= cmax; ++c) {
            Cell cell{c, r};
            Rect m = module_of(cell);
            double ca = clip_area(p, m);
            bool subset = ca >= m.area() - kAreaTol;
            bool inter = ca > kAreaTol || hausdorff_detail::module_meets_boundary(p, cell);
            cc.set(cell, subset, inter);
        }
    }
    return cc;
}

/// Output-sensitive classification: enumerate the band of cells whose module
/// meets the boundary by walking each edge through the grid (the band is the
/// Minkowski sum of the boundary with a 2x2 square, traced edge by edge),
/// then settle each band-free connected component with a single
/// point-in-polygon test.
inline CellClassification trace_classify_cells(const Polygon& p) {
    int cmin, rmin, cmax, rmax;
    hausdorff_detail::window_bounds(p, cmin, rmin, cmax, rmax);
    CellClassification cc(cmin, rmin, cmax, rmax);
    int W = cmax - cmin + 1, H = rmax - rmin + 1;
    std::vector<std::uint8_t> band(std::size_t(W) * H, 0);
    auto bidx = [&](int c, int r) { return std::size_t(r - rmin) * W + (c - cmin); };
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point& a = p.vertex(i);
        const Point& b = p.vertex(i + 1);
        int c0 = std::max(cmin, int(std::floor(std::min(a.x, b.x) - 1.5)));
        int c1 = std::min(cmax, int(std::floor(std::max(a.x, b.x) + 1.5)));
        for (int c = c0; c <= c1; ++c) {
            // y-extent of the edge over the x-slab of this module column.
            double xlo = c - 0.5, xhi = c + 1.5;
            double tlo = 0, thi = 1;
            if (std::abs(b.x - a.x) > 0) {
                double t0 = (xlo - a.x) / (b.x - a.x);
                double t1 = (xhi - a.x) / (b.x - a.x);
                tlo = std::clamp(std::min(t0, t1), 0.0, 1.0);
                thi = std::clamp(std::max(t0, t1), 0.0, 1.0);
            }
            double ya = a.y + (b.y - a.y) * tlo, yb = a.y + (b.y - a.y) * thi;
            int r0 = std::max(rmin, int(std::floor(std::min(ya, yb) - 1.5)));
            int r1 = std::min(rmax, int(std::floor(std::max(ya, yb) + 1.5)));
            for (int r = r0; r <= r1; ++r) {
                if (band[bidx(c, r)]) continue;
                if (hausdorff_detail::segment_meets_rect(a, b, module_of({c, r})))
                    band[bidx(c, r)] = 1;
            }
        }
    }
    // Band cells: module meets the boundary, so never a subset; intersects
    // always. (Tangency where the module still lies inside P is settled the
    // same way as the baseline, by clipping.)
    for (int r = rmin; r <= rmax; ++r)
        for (int c = cmin; c <= cmax; ++c)
            if (band[bidx(c, r)]) {
                Rect m = module_of({c, r});
                bool subset = clip_area(p, m) >= m.area() - kAreaTol;
                cc.set({c, r}, subset, true);
            }
    // Non-band components are uniformly inside or outside.
    std::vector<std::uint8_t> seen(std::size_t(W) * H, 0);
    for (int r = rmin; r <= rmax; ++r) {
        for (int c = cmin; c <= cmax; ++c) {
            if (band[bidx(c, r)] || seen[bidx(c, r)]) continue;
            std::vector<Cell> comp, stack{{c, r}};
            seen[bidx(c, r)] = 1;
            while (!stack.empty()) {
                Cell cur = stack.back();
                stack.pop_back();
                comp.push_back(cur);
                const Cell nb[4] = {{cur.col + 1, cur.row}, {cur.col - 1, cur.row},
                                    {cur.col, cur.row + 1}, {cur.col, cur.row - 1}};
                for (const Cell& nx : nb) {
                    if (nx.col < cmin || nx.col > cmax || nx.row < rmin || nx.row > rmax) continue;
                    if (band[bidx(nx.col, nx.row)] || seen[bidx(nx.col, nx.row)]) continue;
                    seen[bidx(nx.col, nx.row)] = 1;
                    stack.push_back(nx);
                }
            }
            Point rep{comp.front().col + 0.5, comp.front().row + 0.5};
            bool inside = point_in_polygon(rep, p) == PointLocation::inside;
            for (const Cell& cell : comp) cc.set(cell, inside, inside);
        }
    }
    return cc;
}

enum class Q4Strategy { arbitrary, greedy_overlap };

/// Q1 = modules inside P; Q2 = even-even cells whose module meets P.
inline std::pair<CellSet, CellSet> build_q1_q2(const CellClassification& cc) {
    CellSet q1, q2;
    cc.for_each([&](const Cell& c, bool subset, bool inter) {
        if (subset) q1.insert(c);
        if (inter && is_even_even(c)) q2.insert(c);
    });
    return {q1, q2};
}

/// Mediators for every point-contact pair in q1 u q2.
inline CellSet build_q3(const CellSet& q12) {
    CellSet q3;
    for (const auto& [a, b] : point_contacts(q12)) {
        q3.insert({a.col, b.row});
        q3.insert({b.col, a.row});
    }
    return q3;
}

namespace hausdorff_detail {

inline bool creates_point_contact(const CellSet& s, const Cell& c) {
    for (int dc : {-1, 1})
        for (int dr : {-1, 1}) {
            Cell d{c.col + dc, c.row + dr};
            if (s.contains(d) && !s.contains({c.col, c.row + dr}) &&
                !s.contains({c.col + dc, c.row}))
                return true;
        }
    return false;
}

/// Hole check after tentatively adding c (full complement flood fill). The
/// set may still be disconnected at this point, so only holes matter.
inline bool creates_hole(CellSet s, const Cell& c) {
    s.insert(c);
    return has_hole(s);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = int(i);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace hausdorff_detail

/// Connectors that make q123 edge-connected. Each connector cell has its
/// module meeting P and sits between two oppositely adjacent Q2 cells.
inline CellSet build_q4(const CellSet& q123, const CellSet& q2, const CellClassification& cc,
                        const Polygon& p, Q4Strategy strategy) {
    // Candidate connectors.
    struct Cand {
        Cell cell;
        double overlap;
    };
    std::vector<Cand> cands;
    for (const Cell& c : q2.sorted()) {
        const Cell nb[2] = {{c.col + 1, c.row}, {c.col, c.row + 1}};
        for (const Cell& m : nb) {
            Cell opp{2 * m.col - c.col, 2 * m.row - c.row};
            if (!q2.contains(opp) || q123.contains(m)) continue;
            if (!cc.module_intersects(m)) continue;
            cands.push_back({m, 0});
        }
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.cell < b.cell; });
    cands.erase(std::unique(cands.begin(), cands.end(),
                            [](const Cand& a, const Cand& b) { return a.cell == b.cell; }),
                cands.end());
    if (strategy == Q4Strategy::greedy_overlap) {
        for (Cand& c : cands) c.overlap = clip_area(p, cell_rect(c.cell));
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.overlap != b.overlap) return a.overlap > b.overlap;
            return a.cell < b.cell;
        });
    }

    // Component labels for q123.
    std::vector<Cell> cells = q123.sorted();
    std::unordered_map<Cell, int, CellHash> index;
    for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = int(i);
    hausdorff_detail::UnionFind uf(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell& c = cells[i];
        const Cell nb[2] = {{c.col + 1, c.row}, {c.col, c.row + 1}};
        for (const Cell& n : nb) {
            auto it = index.find(n);
            if (it != index.end()) uf.unite(int(i), it->second);
        }
    }
    auto component_count = [&]() {
        std::unordered_set<int> roots;
        for (std::size_t i = 0; i < cells.size(); ++i) roots.insert(uf.find(int(i)));
        return roots.size();
    };

    CellSet q4;
    CellSet current = q123;
    std::size_t comps = cells.empty() ? 0 : component_count();
    while (comps > 1) {
        bool added = false;
        for (const Cand& cand : cands) {
            if (current.contains(cand.cell)) continue;
            // Must merge at least two distinct components.
            std::unordered_set<int> roots;
            const Cell& c = cand.cell;
            const Cell nb[4] = {{c.col + 1, c.row}, {c.col - 1, c.row},
                                {c.col, c.row + 1}, {c.col, c.row - 1}};
            for (const Cell& n : nb) {
                auto it = index.find(n);
                if (it != index.end()) roots.insert(uf.find(it->second));
            }
            if (roots.size() < 2) continue;
            if (hausdorff_detail::creates_point_contact(current, c)) continue;
            if (hausdorff_detail::creates_hole(current, c)) continue;
            current.insert(c);
            q4.insert(c);
            int id = int(cells.size());
            cells.push_back(c);
            index[c] = id;
            uf.parent.push_back(id);
            for (const Cell& n : nb) {
                auto it = index.find(n);
                if (it != index.end() && !(it->second == id)) uf.unite(id, it->second);
            }
            comps = component_count();
            added = true;
            break;
        }
        if (!added)
            throw InvariantViolation("no admissible Q4 connector between components");
    }
    return q4;
}

struct HausdorffBuild {
    CellSet q1, q2, q3, q4;
    CellSet result;
    /// 1..4: earliest stage that contributed the cell.
    std::unordered_map<Cell, int, CellHash> provenance;
};

inline HausdorffBuild construct_hausdorff(const Polygon& p,
                                          Q4Strategy strategy = Q4Strategy::arbitrary,
                                          bool use_trace_classification = false) {
    CellClassification cc =
        use_trace_classification ? trace_classify_cells(p) : classify_cells(p);
    HausdorffBuild b;
    std::tie(b.q1, b.q2) = build_q1_q2(cc);
    CellSet q12 = b.q1;
    for (const Cell& c : b.q2.cells()) q12.insert(c);
    b.q3 = build_q3(q12);
    CellSet q123 = q12;
    for (const Cell& c : b.q3.cells()) q123.insert(c);
    b.q4 = build_q4(q123, b.q2, cc, p, strategy);
    b.result = q123;
    for (const Cell& c : b.q4.cells()) b.result.insert(c);
    for (const Cell& c : b.result.cells()) {
        int stage = b.q1.contains(c) ? 1 : b.q2.contains(c) ? 2 : b.q3.contains(c) ? 3 : 4;
        b.provenance[c] = stage;
    }
    if (!is_simply_connected(b.result))
        throw InvariantViolation("constructed Q is not simply connected");
    if (!point_contacts(b.result).empty())
        throw InvariantViolation("constructed Q has a point-contact");
    for (const Cell& c : b.result.cells())
        if (!cc.module_intersects(c))
            throw InvariantViolation("constructed Q contains a cell whose module misses P");
    return b;
}

struct PostprocessConfig {
    bool allow_add = true;
    bool allow_remove = true;
    bool allow_shift = true;
    double relaxed_bound = 1.5 * std::sqrt(2.0);
    int max_iterations = 100000;
};

namespace hausdorff_detail {

/// Certified "max distance over a unit-scale segment to the polyline stays
/// within bound" decision by bisection with the Lipschitz tent bound.
inline bool segment_within(const Point& a, const Point& b, const SegmentIndex& idx,
                           double bound) {
    struct Piece {
        Point p, q;
        double dp, dq;
    };
    std::vector<Piece> stack{{a, b, idx.distance(a), idx.distance(b)}};
    while (!stack.empty()) {
        Piece t = stack.back();
        stack.pop_back();
        if (t.dp > bound || t.dq > bound) return false;
        double len = distance(t.p, t.q);
        if ((t.dp + t.dq + len) / 2 <= bound) continue;
        Point mid = (t.p + t.q) * 0.5;
        double dm = idx.distance(mid);
        if (dm > bound) return false;
        stack.push_back({t.p, mid, t.dp, dm});
        stack.push_back({mid, t.q, dm, t.dq});
    }
    return true;
}

}  // namespace hausdorff_detail

/// Iterative first-improvement post-processing: adds, removes and shifts
/// that strictly reduce the symmetric difference while keeping Q a valid
/// grid polygon and all four directed Hausdorff distances within
/// cfg.relaxed_bound. Bound checks are local to the modified neighborhood;
/// the far parts of both boundaries are unaffected by a single-cell change.
class Postprocessor {
public:
    Postprocessor(const Polygon& p, PostprocessConfig cfg)
        : p_(p), cfg_(cfg), boundary_index_(p.vertices()), region_(p) {}

    CellSet run(const CellSet& initial) {
        CellSet q = initial;
        int accepted = 0;
        bool progress = true;
        while (progress && accepted < cfg_.max_iterations) {
            progress = false;
            std::vector<Cell> qcells = q.sorted();
            if (cfg_.allow_add) {
                for (const Cell& c : add_candidates(q)) {
                    if (try_add(q, c)) { progress = true; break; }
                }
            }
            if (!progress && cfg_.allow_remove) {
                for (const Cell& c : qcells) {
                    if (try_remove(q, c)) { progress = true; break; }
                }
            }
            if (!progress && cfg_.allow_shift) {
                for (const Cell& c : qcells) {
                    bool done = false;
                    for (int dc = -1; dc <= 1 && !done; ++dc)
                        for (int dr = -1; dr <= 1 && !done; ++dr) {
                            if (dc == 0 && dr == 0) continue;
                            Cell to{c.col + dc, c.row + dr};
                            if (q.contains(to)) continue;
                            if (try_shift(q, c, to)) done = true;
                        }
                    if (done) { progress = true; break; }
                }
            }
            if (progress) ++accepted;
        }
        return q;
    }

    double overlap(const Cell& c) {
        auto it = overlap_.find(c);
        if (it != overlap_.end()) return it->second;
        double v = clip_area(p_, cell_rect(c));
        overlap_[c] = v;
        return v;
    }

private:
    std::vector<Cell> add_candidates(const CellSet& q) const {
        CellSet seen;
        std::vector<Cell> out;
        for (const Cell& c : q.sorted()) {
            const Cell nb[4] = {{c.col + 1, c.row}, {c.col - 1, c.row},
                                {c.col, c.row + 1}, {c.col, c.row - 1}};
            for (const Cell& n : nb) {
                if (q.contains(n) || seen.contains(n)) continue;
                seen.insert(n);
                out.push_back(n);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool try_add(CellSet& q, const Cell& c) {
        if (1 - 2 * overlap(c) >= -1e-12) return false;  // not strictly improving
        CellSet next = q;
        next.insert(c);
        if (hausdorff_detail::creates_point_contact(q, c)) return false;
        if (!is_simply_connected(next)) return false;
        if (!bounds_ok(next, c, /*removed=*/false)) return false;
        q = std::move(next);
        return true;
    }

    bool try_remove(CellSet& q, const Cell& c) {
        if (2 * overlap(c) - 1 >= -1e-12) return false;
        if (q.size() <= 1) return false;
        CellSet next = q;
        next.erase(c);
        if (!is_simply_connected(next)) return false;
        if (!point_contacts_near(next, c)) return false;
        if (!bounds_ok(next, c, /*removed=*/true)) return false;
        q = std::move(next);
        return true;
    }

    bool try_shift(CellSet& q, const Cell& from, const Cell& to) {
        if (2 * (overlap(from) - overlap(to)) >= -1e-12) return false;
        CellSet next = q;
        next.erase(from);
        next.insert(to);
        if (!is_simply_connected(next)) return false;
        if (!point_contacts_near(next, from) || !point_contacts_near(next, to)) return false;
        if (!bounds_ok(next, from, true) || !bounds_ok(next, to, false)) return false;
        q = std::move(next);
        return true;
    }

    /// No point-contacts in the 2-neighborhood of c.
    bool point_contacts_near(const CellSet& s, const Cell& c) const {
        for (int dc = -2; dc <= 2; ++dc)
            for (int dr = -2; dr <= 2; ++dr) {
                Cell a{c.col + dc, c.row + dr};
                if (!s.contains(a)) continue;
                for (int ddc : {-1, 1}) {
                    Cell b{a.col + ddc, a.row + 1};
                    if (s.contains(b) && !s.contains({a.col, a.row + 1}) &&
                        !s.contains({a.col + ddc, a.row}))
                        return false;
                }
            }
        return true;
    }

    /// Localized check of all four directed Hausdorff bounds after a change
    /// at cell `c`. Improving operations never move Q's region away from P
    /// (added cells overlap P), so only the boundary senses and, after a
    /// removal, the P-to-Q senses need verification.
    bool bounds_ok(const CellSet& next, const Cell& c, bool removed) {
        double B = cfg_.relaxed_bound;
        GridCycle cyc = boundary_cycle(next);
        std::vector<Point> ring = cyc.as_points();
        // dQ -> dP on the changed neighborhood.
        std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = ring[i];
            const Point& b = ring[(i + 1) % n];
            if (std::max(std::abs(a.x - (c.col + 0.5)), std::abs(a.y - (c.row + 0.5))) > 2.5 &&
                std::max(std::abs(b.x - (c.col + 0.5)), std::abs(b.y - (c.row + 0.5))) > 2.5)
                continue;
            if (!hausdorff_detail::segment_within(a, b, boundary_index_, B)) return false;
        }
        // dP -> dQ near the change, against the full new boundary.
        SegmentIndex qidx(ring);
        Point center{c.col + 0.5, c.row + 0.5};
        for (std::size_t i = 0; i < p_.size(); ++i) {
            const Point& a = p_.vertex(i);
            const Point& b = p_.vertex(i + 1);
            if (point_segment_distance(center, a, b) > B + 3) continue;
            if (!hausdorff_detail::segment_within(a, b, qidx, B)) return false;
        }
        if (removed) {
            // P -> Q region near the removed cell.
            RegionRef qreg(next);
            Rect local = cell_rect(c).inflated(B + 1);
            DistanceResult r = local_region_check(qreg, local);
            if (r.value + r.error_bound > B) return false;
        }
        return true;
    }

    /// Max over P-points in `window` of the distance to region y, certified.
    DistanceResult local_region_check(const RegionRef& y, const Rect& window) {
        struct Node {
            double upper;
            Rect r;
            bool operator<(const Node& o) const { return upper < o.upper; }
        };
        std::priority_queue<Node> heap;
        double lower = 0;
        double tol = 1e-3;
        heap.push({std::numeric_limits<double>::infinity(), window});
        bool first = true;
        while (!heap.empty()) {
            Node top = heap.top();
            heap.pop();
            if (!first && top.upper - lower <= tol) {
                heap.push(top);
                break;
            }
            first = false;
            Rect r = top.r;
            double diag = std::hypot(r.width(), r.height());
            if (!region_.intersects(r)) continue;
            if (diag <= tol / 2) {
                lower = std::max(lower, y.distance_to(r.center()) - diag);
                continue;
            }
            Point cc = r.center();
            Rect quads[4] = {{r.xmin, r.ymin, cc.x, cc.y},
                             {cc.x, r.ymin, r.xmax, cc.y},
                             {r.xmin, cc.y, cc.x, r.ymax},
                             {cc.x, cc.y, r.xmax, r.ymax}};
            for (const Rect& qd : quads) {
                if (!region_.intersects(qd)) continue;
                Point qc = qd.center();
                double d = y.distance_to(qc);
                if (region_.contains(qc)) lower = std::max(lower, d);
                double up = d + std::hypot(qd.width(), qd.height()) / 2;
                if (up > lower) heap.push({up, qd});
            }
        }
        double upper = heap.empty() ? lower : std::max(lower, heap.top().upper);
        return {(lower + upper) / 2, (upper - lower) / 2};
    }

    const Polygon& p_;
    PostprocessConfig cfg_;
    SegmentIndex boundary_index_;
    RegionRef region_;
    std::unordered_map<Cell, double, CellHash> overlap_;
};

inline CellSet postprocess(const HausdorffBuild& build, const Polygon& p,
                           const PostprocessConfig& cfg = {}) {
    if (cfg.relaxed_bound < std::sqrt(2.0) / 2)
        throw std::invalid_argument("relaxed bound below sqrt(2)/2");
    Postprocessor pp(p, cfg);
    return pp.run(build.result);
}

}  // namespace gridify
