#pragma once

/// The integer pixel world: cells, modules, parity, adjacency,
/// point-contacts, simple-connectedness, boundary cycle extraction and
/// nonogram clues. A cell (col,row) occupies [col,col+1] x [row,row+1].

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gridify/geometry.hpp"

namespace gridify {

struct Cell {
    int col = 0;
    int row = 0;
    constexpr bool operator==(const Cell&) const = default;
    constexpr auto operator<=>(const Cell&) const = default;
};

struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept {
        std::uint64_t k = (std::uint64_t(std::uint32_t(c.col)) << 32) | std::uint32_t(c.row);
        k *= 0x9e3779b97f4a7c15ULL;
        return std::size_t(k ^ (k >> 32));
    }
};

/// Grid-graph vertex (integer lattice point).
struct GridVertex {
    int x = 0;
    int y = 0;
    constexpr bool operator==(const GridVertex&) const = default;
    constexpr auto operator<=>(const GridVertex&) const = default;
};

struct GridVertexHash {
    std::size_t operator()(const GridVertex& v) const noexcept {
        return CellHash{}(Cell{v.x, v.y});
    }
};

enum class Adjacency { edge_adjacent, point_adjacent, none };

inline Adjacency adjacency(const Cell& a, const Cell& b) {
    int dc = std::abs(a.col - b.col), dr = std::abs(a.row - b.row);
    if (dc + dr == 1) return Adjacency::edge_adjacent;
    if (dc == 1 && dr == 1) return Adjacency::point_adjacent;
    return Adjacency::none;
}

/// floor-modulo parity; (col,row) is even-even iff both are even.
inline bool is_even(int v) { return ((v % 2) + 2) % 2 == 0; }
inline bool is_even_even(const Cell& c) { return is_even(c.col) && is_even(c.row); }
inline bool is_odd_odd(const Cell& c) { return !is_even(c.col) && !is_even(c.row); }

/// The 2x2 module centered at the center of c.
inline Rect module_of(const Cell& c) {
    return {c.col - 0.5, c.row - 0.5, c.col + 1.5, c.row + 1.5};
}

inline Rect cell_rect(const Cell& c) {
    return {double(c.col), double(c.row), double(c.col + 1), double(c.row + 1)};
}

/// Finite set of cells with O(1) membership.
class CellSet {
public:
    CellSet() = default;
    explicit CellSet(std::vector<Cell> cells) {
        for (const Cell& c : cells) insert(c);
    }

    bool contains(const Cell& c) const { return set_.count(c) > 0; }
    void insert(const Cell& c) { set_.insert(c); }
    void erase(const Cell& c) { set_.erase(c); }
    std::size_t size() const { return set_.size(); }
    bool empty() const { return set_.empty(); }

    const std::unordered_set<Cell, CellHash>& cells() const { return set_; }

    /// Cells in deterministic (col,row) order.
    std::vector<Cell> sorted() const {
        std::vector<Cell> v(set_.begin(), set_.end());
        std::sort(v.begin(), v.end());
        return v;
    }

    /// Bounding box in cell indices (inclusive). Requires non-empty.
    void bounds(int& cmin, int& rmin, int& cmax, int& rmax) const {
        if (set_.empty()) throw std::logic_error("bounds of empty cell set");
        auto it = set_.begin();
        cmin = cmax = it->col;
        rmin = rmax = it->row;
        for (const Cell& c : set_) {
            cmin = std::min(cmin, c.col);
            cmax = std::max(cmax, c.col);
            rmin = std::min(rmin, c.row);
            rmax = std::max(rmax, c.row);
        }
    }

    bool operator==(const CellSet& o) const { return set_ == o.set_; }

private:
    std::unordered_set<Cell, CellHash> set_;
};

/// All point-adjacent pairs in s with neither shared edge-neighbor present.
/// Pairs are reported once, lexicographically ordered within the pair.
inline std::vector<std::pair<Cell, Cell>> point_contacts(const CellSet& s) {
    std::vector<std::pair<Cell, Cell>> out;
    for (const Cell& c : s.cells()) {
        for (int dc : {-1, 1}) {
            // Only look "up" so each diagonal pair is considered once.
            Cell d{c.col + dc, c.row + 1};
            if (!s.contains(d)) continue;
            Cell m1{c.col, c.row + 1}, m2{c.col + dc, c.row};
            if (!s.contains(m1) && !s.contains(m2)) {
                Cell a = std::min(c, d), b = std::max(c, d);
                out.emplace_back(a, b);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline std::size_t flood_count(const CellSet& s, const Cell& start,
                               const std::function<bool(const Cell&)>& member) {
    std::unordered_set<Cell, CellHash> seen;
    std::vector<Cell> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        const Cell nb[4] = {{c.col + 1, c.row}, {c.col - 1, c.row},
                            {c.col, c.row + 1}, {c.col, c.row - 1}};
        for (const Cell& n : nb) {
            if (member(n) && !seen.count(n)) {
                seen.insert(n);
                stack.push_back(n);
            }
        }
    }
    (void)s;
    return seen.size();
}

}  // namespace detail

/// Hole test alone (no connectivity requirement): the complement within a
/// 1-cell-inflated bounding box must be reachable from the outside ring.
inline bool has_hole(const CellSet& s) {
    if (s.empty()) return false;
    int cmin, rmin, cmax, rmax;
    s.bounds(cmin, rmin, cmax, rmax);
    cmin -= 1; rmin -= 1; cmax += 1; rmax += 1;
    auto outside_member = [&](const Cell& c) {
        return c.col >= cmin && c.col <= cmax && c.row >= rmin && c.row <= rmax && !s.contains(c);
    };
    std::size_t outside = detail::flood_count(s, Cell{cmin, rmin}, outside_member);
    std::size_t total = std::size_t(cmax - cmin + 1) * std::size_t(rmax - rmin + 1);
    return outside != total - s.size();
}

/// Edge-connected and hole-free.
inline bool is_simply_connected(const CellSet& s) {
    if (s.empty()) throw std::invalid_argument("empty cell set");
    Cell start = *s.cells().begin();
    std::size_t reached = detail::flood_count(s, start, [&](const Cell& c) { return s.contains(c); });
    if (reached != s.size()) return false;
    return !has_hole(s);
}

/// Cyclic list of grid-graph vertices; consecutive vertices at L1 distance 1.
struct GridCycle {
    std::vector<GridVertex> vertices;

    std::size_t size() const { return vertices.size(); }

    std::vector<Point> as_points() const {
        std::vector<Point> pts;
        pts.reserve(vertices.size());
        for (const GridVertex& v : vertices) pts.emplace_back(v.x, v.y);
        return pts;
    }
};

/// Counterclockwise outer boundary of a simply connected, point-contact-free
/// cell set. Starts at the lexicographically smallest boundary vertex.
inline GridCycle boundary_cycle(const CellSet& s) {
    if (s.empty()) throw std::invalid_argument("empty cell set");
    {
        auto contacts = point_contacts(s);
        if (!contacts.empty()) {
            const auto& [a, b] = contacts.front();
            throw std::invalid_argument("cell set has a point-contact at (" +
                                        std::to_string(a.col) + "," + std::to_string(a.row) +
                                        ")-(" + std::to_string(b.col) + "," +
                                        std::to_string(b.row) + ")");
        }
    }
    if (!is_simply_connected(s)) {
        std::size_t reached =
            detail::flood_count(s, *s.cells().begin(), [&](const Cell& c) { return s.contains(c); });
        if (reached != s.size())
            throw std::invalid_argument("cell set is disconnected");
        throw std::invalid_argument("cell set has a hole");
    }
    // Directed boundary edges with the interior on the left (CCW traversal).
    std::unordered_map<GridVertex, GridVertex, GridVertexHash> next;
    for (const Cell& c : s.cells()) {
        if (!s.contains({c.col, c.row - 1}))
            next[{c.col, c.row}] = {c.col + 1, c.row};
        if (!s.contains({c.col + 1, c.row}))
            next[{c.col + 1, c.row}] = {c.col + 1, c.row + 1};
        if (!s.contains({c.col, c.row + 1}))
            next[{c.col + 1, c.row + 1}] = {c.col, c.row + 1};
        if (!s.contains({c.col - 1, c.row}))
            next[{c.col, c.row + 1}] = {c.col, c.row};
    }
    GridVertex start = next.begin()->first;
    for (const auto& [v, _] : next) start = std::min(start, v);
    GridCycle cycle;
    GridVertex cur = start;
    do {
        cycle.vertices.push_back(cur);
        auto it = next.find(cur);
        if (it == next.end()) throw std::logic_error("boundary trace broke");
        cur = it->second;
    } while (!(cur == start));
    if (cycle.vertices.size() != next.size())
        throw std::logic_error("boundary is not a single cycle");
    return cycle;
}

/// Cells enclosed by a simple grid cycle (even-odd fill).
inline CellSet fill_cycle(const GridCycle& cycle) {
    // Vertical cycle edges, keyed by x, as (ymin) for unit spans.
    std::unordered_map<int, std::vector<int>> vert;
    int xmin = cycle.vertices.front().x, xmax = xmin;
    int ymin = cycle.vertices.front().y, ymax = ymin;
    std::size_t n = cycle.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const GridVertex& a = cycle.vertices[i];
        const GridVertex& b = cycle.vertices[(i + 1) % n];
        xmin = std::min(xmin, a.x); xmax = std::max(xmax, a.x);
        ymin = std::min(ymin, a.y); ymax = std::max(ymax, a.y);
        if (a.x == b.x) vert[a.x].push_back(std::min(a.y, b.y));
    }
    for (auto& [x, ys] : vert) std::sort(ys.begin(), ys.end());
    CellSet out;
    for (int row = ymin; row < ymax; ++row) {
        // Parity scan along the row of cells.
        bool in = false;
        for (int col = xmin; col < xmax; ++col) {
            auto it = vert.find(col);
            if (it != vert.end() &&
                std::binary_search(it->second.begin(), it->second.end(), row))
                in = !in;
            if (in) out.insert({col, row});
        }
    }
    return out;
}

/// Per-row and per-column run-length clues over the bounding box, rows
/// bottom-to-top and columns left-to-right.
struct NonogramClues {
    std::vector<std::vector<int>> rows;
    std::vector<std::vector<int>> cols;
};

inline NonogramClues nonogram_clues(const CellSet& s) {
    NonogramClues out;
    if (s.empty()) return out;
    int cmin, rmin, cmax, rmax;
    s.bounds(cmin, rmin, cmax, rmax);
    for (int r = rmin; r <= rmax; ++r) {
        std::vector<int> runs;
        int run = 0;
        for (int c = cmin; c <= cmax; ++c) {
            if (s.contains({c, r})) {
                ++run;
            } else if (run > 0) {
                runs.push_back(run);
                run = 0;
            }
        }
        if (run > 0) runs.push_back(run);
        out.rows.push_back(std::move(runs));
    }
    for (int c = cmin; c <= cmax; ++c) {
        std::vector<int> runs;
        int run = 0;
        for (int r = rmin; r <= rmax; ++r) {
            if (s.contains({c, r})) {
                ++run;
            } else if (run > 0) {
                runs.push_back(run);
                run = 0;
            }
        }
        if (run > 0) runs.push_back(run);
        out.cols.push_back(std::move(runs));
    }
    return out;
}

}  // namespace gridify
