#pragma once

/// Uniform-grid bucket index over the segments of a closed polyline, for
/// fast nearest-segment distance queries.

#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "gridify/geometry.hpp"
#include "gridify/grid.hpp"

namespace gridify {

class SegmentIndex {
public:
    explicit SegmentIndex(const std::vector<Point>& ring, double cell_size = 1.0)
        : ring_(ring), cell_(cell_size) {
        std::size_t n = ring_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = ring_[i];
            const Point& b = ring_[(i + 1) % n];
            int x0 = key(std::min(a.x, b.x)), x1 = key(std::max(a.x, b.x));
            int y0 = key(std::min(a.y, b.y)), y1 = key(std::max(a.y, b.y));
            for (int x = x0; x <= x1; ++x)
                for (int y = y0; y <= y1; ++y)
                    buckets_[{x, y}].push_back(std::uint32_t(i));
        }
    }

    const std::vector<Point>& ring() const { return ring_; }

    /// Exact distance from p to the polyline.
    double distance(const Point& p) const {
        double best = std::numeric_limits<double>::infinity();
        int px = key(p.x), py = key(p.y);
        for (int radius = 0;; ++radius) {
            // Rings at Chebyshev distance r are at least (r-1)*cell_ away.
            if (std::isfinite(best) && double(radius - 1) * cell_ > best) break;
            scan_ring(p, px, py, radius, best);
            if (!std::isfinite(best) && radius > 6) {
                // Far outside all buckets: fall back to brute force once.
                for (std::size_t i = 0; i < ring_.size(); ++i)
                    best = std::min(best,
                                    point_segment_distance(p, ring_[i], ring_[(i + 1) % ring_.size()]));
                break;
            }
        }
        return best;
    }

private:
    int key(double v) const { return int(std::floor(v / cell_)); }

    bool scan_ring(const Point& p, int px, int py, int radius, double& best) const {
        bool any = false;
        auto visit = [&](int x, int y) {
            auto it = buckets_.find({x, y});
            if (it == buckets_.end()) return;
            any = true;
            for (std::uint32_t i : it->second)
                best = std::min(best,
                                point_segment_distance(p, ring_[i], ring_[(i + 1) % ring_.size()]));
        };
        if (radius == 0) {
            visit(px, py);
            return any;
        }
        for (int x = px - radius; x <= px + radius; ++x) {
            visit(x, py - radius);
            visit(x, py + radius);
        }
        for (int y = py - radius + 1; y <= py + radius - 1; ++y) {
            visit(px - radius, y);
            visit(px + radius, y);
        }
        return any;
    }

    std::vector<Point> ring_;
    double cell_;
    std::unordered_map<Cell, std::vector<std::uint32_t>, CellHash> buckets_;
};

}  // namespace gridify
