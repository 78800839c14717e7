#pragma once

/// Experiment protocol: scale inputs to a target bounding-box area
/// ("resolution"), translate by sub-cell offsets, run the selected
/// algorithms and record certified quality measures per case. Also the SVG
/// renderer used for figures.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gridify/frechet_construct.hpp"
#include "gridify/frechet_distance.hpp"
#include "gridify/geometry.hpp"
#include "gridify/hausdorff_construct.hpp"
#include "gridify/metrics.hpp"
#include "gridify/narrowness.hpp"

namespace gridify {

/// Uniform scale so the bounding box has area r, anchored at the bounding
/// box minimum corner.
inline Polygon scale_to_resolution(const Polygon& p, double r) {
    if (r <= 0) throw std::invalid_argument("resolution must be positive");
    Rect bb = p.bounding_box();
    double area = bb.width() * bb.height();
    if (area <= 0) throw std::invalid_argument("degenerate bounding box");
    double s = std::sqrt(r / area);
    Polygon anchored = p.translated({-bb.xmin, -bb.ymin});
    return anchored.scaled(s);
}

inline Polygon place(const Polygon& p, double dx, double dy) {
    if (dx < 0 || dx >= 1 || dy < 0 || dy >= 1)
        throw std::invalid_argument("offset components must lie in [0,1)");
    return p.translated({dx, dy});
}

/// All cells at least half covered by the polygon. Optimal for symmetric
/// difference, but not necessarily a valid grid polygon.
inline CellSet optimal_baseline(const Polygon& p) {
    Rect bb = p.bounding_box();
    CellSet out;
    for (int r = int(std::floor(bb.ymin)); r <= int(std::floor(bb.ymax)); ++r)
        for (int c = int(std::floor(bb.xmin)); c <= int(std::floor(bb.xmax)); ++c)
            if (clip_area(p, cell_rect({c, r})) >= 0.5) out.insert({c, r});
    return out;
}

enum class Algorithm { hausdorff_plain, hausdorff_q4heur, hausdorff_post, frechet, optimal_baseline };

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::hausdorff_plain: return "hausdorff_plain";
        case Algorithm::hausdorff_q4heur: return "hausdorff_q4heur";
        case Algorithm::hausdorff_post: return "hausdorff_post";
        case Algorithm::frechet: return "frechet";
        case Algorithm::optimal_baseline: return "optimal_baseline";
    }
    return "?";
}

inline Algorithm algorithm_from_name(const std::string& s) {
    for (Algorithm a : {Algorithm::hausdorff_plain, Algorithm::hausdorff_q4heur,
                        Algorithm::hausdorff_post, Algorithm::frechet, Algorithm::optimal_baseline})
        if (s == algorithm_name(a)) return a;
    throw std::invalid_argument("unknown algorithm: " + s);
}

struct ExperimentConfig {
    std::vector<double> resolutions;
    std::vector<std::pair<double, double>> offsets;  // explicit grid, or...
    int random_offsets = 0;                          // ...count of seeded random placements
    unsigned seed = 1;
    std::vector<Algorithm> algorithms;
    double metric_tol = 1e-4;
    int jobs = 1;
    bool measure_frechet_everywhere = false;  // d_F is costly; default only for frechet runs
};

struct CaseResult {
    std::string polygon_id;
    double r = 0, dx = 0, dy = 0;
    Algorithm algorithm = Algorithm::optimal_baseline;
    double normalized_symdiff = std::nan("");
    double dh_boundary_pq = std::nan(""), dh_boundary_qp = std::nan("");
    double dh_region_pq = std::nan(""), dh_region_qp = std::nan("");
    double frechet = std::nan("");
    double beta_measured = std::nan("");
    double upper_bound = std::nan("");
    double performance_pct = std::nan("");
    double runtime_ms = 0;
    std::string error;
};

namespace experiment_detail {

inline std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace experiment_detail

inline CaseResult run_case(const std::string& id, const Polygon& base, double r, double dx,
                           double dy, Algorithm alg, const ExperimentConfig& cfg) {
    CaseResult res;
    res.polygon_id = id;
    res.r = r;
    res.dx = dx;
    res.dy = dy;
    res.algorithm = alg;
    auto t0 = std::chrono::steady_clock::now();
    try {
        Polygon p = place(scale_to_resolution(base, r), dx, dy);
        CellSet q;
        switch (alg) {
            case Algorithm::hausdorff_plain:
                q = construct_hausdorff(p, Q4Strategy::arbitrary).result;
                break;
            case Algorithm::hausdorff_q4heur:
                q = construct_hausdorff(p, Q4Strategy::greedy_overlap).result;
                break;
            case Algorithm::hausdorff_post: {
                HausdorffBuild b = construct_hausdorff(p, Q4Strategy::greedy_overlap);
                q = postprocess(b, p);
                break;
            }
            case Algorithm::frechet: {
                FrechetBuild b = construct_frechet(p);
                q = b.cells;
                res.beta_measured = b.beta_used;
                res.upper_bound = b.claimed_bound;
                break;
            }
            case Algorithm::optimal_baseline:
                q = optimal_baseline(p);
                break;
        }
        if (q.empty()) throw std::runtime_error("empty output cell set");
        res.normalized_symdiff = normalized_symmetric_difference(p, q);
        bool valid_grid_polygon = is_simply_connected(q) && point_contacts(q).empty();
        if (valid_grid_polygon) {
            std::vector<Point> qring = boundary_cycle(q).as_points();
            res.dh_boundary_pq =
                hausdorff_boundary_directed(p.vertices(), qring, cfg.metric_tol).value;
            res.dh_boundary_qp =
                hausdorff_boundary_directed(qring, p.vertices(), cfg.metric_tol).value;
            RegionRef rp(p), rq(q);
            res.dh_region_pq = hausdorff_region_directed(rp, rq, 1e-3).value;
            res.dh_region_qp = hausdorff_region_directed(rq, rp, 1e-3).value;
            if (alg == Algorithm::frechet || cfg.measure_frechet_everywhere) {
                res.frechet = frechet_closed(p.vertices(), qring, cfg.metric_tol).value;
                if (!std::isnan(res.upper_bound))
                    res.performance_pct = 100 * res.frechet / res.upper_bound;
            }
        }
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    res.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline std::vector<CaseResult> run_experiment(
    const ExperimentConfig& cfg, const std::vector<std::pair<std::string, Polygon>>& corpus) {
    if (corpus.empty()) throw std::invalid_argument("empty corpus");
    if (cfg.resolutions.empty() || cfg.algorithms.empty())
        throw std::invalid_argument("experiment config needs resolutions and algorithms");
    std::vector<std::pair<double, double>> offsets = cfg.offsets;
    if (cfg.random_offsets > 0) {
        std::mt19937 rng(cfg.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < cfg.random_offsets; ++i) {
            double dx = u(rng), dy = u(rng);
            offsets.emplace_back(std::min(dx, std::nextafter(1.0, 0.0)),
                                 std::min(dy, std::nextafter(1.0, 0.0)));
        }
    }
    if (offsets.empty()) offsets.emplace_back(0.0, 0.0);

    struct Case {
        const std::pair<std::string, Polygon>* poly;
        double r, dx, dy;
        Algorithm alg;
    };
    std::vector<Case> cases;
    for (const auto& pp : corpus)
        for (double r : cfg.resolutions)
            for (const auto& [dx, dy] : offsets)
                for (Algorithm a : cfg.algorithms) cases.push_back({&pp, r, dx, dy, a});

    std::vector<CaseResult> results(cases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            const Case& c = cases[i];
            results[i] = run_case(c.poly->first, c.poly->second, c.r, c.dx, c.dy, c.alg, cfg);
        }
    };
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    std::sort(results.begin(), results.end(), [](const CaseResult& a, const CaseResult& b) {
        return std::tie(a.polygon_id, a.r, a.dx, a.dy, a.algorithm) <
               std::tie(b.polygon_id, b.r, b.dx, b.dy, b.algorithm);
    });
    return results;
}

/// `include_runtime=false` blanks the runtime column so outputs from runs
/// with different worker counts compare byte-for-byte.
inline std::string experiment_csv(const std::vector<CaseResult>& results,
                                  bool include_runtime = true) {
    using experiment_detail::fmt;
    std::ostringstream out;
    out << "# gridify-experiment-csv v1\n";
    out << "polygon,r,dx,dy,algorithm,normalized_symdiff,dh_boundary_pq,dh_boundary_qp,"
           "dh_region_pq,dh_region_qp,frechet,beta_measured,upper_bound,performance_pct,"
           "runtime_ms,error\n";
    for (const CaseResult& c : results) {
        out << c.polygon_id << ',' << fmt(c.r) << ',' << fmt(c.dx) << ',' << fmt(c.dy) << ','
            << algorithm_name(c.algorithm) << ',' << fmt(c.normalized_symdiff) << ','
            << fmt(c.dh_boundary_pq) << ',' << fmt(c.dh_boundary_qp) << ','
            << fmt(c.dh_region_pq) << ',' << fmt(c.dh_region_qp) << ',' << fmt(c.frechet) << ','
            << fmt(c.beta_measured) << ',' << fmt(c.upper_bound) << ','
            << fmt(c.performance_pct) << ','
            << (include_runtime ? fmt(c.runtime_ms) : std::string()) << ',' << c.error << '\n';
    }
    return out.str();
}

/// Deterministic SVG: filled cells first, then grid outline, then the
/// polygon path. viewBox is the joint bounding box inflated by one unit.
inline std::string render_svg(const Polygon* p, const CellSet* q, double px_per_unit = 32) {
    using experiment_detail::fmt;
    Rect bb{0, 0, 1, 1};
    bool have = false;
    if (p) {
        bb = p->bounding_box();
        have = true;
    }
    if (q && !q->empty()) {
        int cmin, rmin, cmax, rmax;
        q->bounds(cmin, rmin, cmax, rmax);
        Rect qb{double(cmin), double(rmin), double(cmax + 1), double(rmax + 1)};
        if (!have) {
            bb = qb;
        } else {
            bb = {std::min(bb.xmin, qb.xmin), std::min(bb.ymin, qb.ymin),
                  std::max(bb.xmax, qb.xmax), std::max(bb.ymax, qb.ymax)};
        }
        have = true;
    }
    Rect vb = bb.inflated(1.0);
    std::ostringstream out;
    // y flips so the grid's +y points up on screen.
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(vb.xmin) << ' '
        << fmt(-vb.ymax) << ' ' << fmt(vb.width()) << ' ' << fmt(vb.height()) << "\" width=\""
        << fmt(vb.width() * px_per_unit) << "\" height=\"" << fmt(vb.height() * px_per_unit)
        << "\">\n";
    if (q) {
        for (const Cell& c : q->sorted())
            out << "  <rect x=\"" << c.col << "\" y=\"" << -(c.row + 1)
                << "\" width=\"1\" height=\"1\" fill=\"#9ecae1\" stroke=\"#3182bd\" "
                   "stroke-width=\"0.04\"/>\n";
    }
    if (p) {
        out << "  <path d=\"";
        const std::vector<Point>& vs = p->vertices();
        for (std::size_t i = 0; i < vs.size(); ++i)
            out << (i == 0 ? 'M' : 'L') << fmt(vs[i].x) << ' ' << fmt(-vs[i].y);
        out << "Z\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"0.06\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace gridify
