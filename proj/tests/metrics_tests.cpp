#include <catch2/catch_amalgamated.hpp>

#include "gridify/experiment.hpp"
#include "gridify/fixtures.hpp"
#include "gridify/metrics.hpp"
#include "helpers.hpp"

using namespace gridify;
using namespace testing_oracles;

TEST_CASE("hausdorff_boundary on exact cases") {
    std::vector<Point> a{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(hausdorff_boundary(a, a, 1e-6).value <= 1e-6);
    std::vector<Point> b{{3, 0}, {4, 0}, {4, 1}, {3, 1}};
    CHECK(hausdorff_boundary_directed(a, b, 1e-5).value == Catch::Approx(3.0).margin(1e-4));
    CHECK(hausdorff_boundary_directed(b, a, 1e-5).value == Catch::Approx(3.0).margin(1e-4));
    // Nested squares: every outer point is within 1 of the inner square's
    // boundary, but the outer corners are sqrt(2) away.
    std::vector<Point> outer{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    std::vector<Point> inner{{1, 1}, {3, 1}, {3, 3}, {1, 3}};
    CHECK(hausdorff_boundary_directed(outer, inner, 1e-5).value ==
          Catch::Approx(std::sqrt(2.0)).margin(1e-4));
    CHECK(hausdorff_boundary_directed(inner, outer, 1e-5).value == Catch::Approx(1.0).margin(1e-4));
}

TEST_CASE("hausdorff_boundary matches the dense oracle on random inputs") {
    for (unsigned seed : {2u, 8u, 19u}) {
        Polygon p = random_simple_polygon(14, seed);
        Polygon q = random_simple_polygon(9, seed + 100).translated({1.5, -0.5});
        double got = hausdorff_boundary(p.vertices(), q.vertices(), 1e-4).value;
        double oracle = std::max(dense_hausdorff_directed(p.vertices(), q.vertices(), 300),
                                 dense_hausdorff_directed(q.vertices(), p.vertices(), 300));
        CHECK(got == Catch::Approx(oracle).margin(0.02));
    }
}

TEST_CASE("hausdorff_region basics") {
    Polygon square({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    CellSet four(std::vector<Cell>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    RegionRef rp(square), rq(four);
    CHECK(hausdorff_region_directed(rp, rq, 1e-3).value <= 1e-3);
    CHECK(hausdorff_region_directed(rq, rp, 1e-3).value <= 1e-3);
    // Subset: directed distance from the subset is zero even though the
    // boundary Hausdorff is not.
    Polygon small({{0.5, 0.5}, {1.5, 0.5}, {1.5, 1.5}, {0.5, 1.5}});
    RegionRef rs(small);
    CHECK(hausdorff_region_directed(rs, rq, 1e-3).value <= 1e-3);
    CHECK(hausdorff_region_directed(rq, rs, 1e-3).value == Catch::Approx(std::sqrt(0.5)).margin(2e-3));
}

TEST_CASE("region and boundary Hausdorff genuinely differ") {
    // P buried in the middle of a 4x4 block: the region distance P->Q is
    // zero, but P's boundary is 1.5 from Q's boundary.
    Polygon p({{1.5, 1.5}, {2.5, 1.5}, {2.5, 2.5}, {1.5, 2.5}});
    CellSet cells;
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) cells.insert({c, r});
    RegionRef rp(p), rq(cells);
    std::vector<Point> qring = boundary_cycle(cells).as_points();
    CHECK(hausdorff_region_directed(rp, rq, 1e-3).value <= 1e-3);
    CHECK(hausdorff_boundary_directed(p.vertices(), qring, 1e-4).value ==
          Catch::Approx(1.5).margin(1e-3));
    // The other direction agrees between the two notions (corner to corner).
    CHECK(hausdorff_region_directed(rq, rp, 1e-3).value ==
          Catch::Approx(1.5 * std::sqrt(2.0)).margin(5e-3));
    CHECK(hausdorff_boundary_directed(qring, p.vertices(), 1e-4).value ==
          Catch::Approx(1.5 * std::sqrt(2.0)).margin(1e-3));
}

TEST_CASE("hausdorff_region rejects non-positive tolerance") {
    Polygon square({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    RegionRef rp(square), rq(CellSet(std::vector<Cell>{{0, 0}}));
    CHECK_THROWS_AS(hausdorff_region_directed(rp, rq, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hausdorff_region_directed(rp, rq, -1.0), std::invalid_argument);
}

TEST_CASE("symmetric difference on exact cases") {
    Polygon square({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    CellSet four(std::vector<Cell>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(symmetric_difference_area(square, four) == Catch::Approx(0.0).margin(1e-9));
    Polygon slab({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
    CellSet one(std::vector<Cell>{{0, 0}});
    CHECK(symmetric_difference_area(slab, one) == Catch::Approx(1.0));
    CHECK(normalized_symmetric_difference(slab, one) == Catch::Approx(0.5));
}

TEST_CASE("symmetric difference matches Monte-Carlo") {
    Polygon p = random_simple_polygon(16, 31);
    CellSet q = optimal_baseline(p);
    double got = symmetric_difference_area(p, q);
    double est = mc_symdiff(p, q, 600000, 7);
    CHECK(got == Catch::Approx(est).margin(0.02 * polygon_area(p) + 0.05));
}

TEST_CASE("metrics scale linearly with the input") {
    Polygon p = random_simple_polygon(12, 44);
    HausdorffBuild b = construct_hausdorff(p);
    std::vector<Point> q = boundary_cycle(b.result).as_points();
    std::vector<Point> p2, q2;
    for (const Point& v : p.vertices()) p2.push_back({2 * v.x, 2 * v.y});
    for (const Point& v : q) q2.push_back({2 * v.x, 2 * v.y});
    double d1 = hausdorff_boundary(p.vertices(), q, 1e-6).value;
    double d2 = hausdorff_boundary(p2, q2, 2e-6).value;
    CHECK(d2 == Catch::Approx(2 * d1).epsilon(1e-6).margin(1e-5));
}

TEST_CASE("metric results are deterministic") {
    Polygon p = random_simple_polygon(15, 52);
    HausdorffBuild b = construct_hausdorff(p);
    std::vector<Point> q = boundary_cycle(b.result).as_points();
    DistanceResult r1 = hausdorff_boundary(p.vertices(), q, 1e-5);
    DistanceResult r2 = hausdorff_boundary(p.vertices(), q, 1e-5);
    CHECK(r1.value == r2.value);
    RegionRef rp(p), rq(b.result);
    CHECK(hausdorff_region_directed(rp, rq, 1e-3).value ==
          hausdorff_region_directed(rp, rq, 1e-3).value);
    CHECK(symmetric_difference_area(p, b.result) == symmetric_difference_area(p, b.result));
}

TEST_CASE("reported error bound is honest") {
    Polygon p = random_simple_polygon(10, 61);
    HausdorffBuild b = construct_hausdorff(p);
    std::vector<Point> q = boundary_cycle(b.result).as_points();
    DistanceResult coarse = hausdorff_boundary(p.vertices(), q, 0.05);
    DistanceResult fine = hausdorff_boundary(p.vertices(), q, 1e-6);
    CHECK(coarse.error_bound <= 0.05 + 1e-12);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.error_bound + 1e-6);
}
