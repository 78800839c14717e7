#include <catch2/catch_amalgamated.hpp>

#include "gridify/fixtures.hpp"
#include "gridify/frechet_construct.hpp"
#include "gridify/frechet_distance.hpp"
#include "helpers.hpp"

using namespace gridify;
using namespace testing_oracles;

TEST_CASE("trace_visits walks the squares around an off-grid square") {
    // Square [0.3,2.3]^2: its boundary crosses the half-grid lines 0.5 and
    // 1.5 in both axes, visiting the 8 outer vertices of the 3x3 vertex
    // block along the way.
    Polygon p({{0.3, 0.3}, {2.3, 0.3}, {2.3, 2.3}, {0.3, 2.3}});
    VisitMapping vm = trace_visits(p);
    REQUIRE(vm.entries.size() == 8);
    std::unordered_set<GridVertex, GridVertexHash> seen;
    for (const Visit& v : vm.entries) {
        CHECK(v.vertex.x >= 0);
        CHECK(v.vertex.x <= 2);
        seen.insert(v.vertex);
    }
    CHECK(seen.size() == 8);        // all distinct, center (1,1) never visited
    CHECK_FALSE(seen.count({1, 1}));
}

TEST_CASE("trace_visits on a polygon inside one square") {
    Polygon p({{0.9, 0.9}, {1.1, 0.9}, {1.0, 1.1}});
    VisitMapping vm = trace_visits(p);
    REQUIRE(vm.entries.size() == 1);
    CHECK(vm.entries[0].vertex == GridVertex{1, 1});
    CHECK(vm.length_of(0) == Catch::Approx(vm.perimeter));
}

TEST_CASE("trace_visits chain adjacency and coverage on random polygons") {
    for (unsigned seed = 1; seed <= 50; ++seed) {
        Polygon p = random_simple_polygon(8 + int(seed % 20), 300 + seed);
        VisitMapping vm = trace_visits(p);
        std::size_t n = vm.entries.size();
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            total += vm.length_of(i);
            if (n > 1) {
                const GridVertex& a = vm.entries[i].vertex;
                const GridVertex& b = vm.entries[(i + 1) % n].vertex;
                CHECK(std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1);
            }
            // Each visit's sub-arc stays within the vertex's square.
            double s0 = vm.entries[i].start;
            double len = vm.length_of(i);
            for (double f : {0.0, 0.25, 0.5, 0.75, 0.999}) {
                Point pt = p.point_at(s0 + f * len);
                double dx = std::abs(pt.x - vm.entries[i].vertex.x);
                double dy = std::abs(pt.y - vm.entries[i].vertex.y);
                CHECK(std::max(dx, dy) <= 0.5 + 1e-6);
            }
        }
        CHECK(total == Catch::Approx(vm.perimeter));
    }
}

TEST_CASE("remove_duplicates conserves mapped perimeter and dedupes") {
    for (unsigned seed = 51; seed <= 70; ++seed) {
        Polygon p = random_simple_polygon(10 + int(seed % 15), seed);
        VisitMapping vm = remove_duplicates(trace_visits(p));
        std::unordered_set<GridVertex, GridVertexHash> seen;
        double total = 0;
        for (std::size_t i = 0; i < vm.entries.size(); ++i) {
            CHECK(seen.insert(vm.entries[i].vertex).second);
            total += vm.length_of(i);
        }
        CHECK(total == Catch::Approx(vm.perimeter));
    }
    // No duplicates: identity.
    Polygon p({{0.3, 0.3}, {2.3, 0.3}, {2.3, 2.3}, {0.3, 2.3}});
    VisitMapping before = trace_visits(p);
    VisitMapping after = remove_duplicates(before);
    CHECK(after.entries.size() == before.entries.size());
}

TEST_CASE("degenerate one-vertex chain expands toward the polygon") {
    Polygon p({{0.9, 0.9}, {1.3, 0.9}, {1.1, 1.3}});  // extends upper-right of (1,1)
    FrechetBuild b = construct_frechet(p);
    CHECK(b.cells.size() == 1);
    CHECK(b.cycle.vertices.size() == 4);
}

TEST_CASE("two-vertex chain expands to a 4-cycle") {
    // Thin horizontal polygon crossing x=1.5 only: visits (1,1) and (2,1).
    Polygon p({{0.8, 0.9}, {2.2, 0.9}, {2.2, 1.1}, {0.8, 1.1}});
    VisitMapping vm = remove_duplicates(trace_visits(p));
    REQUIRE(vm.entries.size() == 2);
    FrechetBuild b = construct_frechet(p);
    CHECK(b.cycle.vertices.size() == 4);
    CHECK(b.cells.size() == 1);
}

TEST_CASE("construct_frechet respects the claimed bound") {
    SECTION("convex polygon with long edges") {
        Polygon p({{0.3, 0.3}, {6.2, 0.4}, {6.4, 5.3}, {0.2, 5.2}});
        FrechetBuild b = construct_frechet(p);
        std::vector<Point> qring = boundary_cycle(b.cells).as_points();
        DistanceResult df = frechet_closed(p.vertices(), qring, 1e-3);
        CHECK(df.value <= b.claimed_bound + 1e-3);
        CHECK(df.value <= std::sqrt(2.0) / 2 + 2e-3);  // no duplicate merging needed
    }
    SECTION("combs") {
        for (double beta : {2.0, 3.0}) {
            Polygon p = comb_polygon(beta);
            FrechetBuild b = construct_frechet(p);
            std::vector<Point> qring = boundary_cycle(b.cells).as_points();
            DistanceResult df = frechet_closed(p.vertices(), qring, 1e-3);
            CHECK(df.value <= b.claimed_bound + 1e-3);
            CHECK(df.value >= 0.25 * std::sqrt(beta * beta - 2) - 2e-3);
        }
    }
}

TEST_CASE("construct_frechet is deterministic") {
    Polygon p = random_simple_polygon(18, 77);
    FrechetBuild a = construct_frechet(p);
    FrechetBuild b = construct_frechet(p);
    REQUIRE(a.cycle.vertices.size() == b.cycle.vertices.size());
    for (std::size_t i = 0; i < a.cycle.vertices.size(); ++i)
        CHECK(a.cycle.vertices[i] == b.cycle.vertices[i]);
}

TEST_CASE("frechet_closed basic values") {
    std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(frechet_closed(sq, sq, 1e-4).value <= 1e-4);
    // Parallel thin rectangles at vertical distance 0.5 (degenerate
    // doubled-segment stand-ins with matched parameterization).
    std::vector<Point> a{{0, 0}, {1, 0}, {1, 0.01}, {0, 0.01}};
    std::vector<Point> b{{0, 0.5}, {1, 0.5}, {1, 0.51}, {0, 0.51}};
    CHECK(frechet_closed(a, b, 1e-3).value == Catch::Approx(0.5).margin(5e-3));
}

TEST_CASE("frechet_closed dominates boundary Hausdorff") {
    for (unsigned seed : {5u, 23u}) {
        Polygon p = random_simple_polygon(10, seed);
        HausdorffBuild hb = construct_hausdorff(p);
        std::vector<Point> qring = boundary_cycle(hb.result).as_points();
        double tol = 1e-3;
        double dh = hausdorff_boundary(p.vertices(), qring, tol).value;
        double df = frechet_closed(p.vertices(), qring, tol).value;
        CHECK(df >= dh - 2 * tol);
    }
}

TEST_CASE("frechet_closed agrees with a hand-solved offset square") {
    // Unit square vs the same square translated by (3,0): the optimal
    // leash stays at the translation length.
    std::vector<Point> a{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    std::vector<Point> b{{3, 0}, {4, 0}, {4, 1}, {3, 1}};
    CHECK(frechet_closed(a, b, 1e-3).value == Catch::Approx(3.0).margin(5e-3));
}
