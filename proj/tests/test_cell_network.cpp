#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "atugv/cell_network.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace atugv;

namespace {

ErrorCode build_error(const GraphDescription& d) {
    try {
        CellGraph::build(d);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode{};
}

const double kSqrt3 = std::sqrt(3.0);

}  // namespace

TEST_CASE("seven-cell graph partitions and defaults") {
    const CellGraph g = CellGraph::build(fixtures::seven_cell());
    CHECK(g.cell_count() == 7);
    CHECK(g.layer_count() == 3);
    CHECK(g.powered_cells() == std::vector<CellId>{1, 2, 3, 4});
    CHECK(g.unpowered_cells() == std::vector<CellId>{5, 6, 7});
    CHECK(g.interior_cells() == std::vector<CellId>{4, 5, 6, 7});
    CHECK(g.actuated_neighbors(4) == std::array<CellId, 2>{1, 2});
    CHECK(g.free_neighbor(4) == 3);
    CHECK(g.actuated_neighbors(6) == std::array<CellId, 2>{2, 3});
    CHECK(g.arm_length(5, 1) == 0.3);
}

TEST_CASE("build_layered_network") {
    SUBCASE("four-cell graph has two layers") {
        const LayeredNetwork net = build_layered_network(CellGraph::build(fixtures::four_cell()));
        REQUIRE(net.layers.size() == 2);
        CHECK(net.layers[0].neurons == std::vector<CellId>{1, 2, 3});
        CHECK(net.layers[1].neurons == std::vector<CellId>{4});
        CHECK(net.layers[1].inputs.at(4) == std::vector<CellId>{1, 2, 3});
    }
    SUBCASE("seven-cell graph has three layers with pass-through neurons") {
        const LayeredNetwork net = build_layered_network(CellGraph::build(fixtures::seven_cell()));
        REQUIRE(net.layers.size() == 3);
        CHECK(net.layers[1].neurons == std::vector<CellId>{1, 2, 3, 4});
        CHECK(net.layers[1].inputs.at(1) == std::vector<CellId>{1});
        CHECK(net.layers[1].inputs.at(4) == std::vector<CellId>{1, 2, 3});
        CHECK(net.layers[2].neurons == std::vector<CellId>{5, 6, 7});
        CHECK(net.layers[2].inputs.at(5) == std::vector<CellId>{1, 2, 4});
        CHECK(net.layers[2].inputs.at(6) == std::vector<CellId>{2, 3, 4});
        CHECK(net.layers[2].inputs.at(7) == std::vector<CellId>{1, 3, 4});
    }
}

TEST_CASE("structural violations") {
    SUBCASE("same-layer neighbor is a layering violation") {
        auto d = fixtures::seven_cell();
        d.neighbors[5] = {1, 2, 6};
        CHECK(build_error(d) == ErrorCode::LayeringViolation);
    }
    SUBCASE("later-layer neighbor is a layering violation") {
        auto d = fixtures::seven_cell();
        d.neighbors[4] = {1, 2, 5};
        CHECK(build_error(d) == ErrorCode::LayeringViolation);
    }
    SUBCASE("four neighbors is a degree violation") {
        auto d = fixtures::seven_cell();
        d.neighbors[5] = {1, 2, 3, 4};
        CHECK(build_error(d) == ErrorCode::DegreeViolation);
    }
    SUBCASE("repeated neighbor is a degree violation") {
        auto d = fixtures::seven_cell();
        d.neighbors[5] = {1, 1, 4};
        CHECK(build_error(d) == ErrorCode::DegreeViolation);
    }
    SUBCASE("missing neighbor set is a degree violation") {
        auto d = fixtures::seven_cell();
        d.neighbors.erase(6);
        CHECK(build_error(d) == ErrorCode::DegreeViolation);
    }
    SUBCASE("boundary layer must hold three cells") {
        auto d = fixtures::four_cell();
        d.layers = {{1, 2}, {3, 4}};
        CHECK(build_error(d) == ErrorCode::Validation);
    }
    SUBCASE("layers must cover 1..N without repeats") {
        auto d = fixtures::four_cell();
        d.layers = {{1, 2, 3}, {5}};
        CHECK(build_error(d) == ErrorCode::Validation);
        d.layers = {{1, 2, 3}, {3}};
        CHECK(build_error(d) == ErrorCode::Validation);
    }
    SUBCASE("radius and arm length must be positive") {
        auto d = fixtures::four_cell();
        d.cell_radius = 0.0;
        CHECK(build_error(d) == ErrorCode::InvalidArgument);
        d = fixtures::four_cell();
        d.arm_length = -1.0;
        CHECK(build_error(d) == ErrorCode::InvalidArgument);
    }
    SUBCASE("actuated joints must be two neighbors") {
        auto d = fixtures::seven_cell();
        d.actuated[5] = {1, 3};
        CHECK(build_error(d) == ErrorCode::Validation);
        d.actuated[5] = {1};
        CHECK(build_error(d) == ErrorCode::Validation);
        d.actuated[5] = {2, 4};
        CHECK(CellGraph::build(d).actuated_neighbors(5) == std::array<CellId, 2>{2, 4});
    }
    SUBCASE("unpowered boundary cell is rejected") {
        auto d = fixtures::seven_cell();
        d.powered = std::vector<CellId>{2, 3, 4};
        CHECK(build_error(d) == ErrorCode::Validation);
    }
}

TEST_CASE("solve_reference_positions") {
    SUBCASE("four-cell interior cell sits at the centroid") {
        const auto ref = solve_reference_positions(CellGraph::build(fixtures::four_cell()), 1.0);
        CHECK(ref.position(1) == Vec2{0.0, 0.0});
        CHECK(ref.position(2) == Vec2{1.0, 0.0});
        CHECK(std::abs(ref.position(3).x - 0.5) <= 1e-15);
        CHECK(std::abs(ref.position(3).y - kSqrt3 / 2) <= 1e-15);
        CHECK(std::abs(ref.position(4).x - 0.5) <= 1e-15);
        CHECK(std::abs(ref.position(4).y - kSqrt3 / 6) <= 1e-15);
    }
    SUBCASE("seven-cell positions match layer-order averaging") {
        const auto ref = solve_reference_positions(CellGraph::build(fixtures::seven_cell()), 1.0);
        const Vec2 expected[] = {{0.5, kSqrt3 / 18}, {2.0 / 3, 2 * kSqrt3 / 9}, {1.0 / 3, 2 * kSqrt3 / 9}};
        for (int k = 0; k < 3; ++k) CHECK(distance(ref.position(5 + k), expected[k]) <= 1e-15);
        CHECK(std::abs(ref.d_min - kSqrt3 / 9) <= 1e-15);
    }
    SUBCASE("overlap at too small a side length") {
        // d_min = sqrt(3)/9 s must exceed 2r = 0.1
        CHECK_THROWS_AS(solve_reference_positions(CellGraph::build(fixtures::seven_cell()), 0.5), Error);
        try {
            solve_reference_positions(CellGraph::build(fixtures::seven_cell()), 0.5);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ReferenceOverlap);
        }
    }
    SUBCASE("anchor moves and turns the boundary triangle") {
        const auto ref = solve_reference_positions(CellGraph::build(fixtures::four_cell()), 2.0,
                                                   Anchor{{1.0, -1.0}, std::acos(-1.0) / 2});
        CHECK(distance(ref.position(2), {1.0, 1.0}) <= 1e-15);
        CHECK(std::abs(ref.d_min - 2.0 / kSqrt3) <= 1e-14);
    }
}

TEST_CASE("min_separation") {
    ReferenceConfiguration two{{{0.0, 0.0}, {1.0, 0.0}}, 0.0};
    CHECK(min_separation(two) == 1.0);

    const auto four = solve_reference_positions(CellGraph::build(fixtures::four_cell()), 1.0);
    CHECK(std::abs(min_separation(four) - 1.0 / kSqrt3) <= 1e-15);

    const auto seven = solve_reference_positions(CellGraph::build(fixtures::seven_cell()), 1.0);
    std::vector<oracle::Pt> pts;
    for (Vec2 p : seven.positions) pts.push_back({p.x, p.y});
    CHECK(min_separation(seven) == oracle::brute_force_min_distance(pts));
    CHECK(std::abs(min_separation(seven) - kSqrt3 / 9) <= 1e-15);
}

TEST_CASE("random layered graphs: averaging residual and convex-hull containment") {
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        GraphDescription d;
        d.cell_radius = 1e-4;
        d.arm_length = 1.0;
        d.layers = {{1, 2, 3}};
        CellId next = 4;
        std::set<std::vector<CellId>> used;
        std::uniform_int_distribution<int> layer_count(1, 4), layer_size(1, 4);
        const int layers = layer_count(rng);
        for (int l = 0; l < layers; ++l) {
            std::vector<CellId> pool;
            for (CellId c = 1; c < next; ++c) pool.push_back(c);
            std::vector<CellId> layer;
            const int size = layer_size(rng);
            for (int k = 0; k < size; ++k) {
                std::vector<CellId> pick;
                int attempts = 0;
                do {
                    std::shuffle(pool.begin(), pool.end(), rng);
                    pick.assign(pool.begin(), pool.begin() + 3);
                    std::sort(pick.begin(), pick.end());
                } while (used.count(pick) != 0 && ++attempts < 50);
                if (!used.insert(pick).second) break;
                d.neighbors[next] = pick;
                layer.push_back(next++);
            }
            d.layers.push_back(layer);
        }
        const CellGraph g = CellGraph::build(d);
        ReferenceConfiguration ref;
        try {
            ref = solve_reference_positions(g, 1.0);
        } catch (const Error&) {
            continue;  // distinct neighbor sets can still average to the same point
        }
        ++checked;
        for (CellId cell : g.interior_cells()) {
            const auto& n = g.neighbors(cell);
            const Vec2 mean = (1.0 / 3.0) * (ref.position(n[0]) + ref.position(n[1]) + ref.position(n[2]));
            CHECK(distance(ref.position(cell), mean) <= 1e-10);
            // Barycentric coordinates with respect to the neighbor triangle are all 1/3.
            const Vec2 e1 = ref.position(n[1]) - ref.position(n[0]);
            const Vec2 e2 = ref.position(n[2]) - ref.position(n[0]);
            const Vec2 v = ref.position(cell) - ref.position(n[0]);
            const double det = e1.x * e2.y - e1.y * e2.x;
            if (std::abs(det) > 1e-9) {
                const double w1 = (v.x * e2.y - v.y * e2.x) / det;
                const double w2 = (e1.x * v.y - e1.y * v.x) / det;
                CHECK(std::abs(w1 - 1.0 / 3) <= 1e-8);
                CHECK(std::abs(w2 - 1.0 / 3) <= 1e-8);
            }
        }
        build_layered_network(g);
    }
    CHECK(checked > 200);
}
