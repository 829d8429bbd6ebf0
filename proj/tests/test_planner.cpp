#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "atugv/planner.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace atugv;

namespace {

void check_coords(const GeneralizedCoordinates& got, const GeneralizedCoordinates& want, double tol) {
    CHECK(std::abs(got.lambda1 - want.lambda1) <= tol);
    CHECK(std::abs(got.lambda2 - want.lambda2) <= tol);
    CHECK(std::abs(got.sigma_r - want.sigma_r) <= tol);
    CHECK(std::abs(got.sigma_d - want.sigma_d) <= tol);
    CHECK(std::abs(got.d1 - want.d1) <= tol);
    CHECK(std::abs(got.d2 - want.d2) <= tol);
}

struct Setup {
    CellGraph graph;
    ReferenceConfiguration reference;
};

Setup seven() {
    CellGraph g = CellGraph::build(fixtures::seven_cell());
    ReferenceConfiguration ref = solve_reference_positions(g, 1.0);
    return {std::move(g), std::move(ref)};
}

}  // namespace

TEST_CASE("blend") {
    for (BlendKind kind : {BlendKind::Linear, BlendKind::Smoothstep}) {
        CHECK(blend(2.0, 2.0, 6.0, kind) == 0.0);
        CHECK(blend(6.0, 2.0, 6.0, kind) == 1.0);
        CHECK(blend(4.0, 2.0, 6.0, kind) == 0.5);
        try {
            blend(6.5, 2.0, 6.0, kind);
            FAIL("expected domain error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Domain);
        }
        CHECK_THROWS_AS(blend(1.9, 2.0, 6.0, kind), Error);
    }
    CHECK(blend(3.0, 2.0, 6.0, BlendKind::Linear) == 0.25);
    CHECK(blend(3.0, 2.0, 6.0, BlendKind::Smoothstep) == 0.15625);

    double last = -1.0;
    for (int k = 0; k <= 400; ++k) {
        const double b = blend(k / 40.0, 0.0, 10.0, BlendKind::Smoothstep);
        CHECK(b >= last);
        last = b;
    }
}

TEST_CASE("blend kind names") {
    CHECK(parse_blend_kind("linear") == BlendKind::Linear);
    CHECK(parse_blend_kind("smoothstep") == BlendKind::Smoothstep);
    CHECK_FALSE(parse_blend_kind("cubic").has_value());
    CHECK(std::string(to_string(BlendKind::Smoothstep)) == "smoothstep");
}

TEST_CASE("validate plan spec") {
    PlanSpec spec = fixtures::simulation_plan();
    validate(spec);
    spec.tf = spec.t0;
    CHECK_THROWS_AS(validate(spec), Error);
    spec = fixtures::simulation_plan();
    spec.final.lambda2 = 0.0;
    try {
        validate(spec);
        FAIL("expected validation error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Validation);
    }
}

TEST_CASE("coordinates_at") {
    const PlanSpec sim = fixtures::simulation_plan();
    check_coords(coordinates_at(sim, 0.0), GeneralizedCoordinates::identity(), 0.0);
    check_coords(coordinates_at(sim, 10.0), fixtures::simulation_final(), 0.0);

    const PlanSpec exp = fixtures::experiment_plan(BlendKind::Linear);
    check_coords(coordinates_at(exp, 10.0), {0.95, 0.9, 0.1, 0.075, 0.5, 0.5}, 1e-15);
    // The smoothstep midpoint coincides with the linear one.
    check_coords(coordinates_at(fixtures::experiment_plan(), 10.0), {0.95, 0.9, 0.1, 0.075, 0.5, 0.5}, 1e-15);
}

TEST_CASE("coordinates move monotonically between endpoints") {
    for (const PlanSpec& spec : {fixtures::simulation_plan(), fixtures::experiment_plan()}) {
        GeneralizedCoordinates last = spec.initial;
        for (int k = 1; k <= 500; ++k) {
            const auto c = coordinates_at(spec, spec.t0 + (spec.tf - spec.t0) * k / 500.0);
            CHECK(c.lambda1 <= last.lambda1);
            CHECK(c.lambda2 <= last.lambda2);
            CHECK(c.sigma_r >= last.sigma_r);
            CHECK(c.sigma_d >= last.sigma_d);
            CHECK(c.d1 >= last.d1);
            CHECK(c.d2 >= last.d2);
            last = c;
        }
    }
}

TEST_CASE("actuated joints in layer order") {
    const auto s = seven();
    const std::vector<Joint> expected{{4, 1}, {4, 2}, {5, 1}, {5, 2}, {6, 2}, {6, 3}, {7, 1}, {7, 3}};
    CHECK(actuated_joints(s.graph) == expected);
    const ActuatedJoints j = actuated_joints_of(s.graph, 6);
    CHECK(j.neighbors == std::array<CellId, 2>{2, 3});
    CHECK(j.arm_lengths == std::array<double, 2>{0.3, 0.3});
}

TEST_CASE("desired_state") {
    const auto s = seven();
    const PlanSpec spec = fixtures::simulation_plan();

    SUBCASE("identity at the start") {
        const DesiredState start = desired_state(spec, s.graph, s.reference, 0.0);
        for (CellId i = 1; i <= 7; ++i) CHECK(start.positions[i - 1] == s.reference.position(i));
    }
    SUBCASE("positions follow the affine map at every sample") {
        for (int k = 0; k <= 50; ++k) {
            const double t = 10.0 * k / 50.0;
            const DesiredState st = desired_state(spec, s.graph, s.reference, t);
            const auto c = coordinates_at(spec, t);
            const oracle::Mat q = oracle::jacobian(c.lambda1, c.lambda2, c.sigma_r, c.sigma_d);
            for (CellId i = 1; i <= 7; ++i) {
                const Vec2 a = s.reference.position(i);
                const oracle::Pt want = oracle::apply(q, {c.d1, c.d2}, {a.x, a.y});
                CHECK(distance(st.positions[i - 1], {want[0], want[1]}) <= 1e-14);
            }
        }
    }
    SUBCASE("elbow angle of joint (5, 1) at the final time") {
        const DesiredState end = desired_state(spec, s.graph, s.reference, 10.0);
        CHECK(std::abs(end.elbow_angles[2] - 1.4252629698772042481) <= 1e-12);
    }
    SUBCASE("unreachable separation names the joint") {
        const CellGraph g = CellGraph::build(fixtures::seven_cell(0.05, 0.01));
        try {
            desired_state(spec, g, s.reference, 0.0);
            FAIL("expected unreachable separation");
        } catch (const JointError& e) {
            CHECK(e.code() == ErrorCode::UnreachableSeparation);
            CHECK(e.cell() == 4);
        }
    }
}

TEST_CASE("plan") {
    const auto s = seven();

    SUBCASE("uniform samples ending exactly at tf") {
        const PlannedTrajectory p = plan(fixtures::simulation_plan(), s.graph, s.reference, {200, 100});
        REQUIRE(p.samples.size() == 200);
        CHECK(p.samples.front().time == 0.0);
        CHECK(p.samples.back().time == 10.0);
        CHECK(p.joints.size() == 8);
        CHECK(p.samples[1].time == doctest::Approx(10.0 / 199));
    }
    SUBCASE("identity plan keeps every cell at its reference position") {
        const PlanSpec still{0.0, 5.0, GeneralizedCoordinates::identity(), GeneralizedCoordinates::identity(),
                             BlendKind::Smoothstep};
        const PlannedTrajectory p = plan(still, s.graph, s.reference);
        for (const DesiredState& st : p.samples)
            for (CellId i = 1; i <= 7; ++i) CHECK(st.positions[i - 1] == s.reference.position(i));
    }
    SUBCASE("strain below the bound is rejected with time and strain") {
        PlanSpec spec = fixtures::simulation_plan();
        spec.final.lambda2 = 0.4;  // lambda_min = 0.5196...
        try {
            plan(spec, s.graph, s.reference);
            FAIL("expected unsafe plan");
        } catch (const UnsafePlanError& e) {
            CHECK(e.code() == ErrorCode::UnsafePlan);
            CHECK(e.verdict().violating_strain == 2);
            CHECK(e.time() > 0.0);
            CHECK(e.time() <= 10.0);
            CHECK(e.verdict().min_strain < e.lambda_min());
            CHECK(e.lambda_min() == doctest::Approx(0.5196152422706632));
        }
    }
    SUBCASE("an unsafe start is caught with only a few samples") {
        PlanSpec spec{0.0, 10.0, {0.5, 0.9, 0, 0, 0, 0}, {1.0, 1.0, 0, 0, 0, 0}, BlendKind::Linear};
        CHECK_THROWS_AS(check_plan_safety(spec, SafetyBound(0.05, std::sqrt(3.0) / 9), {2, 3}), UnsafePlanError);
    }
}
