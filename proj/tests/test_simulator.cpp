#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "atugv/simulator.hpp"
#include "fixtures.hpp"

using namespace atugv;

namespace {

struct Setup {
    CellGraph graph;
    ReferenceConfiguration reference;
};

Setup seven() {
    CellGraph g = CellGraph::build(fixtures::seven_cell());
    ReferenceConfiguration ref = solve_reference_positions(g, 1.0);
    return {std::move(g), std::move(ref)};
}

ErrorCode validation_code(const SimConfig& c, const PlanSpec& spec, const CellGraph& g) {
    try {
        validate(c, spec, g);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode{};
}

}  // namespace

TEST_CASE("velocity_command") {
    CHECK(velocity_command({1.0, 2.0}, {0.0, 0.0}, 1.0) == Vec2{1.0, 2.0});
    CHECK(velocity_command({1.0, 2.0}, {1.0, 2.0}, 10.0) == Vec2{0.0, 0.0});
    CHECK(velocity_command({0.0, 0.0}, {1.0, 0.0}, 10.0) == Vec2{-10.0, 0.0});
}

TEST_CASE("advance") {
    SimConfig c;
    c.dt = 0.01;
    SUBCASE("single Euler step") {
        const VehicleState s = advance({{1.0, 0.0}, {}, 10.0}, {0.0, 0.0}, c);
        CHECK(std::abs(s.position.x - 0.9) <= 1e-15);
        CHECK(s.position.y == 0.0);
    }
    SUBCASE("desired position is a fixed point") {
        const VehicleState s = advance({{0.3, -0.2}, {}, 10.0}, {0.3, -0.2}, c);
        CHECK(s.position == Vec2{0.3, -0.2});
    }
    SUBCASE("error contracts by 1 - alpha dt per step") {
        VehicleState s{{1.0, 0.0}, {}, 10.0};
        for (int k = 1; k <= 100; ++k) {
            const double before = norm(s.position);
            s = advance(s, {0.0, 0.0}, c);
            CHECK(std::abs(norm(s.position) / before - 0.9) <= 1e-12);
        }
    }
    SUBCASE("double integrator moves with the old velocity") {
        c.model = DynamicsModel::DoubleIntegrator;
        c.velocity_gain = 20.0;
        const VehicleState s = advance({{1.0, 0.0}, {0.5, 0.0}, 10.0}, {0.0, 0.0}, c);
        CHECK(std::abs(s.position.x - 1.005) <= 1e-15);
        // a = 20 (-10 - 0.5) = -210
        CHECK(std::abs(s.velocity.x - (0.5 - 2.1)) <= 1e-15);
    }
    SUBCASE("double integrator converges to a fixed target") {
        c.model = DynamicsModel::DoubleIntegrator;
        VehicleState s{{1.0, 1.0}, {}, 10.0};
        for (int k = 0; k < 2000; ++k) s = advance(s, {0.0, 0.0}, c);
        CHECK(norm(s.position) <= 1e-9);
    }
}

TEST_CASE("model names") {
    CHECK(parse_dynamics_model("double_integrator") == DynamicsModel::DoubleIntegrator);
    CHECK_FALSE(parse_dynamics_model("unicycle").has_value());
    CHECK(parse_initial_condition("perturbed") == InitialCondition::Perturbed);
    CHECK(std::string(to_string(DynamicsModel::SingleIntegrator)) == "single_integrator");
}

TEST_CASE("config validation") {
    const auto s = seven();
    const PlanSpec spec = fixtures::simulation_plan();
    SimConfig c;
    CHECK(validation_code(c, spec, s.graph) == ErrorCode{});

    c.gain = 200.0;  // alpha dt = 2
    CHECK(validation_code(c, spec, s.graph) == ErrorCode::Validation);
    c = {};
    c.cell_gains[2] = 250.0;
    CHECK(validation_code(c, spec, s.graph) == ErrorCode::Validation);
    c = {};
    c.model = DynamicsModel::DoubleIntegrator;
    c.velocity_gain = 200.0;
    CHECK(validation_code(c, spec, s.graph) == ErrorCode::Validation);
    c = {};
    c.dt = 2.0;  // more than a tenth of the horizon
    CHECK(validation_code(c, spec, s.graph) == ErrorCode::Validation);
    c.dt = 0.003;  // 10 / 0.003 is not whole
    CHECK(validation_code(c, spec, s.graph) == ErrorCode::Validation);
    c.dt = -0.01;
    CHECK(validation_code(c, spec, s.graph) == ErrorCode::Validation);
    c = {};
    c.initial = InitialCondition::Perturbed;
    c.offsets[6] = {0.01, 0.0};  // unpowered
    CHECK(validation_code(c, spec, s.graph) == ErrorCode::Validation);
}

TEST_CASE("identity plan from the reference has zero error throughout") {
    const auto s = seven();
    const PlanSpec still{0.0, 1.0, GeneralizedCoordinates::identity(), GeneralizedCoordinates::identity(),
                         BlendKind::Smoothstep};
    const SimulationTrace trace = run(s.graph, s.reference, still, SimConfig{});
    REQUIRE(trace.steps.size() == 101);
    for (const TraceStep& st : trace.steps)
        for (double e : st.error_norm) CHECK(e <= 1e-15);
}

TEST_CASE("seven-cell tracking") {
    const auto s = seven();
    const PlanSpec spec = fixtures::simulation_plan();
    const Simulator sim(s.graph, s.reference, spec, SimConfig{});
    CHECK(sim.step_count() == 1000);
    CHECK(sim.time_at(1000) == 10.0);

    const SimulationTrace trace = sim.run();
    REQUIRE(trace.steps.size() == 1001);
    CHECK(trace.joints.size() == 8);
    const auto errors = trace.terminal_errors();
    CHECK(*std::max_element(errors.begin(), errors.end()) < 1e-3);
    CHECK(trace.min_clearance() >= 2 * 0.05);

    SUBCASE("unpowered cells have no command, powered cells do") {
        for (CellId i = 1; i <= 7; ++i)
            CHECK(trace.steps[10].commanded[i - 1].has_value() == s.graph.is_powered(i));
    }
    SUBCASE("deterministic") {
        const SimulationTrace again = sim.run();
        for (std::size_t k = 0; k < trace.steps.size(); k += 97)
            CHECK(again.steps[k].actual == trace.steps[k].actual);
    }
    SUBCASE("stepping by hand matches run") {
        auto states = sim.initial_states();
        for (std::size_t k = 0; k < 50; ++k) states = sim.step(states, k);
        for (CellId i = 1; i <= 7; ++i) CHECK(states[i - 1].position == trace.steps[50].actual[i - 1]);
    }
}

TEST_CASE("perturbed start decays toward the plan") {
    const auto s = seven();
    SimConfig c;
    c.initial = InitialCondition::Perturbed;
    c.offsets = {{1, {0.02, 0.0}}, {4, {0.0, -0.02}}};
    const SimulationTrace trace = run(s.graph, s.reference, fixtures::simulation_plan(), c);
    CHECK(trace.steps.front().error_norm[0] == doctest::Approx(0.02));
    CHECK(trace.terminal_errors()[0] < 1e-3);
    CHECK(trace.terminal_errors()[3] < 1e-3);
}

TEST_CASE("double-integrator seven-cell run stays bounded") {
    const auto s = seven();
    SimConfig c;
    c.model = DynamicsModel::DoubleIntegrator;
    const SimulationTrace trace = run(s.graph, s.reference, fixtures::simulation_plan(), c);
    const auto errors = trace.terminal_errors();
    CHECK(*std::max_element(errors.begin(), errors.end()) < 5e-3);
}
