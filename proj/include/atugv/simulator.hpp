#pragma once

// Closed-loop tracking of a planned affine transformation.
//
// Powered cells run the proportional velocity law v = alpha (p - r) through
// either a single integrator or a double integrator with an inner velocity
// loop. Unpowered cells are placed by forward kinematics from the actual
// positions of their actuated neighbors and the commanded elbow angles.
// Integration is explicit Euler with a fixed step.

#include <map>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "atugv/planner.hpp"

namespace atugv {

enum class DynamicsModel { SingleIntegrator, DoubleIntegrator };
enum class InitialCondition { AtReference, Perturbed };

const char* to_string(DynamicsModel model);
std::optional<DynamicsModel> parse_dynamics_model(std::string_view text);
const char* to_string(InitialCondition mode);
std::optional<InitialCondition> parse_initial_condition(std::string_view text);

struct SimConfig {
    double dt = 0.01;
    DynamicsModel model = DynamicsModel::SingleIntegrator;
    double gain = 10.0;                  // default alpha_i, 1/s
    std::map<CellId, double> cell_gains;  // per-cell alpha_i overrides
    double velocity_gain = 20.0;          // k_v, double integrator only
    InitialCondition initial = InitialCondition::AtReference;
    std::map<CellId, Vec2> offsets;  // powered-cell start offsets when perturbed

    double gain_for(CellId cell) const;
};

// Checks dt > 0, dt <= (tf - t0) / 10, positive gains, alpha dt < 2 (and
// k_v dt < 2), that the horizon is a whole number of steps, and that offsets
// name powered cells. Throws Validation.
void validate(const SimConfig& config, const PlanSpec& spec, const CellGraph& graph);

struct VehicleState {
    Vec2 position;
    Vec2 velocity;      // double integrator only
    double gain = 0.0;  // alpha_i; 0 for unpowered cells
};

Vec2 velocity_command(Vec2 desired, Vec2 actual, double gain);

// One Euler step of a powered cell toward `desired`; returns the new state.
VehicleState advance(const VehicleState& state, Vec2 desired, const SimConfig& config);

struct TraceStep {
    double time = 0.0;
    std::vector<Vec2> actual;                   // indexed by id - 1
    std::vector<Vec2> desired;                  // indexed by id - 1
    std::vector<std::optional<Vec2>> commanded;  // empty for unpowered cells
    std::vector<double> elbow_desired;          // aligned with SimulationTrace::joints
    std::vector<double> elbow_actual;
    std::vector<double> error_norm;  // ||r_i - p_i||, indexed by id - 1
    double min_clearance = 0.0;      // minimum pairwise distance of actual positions
};

struct SimulationTrace {
    std::vector<Joint> joints;
    std::vector<TraceStep> steps;

    std::vector<double> terminal_errors() const;
    double min_clearance() const;
};

class SimulationError : public Error {
public:
    SimulationError(std::size_t step, ErrorCode cause, const std::string& message,
                    std::shared_ptr<const SimulationTrace> partial)
        : Error(ErrorCode::Simulation, message), step_(step), cause_(cause), partial_(std::move(partial)) {}

    std::size_t step() const noexcept { return step_; }
    ErrorCode cause() const noexcept { return cause_; }
    const SimulationTrace& partial_trace() const noexcept { return *partial_; }

private:
    std::size_t step_;
    ErrorCode cause_;
    std::shared_ptr<const SimulationTrace> partial_;
};

class Simulator {
public:
    Simulator(const CellGraph& graph, const ReferenceConfiguration& reference, const PlanSpec& spec,
              const SimConfig& config);

    std::size_t step_count() const { return steps_; }
    double time_at(std::size_t k) const;

    std::vector<VehicleState> initial_states() const;

    // Advances every cell from time_at(k) to time_at(k + 1).
    std::vector<VehicleState> step(const std::vector<VehicleState>& states, std::size_t k) const;

    SimulationTrace run() const;

private:
    std::vector<VehicleState> place_unpowered(std::vector<VehicleState> states,
                                              const DesiredState& target,
                                              const std::vector<VehicleState>& previous) const;
    TraceStep record(const std::vector<VehicleState>& states, const DesiredState& target) const;

    CellGraph graph_;
    ReferenceConfiguration reference_;
    PlanSpec spec_;
    SimConfig config_;
    std::vector<Joint> joints_;
    std::size_t steps_ = 0;
};

SimulationTrace run(const CellGraph& graph, const ReferenceConfiguration& reference,
                    const PlanSpec& spec, const SimConfig& config);

}  // namespace atugv
