#include "atugv/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace atugv {

const char* to_string(DynamicsModel model) {
    return model == DynamicsModel::SingleIntegrator ? "single_integrator" : "double_integrator";
}

std::optional<DynamicsModel> parse_dynamics_model(std::string_view text) {
    if (text == "single_integrator") return DynamicsModel::SingleIntegrator;
    if (text == "double_integrator") return DynamicsModel::DoubleIntegrator;
    return std::nullopt;
}

const char* to_string(InitialCondition mode) {
    return mode == InitialCondition::AtReference ? "reference" : "perturbed";
}

std::optional<InitialCondition> parse_initial_condition(std::string_view text) {
    if (text == "reference") return InitialCondition::AtReference;
    if (text == "perturbed") return InitialCondition::Perturbed;
    return std::nullopt;
}

double SimConfig::gain_for(CellId cell) const {
    const auto it = cell_gains.find(cell);
    return it == cell_gains.end() ? gain : it->second;
}

void validate(const SimConfig& config, const PlanSpec& spec, const CellGraph& graph) {
    const auto fail = [](const std::string& what) { throw Error(ErrorCode::Validation, what); };
    const double horizon = spec.tf - spec.t0;
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) fail("timestep dt must be positive");
    if (!(horizon > 0.0) || config.dt > horizon / 10.0) {
        std::ostringstream msg;
        msg << "timestep dt = " << config.dt << " must not exceed (tf - t0) / 10 = " << horizon / 10.0;
        fail(msg.str());
    }
    const double steps = horizon / config.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * steps) {
        fail("horizon tf - t0 must be a whole number of timesteps");
    }

    const auto check_gain = [&](double alpha, const std::string& who) {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("tracking gain for " + who + " must be positive");
        if (alpha * config.dt >= 2.0) {
            fail("tracking gain for " + who + " times dt must be below 2 (explicit Euler stability)");
        }
    };
    check_gain(config.gain, "default");
    for (const auto& [cell, alpha] : config.cell_gains) {
        if (!graph.contains(cell) || !graph.is_powered(cell)) {
            fail("gain given for non-powered cell " + std::to_string(cell));
        }
        check_gain(alpha, "cell " + std::to_string(cell));
    }
    if (config.model == DynamicsModel::DoubleIntegrator) {
        if (!(config.velocity_gain > 0.0) || !std::isfinite(config.velocity_gain)) {
            fail("velocity-loop gain k_v must be positive");
        }
        if (config.velocity_gain * config.dt >= 2.0) {
            fail("velocity-loop gain k_v times dt must be below 2 (explicit Euler stability)");
        }
    }
    for (const auto& [cell, offset] : config.offsets) {
        if (!graph.contains(cell) || !graph.is_powered(cell)) {
            fail("initial offset given for non-powered cell " + std::to_string(cell));
        }
        if (!is_finite(offset)) fail("initial offsets must be finite");
    }
}

Vec2 velocity_command(Vec2 desired, Vec2 actual, double gain) {
    return gain * (desired - actual);
}

VehicleState advance(const VehicleState& state, Vec2 desired, const SimConfig& config) {
    const Vec2 command = velocity_command(desired, state.position, state.gain);
    VehicleState next = state;
    if (config.model == DynamicsModel::SingleIntegrator) {
        next.position = state.position + config.dt * command;
        next.velocity = command;
    } else {
        const Vec2 acceleration = config.velocity_gain * (command - state.velocity);
        next.velocity = state.velocity + config.dt * acceleration;
        next.position = state.position + config.dt * state.velocity;
    }
    return next;
}

std::vector<double> SimulationTrace::terminal_errors() const {
    return steps.empty() ? std::vector<double>{} : steps.back().error_norm;
}

double SimulationTrace::min_clearance() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : steps) best = std::min(best, s.min_clearance);
    return best;
}

Simulator::Simulator(const CellGraph& graph, const ReferenceConfiguration& reference,
                     const PlanSpec& spec, const SimConfig& config)
    : graph_(graph), reference_(reference), spec_(spec), config_(config), joints_(actuated_joints(graph)) {
    validate(config_, spec_, graph_);
    validate(spec_);
    if (reference_.cell_count() != graph_.cell_count()) {
        throw Error(ErrorCode::InvalidArgument, "reference configuration does not match the cell graph");
    }
    steps_ = static_cast<std::size_t>(std::llround((spec_.tf - spec_.t0) / config_.dt));
}

double Simulator::time_at(std::size_t k) const {
    if (k >= steps_) return spec_.tf;
    return spec_.t0 + (spec_.tf - spec_.t0) * static_cast<double>(k) / static_cast<double>(steps_);
}

std::vector<VehicleState> Simulator::place_unpowered(std::vector<VehicleState> states,
                                                     const DesiredState& target,
                                                     const std::vector<VehicleState>& previous) const {
    const double r = graph_.cell_radius();
    std::size_t joint = 0;
    for (CellId cell : graph_.interior_cells()) {
        const std::size_t first_joint = joint;
        joint += 2;
        if (graph_.is_powered(cell)) continue;
        const ActuatedJoints joints = actuated_joints_of(graph_, cell);
        const ElbowPair angles{target.elbow_angles[first_joint], target.elbow_angles[first_joint + 1]};
        states[cell - 1].position = resolve_unpowered_position(
            joints, states[joints.neighbors[0] - 1].position, states[joints.neighbors[1] - 1].position,
            angles, r, previous[cell - 1].position);
    }
    return states;
}

std::vector<VehicleState> Simulator::initial_states() const {
    const DesiredState start = desired_state(spec_, graph_, reference_, spec_.t0);
    std::vector<VehicleState> states(static_cast<std::size_t>(graph_.cell_count()));
    for (CellId cell = 1; cell <= graph_.cell_count(); ++cell) {
        auto& s = states[cell - 1];
        s.position = start.positions[cell - 1];
        if (graph_.is_powered(cell)) {
            s.gain = config_.gain_for(cell);
            if (config_.initial == InitialCondition::Perturbed) {
                if (const auto it = config_.offsets.find(cell); it != config_.offsets.end()) {
                    s.position += it->second;
                }
            }
        }
    }
    // The desired start positions seed the branch choice for unpowered cells.
    return place_unpowered(states, start, states);
}

std::vector<VehicleState> Simulator::step(const std::vector<VehicleState>& states, std::size_t k) const {
    const DesiredState now = desired_state(spec_, graph_, reference_, time_at(k));
    const DesiredState next = desired_state(spec_, graph_, reference_, time_at(k + 1));
    std::vector<VehicleState> out = states;
    for (CellId cell = 1; cell <= graph_.cell_count(); ++cell) {
        if (graph_.is_powered(cell)) {
            out[cell - 1] = advance(states[cell - 1], now.positions[cell - 1], config_);
        }
    }
    return place_unpowered(std::move(out), next, states);
}

TraceStep Simulator::record(const std::vector<VehicleState>& states, const DesiredState& target) const {
    TraceStep s;
    s.time = target.time;
    s.desired = target.positions;
    s.elbow_desired = target.elbow_angles;
    for (CellId cell = 1; cell <= graph_.cell_count(); ++cell) {
        const auto& st = states[cell - 1];
        s.actual.push_back(st.position);
        s.error_norm.push_back(distance(st.position, target.positions[cell - 1]));
        if (graph_.is_powered(cell)) {
            s.commanded.emplace_back(velocity_command(target.positions[cell - 1], st.position, st.gain));
        } else {
            s.commanded.emplace_back(std::nullopt);
        }
    }
    const double r = graph_.cell_radius();
    for (const Joint& j : joints_) {
        const double reach = 2.0 * (graph_.arm_length(j.cell, j.neighbor) + r);
        const double ratio = distance(s.actual[j.cell - 1], s.actual[j.neighbor - 1]) / reach;
        s.elbow_actual.push_back(2.0 * std::asin(std::min(1.0, ratio)));
    }
    s.min_clearance = closest_pair(s.actual).distance;
    return s;
}

SimulationTrace Simulator::run() const {
    auto trace = std::make_shared<SimulationTrace>();
    trace->joints = joints_;
    std::size_t k = 0;
    try {
        std::vector<VehicleState> states = initial_states();
        for (;; ++k) {
            trace->steps.push_back(record(states, desired_state(spec_, graph_, reference_, time_at(k))));
            if (k == steps_) break;
            states = step(states, k);
        }
    } catch (const Error& e) {
        std::ostringstream msg;
        msg << "simulation aborted at step " << k << " (t = " << time_at(k) << "): " << e.what();
        throw SimulationError(k, e.code(), msg.str(), trace);
    }
    return std::move(*trace);
}

SimulationTrace run(const CellGraph& graph, const ReferenceConfiguration& reference,
                    const PlanSpec& spec, const SimConfig& config) {
    return Simulator(graph, reference, spec, config).run();
}

}  // namespace atugv
