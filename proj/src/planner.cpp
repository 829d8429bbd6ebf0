#include "atugv/planner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace atugv {

const char* to_string(BlendKind kind) {
    return kind == BlendKind::Linear ? "linear" : "smoothstep";
}

std::optional<BlendKind> parse_blend_kind(std::string_view text) {
    if (text == "linear") return BlendKind::Linear;
    if (text == "smoothstep") return BlendKind::Smoothstep;
    return std::nullopt;
}

double blend(double t, double t0, double tf, BlendKind kind) {
    if (!(tf > t0)) throw Error(ErrorCode::Domain, "blend horizon must satisfy tf > t0");
    if (!(t >= t0 && t <= tf)) {
        std::ostringstream msg;
        msg << "time " << t << " outside horizon [" << t0 << ", " << tf << "]";
        throw Error(ErrorCode::Domain, msg.str());
    }
    const double u = (t - t0) / (tf - t0);
    switch (kind) {
        case BlendKind::Linear: return u;
        case BlendKind::Smoothstep: return u * u * (3.0 - 2.0 * u);
    }
    return u;
}

void validate(const PlanSpec& spec) {
    if (!std::isfinite(spec.t0) || !std::isfinite(spec.tf) || !(spec.tf > spec.t0)) {
        throw Error(ErrorCode::Validation, "plan horizon must satisfy tf > t0");
    }
    try {
        validate(spec.initial);
        validate(spec.final);
    } catch (const Error& e) {
        throw Error(ErrorCode::Validation, std::string("plan endpoint: ") + e.what());
    }
}

GeneralizedCoordinates coordinates_at(const PlanSpec& spec, double t) {
    const double b = blend(t, spec.t0, spec.tf, spec.blend);
    const double a = 1.0 - b;
    const auto& i = spec.initial;
    const auto& f = spec.final;
    return {a * i.lambda1 + b * f.lambda1, a * i.lambda2 + b * f.lambda2,
            a * i.sigma_r + b * f.sigma_r, a * i.sigma_d + b * f.sigma_d,
            a * i.d1 + b * f.d1,           a * i.d2 + b * f.d2};
}

std::vector<Joint> actuated_joints(const CellGraph& graph) {
    std::vector<Joint> joints;
    for (CellId cell : graph.interior_cells()) {
        for (CellId j : graph.actuated_neighbors(cell)) joints.push_back({cell, j});
    }
    return joints;
}

ActuatedJoints actuated_joints_of(const CellGraph& graph, CellId cell) {
    const auto& n = graph.actuated_neighbors(cell);
    return {cell, n, {graph.arm_length(cell, n[0]), graph.arm_length(cell, n[1])}};
}

DesiredState desired_state(const PlanSpec& spec, const CellGraph& graph,
                           const ReferenceConfiguration& reference, double t) {
    DesiredState state;
    state.time = t;
    state.coords = coordinates_at(spec, t);
    const AffineTransform transform = make_transform(state.coords);
    state.positions.reserve(reference.positions.size());
    for (Vec2 a : reference.positions) state.positions.push_back(apply(transform, a));

    const double r = graph.cell_radius();
    const auto at = [&](CellId cell) { return state.positions[static_cast<std::size_t>(cell - 1)]; };
    for (CellId cell : graph.interior_cells()) {
        const ActuatedJoints joints = actuated_joints_of(graph, cell);
        const ElbowPair angles =
            desired_elbow_angles(joints, at(cell), at(joints.neighbors[0]), at(joints.neighbors[1]), r);
        state.elbow_angles.push_back(angles.first);
        state.elbow_angles.push_back(angles.second);

        // The free joint carries no motor but its arms bound the separation too.
        const CellId free = graph.free_neighbor(cell);
        try {
            elbow_angle(distance(at(cell), at(free)), graph.arm_length(cell, free), r);
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << "joint (" << cell << "," << free << "): " << e.what();
            throw JointError(e.code(), cell, free, msg.str());
        }
    }
    return state;
}

namespace {

std::vector<double> uniform_times(double t0, double tf, int count) {
    std::vector<double> times(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        times[k] = (k == count - 1) ? tf : t0 + (tf - t0) * static_cast<double>(k) / (count - 1);
    }
    return times;
}

}  // namespace

void check_plan_safety(const PlanSpec& spec, const SafetyBound& bound, const PlanOptions& options) {
    validate(spec);
    if (options.sample_count < 2 || options.safety_samples < 2) {
        throw Error(ErrorCode::InvalidArgument, "plan and safety sample counts must be at least 2");
    }
    std::vector<double> times = uniform_times(spec.t0, spec.tf, options.sample_count);
    const std::vector<double> extra = uniform_times(spec.t0, spec.tf, options.safety_samples);
    times.insert(times.end(), extra.begin(), extra.end());
    std::sort(times.begin(), times.end());

    for (double t : times) {
        const StrainVerdict verdict = validate_coordinates(coordinates_at(spec, t), bound);
        if (!verdict.safe) {
            std::ostringstream msg;
            msg << "plan violates the principal-strain bound at t = " << t << ": lambda"
                << verdict.violating_strain << " = " << verdict.min_strain
                << " < lambda_min = " << bound.lambda_min();
            throw UnsafePlanError(t, verdict, bound.lambda_min(), msg.str());
        }
    }
}

PlannedTrajectory plan(const PlanSpec& spec, const CellGraph& graph,
                       const ReferenceConfiguration& reference, const PlanOptions& options) {
    if (reference.cell_count() != graph.cell_count()) {
        throw Error(ErrorCode::InvalidArgument, "reference configuration does not match the cell graph");
    }
    check_plan_safety(spec, SafetyBound::for_reference(graph, reference), options);

    PlannedTrajectory out;
    out.spec = spec;
    out.joints = actuated_joints(graph);
    for (double t : uniform_times(spec.t0, spec.tf, options.sample_count)) {
        out.samples.push_back(desired_state(spec, graph, reference, t));
    }
    return out;
}

}  // namespace atugv
