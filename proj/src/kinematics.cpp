#include "atugv/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace atugv {

namespace {

void check_mechanism(double arm_length, double cell_radius) {
    if (!(arm_length > 0.0) || !std::isfinite(arm_length) || !(cell_radius > 0.0) ||
        !std::isfinite(cell_radius)) {
        throw Error(ErrorCode::InvalidArgument, "arm length and cell radius must be positive");
    }
}

double joint_angle(CellId cell, CellId neighbor, double dist, double arm_length, double radius) {
    try {
        return elbow_angle(dist, arm_length, radius);
    } catch (const Error& e) {
        std::ostringstream msg;
        msg << "joint (" << cell << "," << neighbor << "): " << e.what();
        throw JointError(e.code(), cell, neighbor, msg.str());
    }
}

}  // namespace

double elbow_angle(double distance, double arm_length, double cell_radius) {
    check_mechanism(arm_length, cell_radius);
    if (!(distance >= 0.0) || !std::isfinite(distance)) {
        throw Error(ErrorCode::InvalidArgument, "separation must be finite and non-negative");
    }
    const double reach = 2.0 * (arm_length + cell_radius);
    if (distance > reach) {
        std::ostringstream msg;
        msg << "separation " << distance << " m exceeds mechanism reach " << reach << " m";
        throw Error(ErrorCode::UnreachableSeparation, msg.str());
    }
    return 2.0 * std::asin(distance / reach);
}

double separation_for_angle(double theta, double arm_length, double cell_radius) {
    check_mechanism(arm_length, cell_radius);
    return 2.0 * (arm_length + cell_radius) * std::sin(0.5 * theta);
}

ElbowPair desired_elbow_angles(const ActuatedJoints& joints, Vec2 cell_position,
                               Vec2 first_neighbor, Vec2 second_neighbor, double cell_radius) {
    return {joint_angle(joints.cell, joints.neighbors[0], distance(cell_position, first_neighbor),
                        joints.arm_lengths[0], cell_radius),
            joint_angle(joints.cell, joints.neighbors[1], distance(cell_position, second_neighbor),
                        joints.arm_lengths[1], cell_radius)};
}

Vec2 resolve_unpowered_position(const ActuatedJoints& joints, Vec2 first_neighbor,
                                Vec2 second_neighbor, const ElbowPair& angles, double cell_radius,
                                Vec2 previous) {
    const auto inconsistent = [&](const std::string& why) {
        std::ostringstream msg;
        msg << "cell " << joints.cell << ": elbow angles (" << angles.first << ", " << angles.second
            << ") are inconsistent: " << why;
        return JointError(ErrorCode::InconsistentAngles, joints.cell, joints.neighbors[0], msg.str());
    };
    if (!std::isfinite(angles.first) || !std::isfinite(angles.second)) {
        throw inconsistent("non-finite angle");
    }

    const double r1 = separation_for_angle(angles.first, joints.arm_lengths[0], cell_radius);
    const double r2 = separation_for_angle(angles.second, joints.arm_lengths[1], cell_radius);
    const Vec2 axis = second_neighbor - first_neighbor;
    const double d = norm(axis);

    if (d <= kTangentTolerance) {
        if (r1 <= kTangentTolerance && r2 <= kTangentTolerance) return first_neighbor;
        throw inconsistent("actuated neighbors coincide, position is indeterminate");
    }
    if (d > r1 + r2 + kTangentTolerance) throw inconsistent("circles are disjoint");
    if (d < std::abs(r1 - r2) - kTangentTolerance) throw inconsistent("one circle contains the other");

    // Foot of the chord on the center line, then offset along the normal.
    const double along = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    const double h = std::sqrt(std::max(0.0, r1 * r1 - along * along));
    const Vec2 unit = (1.0 / d) * axis;
    const Vec2 normal{-unit.y, unit.x};
    const Vec2 foot = first_neighbor + along * unit;
    if (h == 0.0) return foot;

    const Vec2 left = foot + h * normal;
    const Vec2 right = foot - h * normal;
    return distance(left, previous) <= distance(right, previous) ? left : right;
}

}  // namespace atugv
