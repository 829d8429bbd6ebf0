#pragma once

// Elbow-joint kinematics of the two-arm connection mechanism.
//
// Two arms of length L join cells i and j; with cell radius r the separation
// d and elbow angle theta are related by d = 2 (L + r) sin(theta / 2).

#include <array>

#include "atugv/error.hpp"
#include "atugv/geometry.hpp"

namespace atugv {

// 2 asin(d / (2 (L + r))), in [0, pi]. Throws UnreachableSeparation when
// d > 2 (L + r) and InvalidArgument for negative d or non-positive L, r.
double elbow_angle(double distance, double arm_length, double cell_radius);

// Inverse of elbow_angle(): 2 (L + r) sin(theta / 2).
double separation_for_angle(double theta, double arm_length, double cell_radius);

struct ElbowPair {
    double first = 0.0;   // theta_{i, j1}
    double second = 0.0;  // theta_{i, j2}
};

struct ActuatedJoints {
    CellId cell = 0;
    std::array<CellId, 2> neighbors{};
    std::array<double, 2> arm_lengths{};
};

// Desired elbow angles for the two actuated joints of `joints.cell`.
// Throws JointError(UnreachableSeparation) tagged with the offending joint.
ElbowPair desired_elbow_angles(const ActuatedJoints& joints, Vec2 cell_position,
                               Vec2 first_neighbor, Vec2 second_neighbor, double cell_radius);

// Forward kinematics for a cell hanging off two actuated joints: intersect
// the circles of radius separation_for_angle(theta_k) about each neighbor and
// keep the intersection nearest `previous`. Near-tangent circles (within
// 1e-9 m) resolve to the tangent point. Throws
// JointError(InconsistentAngles) when the circles do not meet.
Vec2 resolve_unpowered_position(const ActuatedJoints& joints, Vec2 first_neighbor,
                                Vec2 second_neighbor, const ElbowPair& angles, double cell_radius,
                                Vec2 previous);

inline constexpr double kTangentTolerance = 1e-9;

}  // namespace atugv
