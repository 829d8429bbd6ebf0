#pragma once

// Finite-horizon plans over the six generalized coordinates. Each coordinate
// moves as (1 - beta(t)) * initial + beta(t) * final for an increasing blend
// beta with beta(t0) = 0 and beta(tf) = 1.

#include <optional>
#include <string_view>
#include <vector>

#include "atugv/affine_core.hpp"
#include "atugv/cell_network.hpp"
#include "atugv/kinematics.hpp"
#include "atugv/safety.hpp"

namespace atugv {

enum class BlendKind { Linear, Smoothstep };

const char* to_string(BlendKind kind);
std::optional<BlendKind> parse_blend_kind(std::string_view text);

// Throws Domain outside [t0, tf].
double blend(double t, double t0, double tf, BlendKind kind);

struct PlanSpec {
    double t0 = 0.0;
    double tf = 1.0;
    GeneralizedCoordinates initial = GeneralizedCoordinates::identity();
    GeneralizedCoordinates final = GeneralizedCoordinates::identity();
    BlendKind blend = BlendKind::Smoothstep;
};

// Throws Validation for tf <= t0 or invalid endpoint coordinates.
void validate(const PlanSpec& spec);

GeneralizedCoordinates coordinates_at(const PlanSpec& spec, double t);

struct Joint {
    CellId cell = 0;
    CellId neighbor = 0;
    friend bool operator==(const Joint&, const Joint&) = default;
};

// Actuated joints of every interior cell, in layer order; two per cell.
std::vector<Joint> actuated_joints(const CellGraph& graph);

ActuatedJoints actuated_joints_of(const CellGraph& graph, CellId cell);

struct DesiredState {
    double time = 0.0;
    GeneralizedCoordinates coords;
    std::vector<Vec2> positions;       // p_i, indexed by id - 1
    std::vector<double> elbow_angles;  // aligned with actuated_joints(graph)
};

// Desired positions and elbow angles at time t. Every arm mechanism (all
// three neighbors of each interior cell) must be within reach; throws
// JointError(UnreachableSeparation) otherwise.
DesiredState desired_state(const PlanSpec& spec, const CellGraph& graph,
                           const ReferenceConfiguration& reference, double t);

struct PlanOptions {
    int sample_count = 200;
    int safety_samples = 100;
};

struct PlannedTrajectory {
    PlanSpec spec;
    std::vector<Joint> joints;
    std::vector<DesiredState> samples;
};

class UnsafePlanError : public Error {
public:
    UnsafePlanError(double time, const StrainVerdict& verdict, double lambda_min,
                    const std::string& message)
        : Error(ErrorCode::UnsafePlan, message), time_(time), verdict_(verdict), lambda_min_(lambda_min) {}

    double time() const noexcept { return time_; }
    const StrainVerdict& verdict() const noexcept { return verdict_; }
    double lambda_min() const noexcept { return lambda_min_; }

private:
    double time_;
    StrainVerdict verdict_;
    double lambda_min_;
};

// Safety scan over the plan samples and an additional uniform grid of
// options.safety_samples times. Throws UnsafePlanError at the first
// violating time.
void check_plan_safety(const PlanSpec& spec, const SafetyBound& bound, const PlanOptions& options);

// Uniformly sampled plan, rejected (UnsafePlanError) if any checked time
// violates the strain bound.
PlannedTrajectory plan(const PlanSpec& spec, const CellGraph& graph,
                       const ReferenceConfiguration& reference, const PlanOptions& options = {});

}  // namespace atugv
