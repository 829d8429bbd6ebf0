#include "atugv/safety.hpp"

#include <cmath>
#include <sstream>

namespace atugv {

double lambda_min(double cell_radius, double d_min) {
    if (!(cell_radius > 0.0) || !std::isfinite(cell_radius) || !std::isfinite(d_min)) {
        throw Error(ErrorCode::InvalidArgument, "cell radius must be positive and finite");
    }
    if (!(d_min > 2.0 * cell_radius)) {
        std::ostringstream msg;
        msg << "reference separation d_min = " << d_min << " does not exceed 2r = " << 2.0 * cell_radius;
        throw Error(ErrorCode::ReferenceOverlap, msg.str());
    }
    return 2.0 * cell_radius / d_min;
}

SafetyBound::SafetyBound(double cell_radius, double d_min)
    : cell_radius_(cell_radius), d_min_(d_min), lambda_min_(atugv::lambda_min(cell_radius, d_min)) {}

StrainVerdict validate_coordinates(const GeneralizedCoordinates& coords, const SafetyBound& bound) {
    StrainVerdict verdict;
    const bool second_is_min = coords.lambda2 <= coords.lambda1;
    verdict.min_strain = second_is_min ? coords.lambda2 : coords.lambda1;
    verdict.safe = verdict.min_strain >= bound.lambda_min();
    if (!verdict.safe) verdict.violating_strain = second_is_min ? 2 : 1;
    return verdict;
}

ClearanceReport verify_pairwise_clearance(std::span<const Vec2> positions, double cell_radius,
                                          double tolerance) {
    const PairDistance closest = closest_pair(positions);
    return {closest.distance >= 2.0 * cell_radius - tolerance, closest.distance, closest.first,
            closest.second};
}

}  // namespace atugv
