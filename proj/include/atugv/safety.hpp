#pragma once

// Collision-avoidance bound on the principal strains, plus an independent
// brute-force clearance check.
//
// For p_i = Q a_i + d, ||p_i - p_j|| >= min(lambda1, lambda2) ||a_i - a_j||,
// so keeping both strains at or above 2r / d_min keeps every pair of cells at
// least 2r apart.

#include <span>

#include "atugv/affine_core.hpp"
#include "atugv/cell_network.hpp"

namespace atugv {

// Throws ReferenceOverlap when d_min <= 2r (the bound would reach 1).
double lambda_min(double cell_radius, double d_min);

class SafetyBound {
public:
    SafetyBound(double cell_radius, double d_min);

    static SafetyBound for_reference(const CellGraph& graph, const ReferenceConfiguration& config) {
        return {graph.cell_radius(), config.d_min};
    }

    double lambda_min() const { return lambda_min_; }
    double cell_radius() const { return cell_radius_; }
    double d_min() const { return d_min_; }

private:
    double cell_radius_;
    double d_min_;
    double lambda_min_;
};

struct StrainVerdict {
    bool safe = true;
    double min_strain = 1.0;
    // 0 when safe, otherwise 1 or 2 naming the violating principal strain
    // (the smaller one; lambda2 wins a tie).
    int violating_strain = 0;
};

StrainVerdict validate_coordinates(const GeneralizedCoordinates& coords, const SafetyBound& bound);

struct ClearanceReport {
    bool safe = true;
    double min_distance = 0.0;
    CellId first = 0;
    CellId second = 0;
};

inline constexpr double kClearanceTolerance = 1e-9;

// SAFE iff the minimum pairwise distance is >= 2r - tolerance.
ClearanceReport verify_pairwise_clearance(std::span<const Vec2> positions, double cell_radius,
                                          double tolerance = kClearanceTolerance);

}  // namespace atugv
