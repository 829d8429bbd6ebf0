#pragma once

// Planar affine transformations parameterized by six generalized coordinates.
//
// The Jacobian factors as Q = R(sigma_r) * U(sigma_d, lambda1, lambda2), where
// R is a proper rotation and U = R(sigma_d) diag(lambda1, lambda2) R(sigma_d)^T
// is the symmetric positive definite strain matrix. The singular values of Q
// are exactly the principal strains, which is what the safety bound relies on.

#include "atugv/geometry.hpp"

namespace atugv {

struct GeneralizedCoordinates {
    double lambda1 = 1.0;  // first principal strain, (0, 1]
    double lambda2 = 1.0;  // second principal strain, (0, 1]
    double sigma_r = 0.0;  // rigid-body rotation, rad
    double sigma_d = 0.0;  // principal-axis (shear) angle, rad
    double d1 = 0.0;       // translation x, m
    double d2 = 0.0;       // translation y, m

    static constexpr GeneralizedCoordinates identity() { return {}; }
    constexpr Vec2 translation() const { return {d1, d2}; }
    friend constexpr bool operator==(const GeneralizedCoordinates&,
                                     const GeneralizedCoordinates&) = default;
};

// Throws Error(InvalidArgument) unless every field is finite and both strains lie in (0, 1].
void validate(const GeneralizedCoordinates& coords);

// Rotation-and-strain part of a Jacobian, as recovered by decompose(). Unlike
// GeneralizedCoordinates the strains are only required to be positive.
struct PolarParts {
    double sigma_r = 0.0;  // (-pi, pi]
    double sigma_d = 0.0;  // [0, pi)
    double lambda1 = 1.0;  // larger principal strain
    double lambda2 = 1.0;  // smaller principal strain
};

struct AffineTransform {
    Matrix2 jacobian;
    Vec2 translation;
};

Matrix2 rotation_matrix(double sigma_r);
Matrix2 strain_matrix(double lambda1, double lambda2, double sigma_d);

Matrix2 jacobian(const GeneralizedCoordinates& coords);
Matrix2 jacobian(const PolarParts& parts);

AffineTransform make_transform(const GeneralizedCoordinates& coords);

// Q * a + d
Vec2 apply(const AffineTransform& transform, Vec2 reference_point);

// Inverse of jacobian(): splits a proper (det > 0) matrix into rotation and
// strain. Ordering convention lambda1 >= lambda2; sigma_d is 0 when the
// strains coincide. Throws Error(Decomposition) for singular, reflecting or
// non-finite input.
PolarParts decompose(const Matrix2& jacobian);

}  // namespace atugv
