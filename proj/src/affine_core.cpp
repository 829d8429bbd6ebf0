#include "atugv/affine_core.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "atugv/error.hpp"

namespace atugv {

namespace {

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be finite");
    }
}

void require_positive_strain(double value, const char* name) {
    require_finite(value, name);
    if (!(value > 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(name) + " must be positive, got " + std::to_string(value));
    }
}

}  // namespace

void validate(const GeneralizedCoordinates& c) {
    require_positive_strain(c.lambda1, "lambda1");
    require_positive_strain(c.lambda2, "lambda2");
    if (c.lambda1 > 1.0 || c.lambda2 > 1.0) {
        throw Error(ErrorCode::InvalidArgument, "principal strains must not exceed 1");
    }
    require_finite(c.sigma_r, "sigma_r");
    require_finite(c.sigma_d, "sigma_d");
    require_finite(c.d1, "d1");
    require_finite(c.d2, "d2");
}

Matrix2 rotation_matrix(double sigma_r) {
    require_finite(sigma_r, "rotation angle");
    const double c = std::cos(sigma_r);
    const double s = std::sin(sigma_r);
    return {c, -s, s, c};
}

Matrix2 strain_matrix(double lambda1, double lambda2, double sigma_d) {
    require_positive_strain(lambda1, "lambda1");
    require_positive_strain(lambda2, "lambda2");
    require_finite(sigma_d, "sigma_d");
    // R diag(l1, l2) R^T written out entrywise; the result is exactly symmetric.
    const double c = std::cos(sigma_d);
    const double s = std::sin(sigma_d);
    const double off = (lambda1 - lambda2) * c * s;
    return {lambda1 * c * c + lambda2 * s * s, off, off, lambda1 * s * s + lambda2 * c * c};
}

Matrix2 jacobian(const GeneralizedCoordinates& coords) {
    validate(coords);
    return rotation_matrix(coords.sigma_r) *
           strain_matrix(coords.lambda1, coords.lambda2, coords.sigma_d);
}

Matrix2 jacobian(const PolarParts& parts) {
    return rotation_matrix(parts.sigma_r) *
           strain_matrix(parts.lambda1, parts.lambda2, parts.sigma_d);
}

AffineTransform make_transform(const GeneralizedCoordinates& coords) {
    return {jacobian(coords), coords.translation()};
}

Vec2 apply(const AffineTransform& transform, Vec2 reference_point) {
    return transform.jacobian * reference_point + transform.translation;
}

PolarParts decompose(const Matrix2& q) {
    if (!is_finite(q)) {
        throw Error(ErrorCode::Decomposition, "jacobian has non-finite entries");
    }
    const double det = q.determinant();
    const double scale = q.xx * q.xx + q.xy * q.xy + q.yx * q.yx + q.yy * q.yy;
    if (!(det > 0.0) || det <= 64.0 * std::numeric_limits<double>::epsilon() * scale) {
        throw Error(ErrorCode::Decomposition,
                    det < 0.0 ? "jacobian contains a reflection (det < 0)"
                              : "jacobian is singular");
    }

    // For Q = R(t) U with U symmetric positive definite,
    // (Q00 + Q11, Q10 - Q01) = tr(U) (cos t, sin t).
    PolarParts parts;
    parts.sigma_r = std::atan2(q.yx - q.xy, q.xx + q.yy);

    const Matrix2 u = rotation_matrix(-parts.sigma_r) * q;
    const double a = u.xx;
    const double c = u.yy;
    const double b = 0.5 * (u.xy + u.yx);
    const double mean = 0.5 * (a + c);
    const double radius = std::hypot(0.5 * (a - c), b);

    parts.lambda1 = mean + radius;
    parts.lambda2 = det / parts.lambda1;  // det U = det Q; avoids cancellation in mean - radius

    if (radius <= 4.0 * std::numeric_limits<double>::epsilon() * mean) {
        parts.sigma_d = 0.0;
    } else {
        double angle = 0.5 * std::atan2(2.0 * b, a - c);  // (-pi/2, pi/2]
        if (angle < 0.0) angle += std::numbers::pi;
        if (angle >= std::numbers::pi) angle -= std::numbers::pi;
        parts.sigma_d = angle;
    }
    return parts;
}

}  // namespace atugv
