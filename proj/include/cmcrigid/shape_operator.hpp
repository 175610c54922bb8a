#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace cmcr {

// 90-degree counterclockwise rotation of the tangent plane; the almost
// complex structure in the chosen orthonormal frame. Flipping the sign
// relabels theta -> -theta only.
inline Eigen::Matrix2d complex_structure()
{
    Eigen::Matrix2d j;
    j << 0.0, -1.0,
         1.0,  0.0;
    return j;
}

// Pointwise shape operator in an orthonormal tangent frame. H is the
// average of the principal curvatures, so trace(a) = 2h.
struct ShapeOperatorSample {
    Eigen::Matrix2d a;
    double h;

    ShapeOperatorSample(double a11, double a12, double a22)
        : h(0.5 * (a11 + a22))
    {
        a << a11, a12,
             a12, a22;
    }

    static ShapeOperatorSample from_matrix(const Eigen::Matrix2d& m)
    {
        if (std::abs(m(0, 1) - m(1, 0)) > 1e-12)
            throw std::invalid_argument("shape operator must be symmetric");
        return ShapeOperatorSample(m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1));
    }

    Eigen::Matrix2d traceless() const
    {
        return a - h * Eigen::Matrix2d::Identity();
    }
};

// Shape operator of the theta-associate immersion:
//   A_theta = cos(theta)(A - H I) + sin(theta) J (A - H I) + H I.
// Preserves trace and det(A - H I), i.e. mean and Gaussian curvature.
inline Eigen::Matrix2d associate_shape_operator(const ShapeOperatorSample& s, double theta)
{
    const Eigen::Matrix2d b = s.traceless();
    const Eigen::Matrix2d hi = s.h * Eigen::Matrix2d::Identity();
    return std::cos(theta) * b + std::sin(theta) * (complex_structure() * b) + hi;
}

struct CurvatureTorsion {
    double k;
    double tau;
};

// Curvature and torsion of the image of a unit-speed geodesic with tangent
// `dir` under the theta-associate immersion:
//   k_theta = <A_theta d, d>,  tau_theta = -<A_theta d, J d>.
inline CurvatureTorsion geodesic_curvature_torsion(const ShapeOperatorSample& s,
                                                   double theta,
                                                   const Eigen::Vector2d& dir)
{
    if (std::abs(dir.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("geodesic direction must be a unit vector");
    const Eigen::Matrix2d at = associate_shape_operator(s, theta);
    const Eigen::Vector2d ad = at * dir;
    const Eigen::Vector2d jd = complex_structure() * dir;
    return {ad.dot(dir), -ad.dot(jd)};
}

} // namespace cmcr
