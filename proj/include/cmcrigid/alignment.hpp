#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cmcrigid/weierstrass.hpp"

namespace cmcr {

struct CongruenceResult {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();
    bool reflection = false;
    double rms_residual = 0.0;
    std::optional<double> recovered_theta;
};

// Orthogonal-Procrustes / Kabsch alignment of paired point sets: finds the
// rigid motion minimizing the RMS of |R x_i + t - y_i|. Improper isometries
// are considered only when allow_reflection is set (the -H branch of
// Lawson's theorem).
inline CongruenceResult congruence_fit(const std::vector<Eigen::Vector3d>& x,
                                       const std::vector<Eigen::Vector3d>& y,
                                       bool allow_reflection = false)
{
    if (x.size() != y.size())
        throw std::invalid_argument("congruence_fit: point sets must be paired");
    if (x.size() < 4)
        throw std::invalid_argument("congruence_fit: need at least 4 point pairs");
    const double n = static_cast<double>(x.size());

    Eigen::Vector3d cx = Eigen::Vector3d::Zero(), cy = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
        cx += x[i];
        cy += y[i];
    }
    cx /= n;
    cy /= n;

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    double spread = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cov += (x[i] - cx) * (y[i] - cy).transpose();
        spread += (x[i] - cx).squaredNorm();
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector3d sing = svd.singularValues();
    if (spread < 1e-24 || sing(1) < 1e-12 * std::max(sing(0), 1e-300))
        throw std::invalid_argument("congruence_fit: degenerate (collinear or coincident) point set");

    const Eigen::Matrix3d u = svd.matrixU();
    const Eigen::Matrix3d v = svd.matrixV();
    const double det_vu = (v * u.transpose()).determinant();

    Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
    if (!allow_reflection && det_vu < 0.0)
        d(2, 2) = -1.0;

    CongruenceResult res;
    res.rotation = v * d * u.transpose();
    res.reflection = res.rotation.determinant() < 0.0;
    res.translation = cy - res.rotation * cx;

    double sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        sq += (res.rotation * x[i] + res.translation - y[i]).squaredNorm();
    res.rms_residual = std::sqrt(sq / n);
    return res;
}

namespace detail {

// Golden-section minimization of a unimodal function on [a, b].
template <class F>
double golden_min(const F& f, double a, double b, double tol)
{
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace detail

// Recovers the associate angle of a target point set: the theta minimizing
// the post-alignment residual between f_theta at the given parameter points
// and the target. Coarse grid first (residual-vs-theta can have several
// local minima), then golden-section refinement to 1e-6. Targets where
// theta is not identifiable (all residuals equal) yield no recovered_theta.
inline CongruenceResult recover_theta(const WeierstrassSurface& s,
                                      const std::vector<Complex>& params,
                                      const std::vector<Eigen::Vector3d>& target,
                                      int theta_grid = 720,
                                      bool allow_reflection = false)
{
    if (params.size() != target.size())
        throw std::invalid_argument("recover_theta: parameter/target size mismatch");
    if (theta_grid < 4)
        throw std::invalid_argument("recover_theta: grid too coarse");

    // The path integrals do not depend on theta; compute them once.
    std::vector<Eigen::Vector3cd> integrals;
    integrals.reserve(params.size());
    for (Complex z : params)
        integrals.push_back(path_integral(s, {s.base, z}).value);

    auto samples_at = [&](double theta) {
        const Complex rot = std::polar(1.0, theta);
        std::vector<Eigen::Vector3d> pts(integrals.size());
        for (std::size_t i = 0; i < integrals.size(); ++i)
            for (int c = 0; c < 3; ++c)
                pts[i][c] = (rot * integrals[i][c]).real();
        return pts;
    };
    auto resid = [&](double theta) {
        return congruence_fit(samples_at(theta), target, allow_reflection).rms_residual;
    };

    double best_theta = 0.0;
    double best = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (int i = 0; i < theta_grid; ++i) {
        const double theta = 2.0 * M_PI * i / theta_grid;
        const double r = resid(theta);
        worst = std::max(worst, r);
        if (r < best) {
            best = r;
            best_theta = theta;
        }
    }

    const double h = 2.0 * M_PI / theta_grid;
    double theta_star = detail::golden_min(resid, best_theta - h, best_theta + h, 1e-7);
    if (theta_star < 0.0)
        theta_star += 2.0 * M_PI;

    CongruenceResult res = congruence_fit(samples_at(theta_star), target, allow_reflection);
    if (worst - best > 1e-12)
        res.recovered_theta = theta_star;
    return res;
}

} // namespace cmcr
