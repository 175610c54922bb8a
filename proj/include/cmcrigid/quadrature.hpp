#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace cmcr {

// Raised when adaptive refinement cannot reach the requested tolerance.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirrored).
inline constexpr double gl15_x[8] = {
    0.0000000000000000,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601701,
    0.8482065834104272,
    0.9372733924007060,
    0.9879925180204854,
};
inline constexpr double gl15_w[8] = {
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
};

template <class F>
Eigen::Vector3cd gl15_panel(const F& f, double a, double b)
{
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Eigen::Vector3cd acc = gl15_w[0] * f(mid);
    for (int i = 1; i < 8; ++i) {
        const double dx = half * gl15_x[i];
        acc += gl15_w[i] * (f(mid + dx) + f(mid - dx));
    }
    return half * acc;
}

template <class F>
Eigen::Vector3cd adapt(const F& f, double a, double b, const Eigen::Vector3cd& whole,
                       double tol, int depth, double& err_acc)
{
    const double mid = 0.5 * (a + b);
    const Eigen::Vector3cd left = gl15_panel(f, a, mid);
    const Eigen::Vector3cd right = gl15_panel(f, mid, b);
    const double diff = (left + right - whole).cwiseAbs().maxCoeff();
    if (diff < tol || depth >= 20) {
        if (diff >= tol)
            throw QuadratureError("adaptive quadrature did not converge at max depth");
        err_acc += diff;
        return left + right;
    }
    return adapt(f, a, mid, left, 0.5 * tol, depth + 1, err_acc)
         + adapt(f, mid, b, right, 0.5 * tol, depth + 1, err_acc);
}

} // namespace detail

// Adaptive composite Gauss-Legendre integral of a complex 3-vector valued
// function over the parameter interval [a, b]. err_out accumulates the
// refinement-difference error estimate.
template <class F>
Eigen::Vector3cd integrate_adaptive(const F& f, double a, double b,
                                    double tol, double& err_out)
{
    if (!(b > a))
        throw std::invalid_argument("integrate_adaptive: empty interval");
    const Eigen::Vector3cd whole = detail::gl15_panel(f, a, b);
    return detail::adapt(f, a, b, whole, tol, 0, err_out);
}

} // namespace cmcr
