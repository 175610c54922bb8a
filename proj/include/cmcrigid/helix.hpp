#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace cmcr {

// Arc of a constant-curvature, constant-torsion space curve.
struct HelixArc {
    double k;
    double tau;
    double len;

    HelixArc(double k_, double tau_, double len_) : k(k_), tau(tau_), len(len_)
    {
        if (!(len > 0.0))
            throw std::invalid_argument("helix arc length must be positive");
    }
};

// Distance between the two endpoints of the arc. With w = sqrt(k^2 + tau^2),
// a = k/w^2, b = tau/w^2:
//   gap = sqrt( (2 a sin(w L / 2))^2 + (b w L)^2 ).
// Below w^2 = 1e-14 the arc is treated as a straight segment (gap = L).
// Zero exactly when tau = 0 and |k| L is a positive multiple of 2 pi.
inline double helix_endpoint_gap(const HelixArc& arc)
{
    const double w2 = arc.k * arc.k + arc.tau * arc.tau;
    if (w2 < 1e-14)
        return arc.len;
    const double w = std::sqrt(w2);
    const double a = arc.k / w2;
    const double b = arc.tau / w2;
    return std::hypot(2.0 * a * std::sin(0.5 * w * arc.len), b * w * arc.len);
}

// Position and orthonormal frame of a space curve.
struct FrenetState {
    Eigen::Vector3d position;
    Eigen::Vector3d tangent;
    Eigen::Vector3d normal;
    Eigen::Vector3d binormal;
};

namespace detail {

inline void frenet_orthonormalize(FrenetState& st)
{
    st.tangent.normalize();
    st.normal -= st.normal.dot(st.tangent) * st.tangent;
    st.normal.normalize();
    st.binormal = st.tangent.cross(st.normal);
}

} // namespace detail

// Integrates the Frenet-Serret equations with constant (k, tau) from the
// identity frame at the origin, classical RK4 with per-step Gram-Schmidt
// re-orthonormalization. Independent oracle for helix_endpoint_gap.
inline FrenetState frenet_integrate(double k, double tau, double len, double step)
{
    if (!(len > 0.0) || !(step > 0.0))
        throw std::invalid_argument("frenet_integrate: len and step must be positive");
    if (step > len)
        throw std::invalid_argument("frenet_integrate: step must not exceed len");

    using V12 = Eigen::Matrix<double, 12, 1>;
    auto pack = [](const FrenetState& s) {
        V12 y;
        y << s.position, s.tangent, s.normal, s.binormal;
        return y;
    };
    auto unpack = [](const V12& y) {
        FrenetState s;
        s.position = y.segment<3>(0);
        s.tangent = y.segment<3>(3);
        s.normal = y.segment<3>(6);
        s.binormal = y.segment<3>(9);
        return s;
    };
    auto rhs = [k, tau](const V12& y) {
        V12 d;
        d.segment<3>(0) = y.segment<3>(3);                            // x' = T
        d.segment<3>(3) = k * y.segment<3>(6);                        // T' = k N
        d.segment<3>(6) = -k * y.segment<3>(3) + tau * y.segment<3>(9); // N' = -k T + tau B
        d.segment<3>(9) = -tau * y.segment<3>(6);                     // B' = -tau N
        return d;
    };

    FrenetState st;
    st.position.setZero();
    st.tangent = Eigen::Vector3d::UnitX();
    st.normal = Eigen::Vector3d::UnitY();
    st.binormal = Eigen::Vector3d::UnitZ();

    double s = 0.0;
    while (s < len) {
        const double h = std::min(step, len - s);
        V12 y = pack(st);
        const V12 k1 = rhs(y);
        const V12 k2 = rhs(y + 0.5 * h * k1);
        const V12 k3 = rhs(y + 0.5 * h * k2);
        const V12 k4 = rhs(y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        st = unpack(y);
        detail::frenet_orthonormalize(st);
        s += h;
    }
    return st;
}

} // namespace cmcr
