#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cmcrigid/helix.hpp"
#include "cmcrigid/shape_operator.hpp"

namespace cmcr {

enum class DelaunayFamily { unduloid, cylinder, nodoid };

// CMC surface of revolution, H normalized to 1, parametrized by the
// principal curvature r along the neck circle (neck radius 1/r, neck length
// 2 pi / r). The other neck principal curvature is s = 2 - r. Other mean
// curvatures are obtained by scaling all lengths by 1/H, see scale_length().
struct DelaunayShape {
    DelaunayFamily family;
    double r;
    double s;

    double neck_radius() const { return 1.0 / r; }
    double neck_length() const { return 2.0 * M_PI / r; }
    // First integral c = y^2 - y cos(psi) of the profile ODE at H = 1.
    double force() const { return 1.0 / (r * r) - 1.0 / r; }
};

inline DelaunayShape shape_from_neck_curvature(double r)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("neck curvature r must be positive and finite");
    DelaunayShape sh;
    sh.r = r;
    sh.s = 2.0 - r;
    if (r > 2.0)
        sh.family = DelaunayFamily::unduloid;
    else if (r == 2.0)
        sh.family = DelaunayFamily::cylinder;
    else
        sh.family = DelaunayFamily::nodoid;
    return sh;
}

// Lengths scale by 1/H when the mean curvature normalization is changed.
inline double scale_length(double length_at_h1, double h)
{
    if (h == 0.0)
        throw std::invalid_argument("scale_length: H must be nonzero");
    return length_at_h1 / h;
}

struct ProfileSample {
    double s;    // arclength
    double x;    // axial coordinate
    double y;    // radial coordinate, > 0
    double psi;  // inclination of the profile tangent
};

struct ProfileCurve {
    std::vector<ProfileSample> samples;
    double force;
};

// Generating curve of the surface of revolution at H = 1:
//   x' = cos(psi), y' = sin(psi), psi' = -2 + cos(psi)/y,
// started at the neck y(0) = 1/r, psi(0) = 0. RK4 fixed step; the conserved
// first integral y^2 - y cos(psi) is checked post hoc and drift beyond 1e-9
// is a hard failure.
inline ProfileCurve profile_solve(const DelaunayShape& shape, double span,
                                  double step = 1e-4)
{
    if (!(span > 0.0) || !(step > 0.0))
        throw std::invalid_argument("profile_solve: span and step must be positive");

    struct State { double x, y, psi; };
    auto rhs = [](const State& st) {
        return State{std::cos(st.psi), std::sin(st.psi),
                     -2.0 + std::cos(st.psi) / st.y};
    };

    ProfileCurve out;
    out.force = shape.force();
    State st{0.0, 1.0 / shape.r, 0.0};
    double s = 0.0;
    out.samples.push_back({s, st.x, st.y, st.psi});

    double max_drift = 0.0;
    while (s < span) {
        const double h = std::min(step, span - s);
        const State k1 = rhs(st);
        const State m2{st.x + 0.5 * h * k1.x, st.y + 0.5 * h * k1.y, st.psi + 0.5 * h * k1.psi};
        const State k2 = rhs(m2);
        const State m3{st.x + 0.5 * h * k2.x, st.y + 0.5 * h * k2.y, st.psi + 0.5 * h * k2.psi};
        const State k3 = rhs(m3);
        const State m4{st.x + h * k3.x, st.y + h * k3.y, st.psi + h * k3.psi};
        const State k4 = rhs(m4);
        st.x += (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        st.y += (h / 6.0) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
        st.psi += (h / 6.0) * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
        s += h;
        if (!(st.y > 0.0))
            throw std::runtime_error("profile_solve: radial coordinate reached zero");
        out.samples.push_back({s, st.x, st.y, st.psi});
        max_drift = std::max(max_drift,
                             std::abs(st.y * st.y - st.y * std::cos(st.psi) - out.force));
    }
    if (max_drift > 1e-9)
        throw std::runtime_error("profile_solve: first-integral drift exceeds 1e-9");
    return out;
}

// Arclength of one full profile period (neck to neck), from the zeros of
// sin(psi) in the sampled curve. The cylinder has no period; returns 0.
inline double profile_period(const ProfileCurve& p)
{
    int zeros = 0;
    for (std::size_t i = 1; i < p.samples.size(); ++i) {
        const double a = std::sin(p.samples[i - 1].psi);
        const double b = std::sin(p.samples[i].psi);
        if (a != 0.0 && ((a > 0.0) != (b > 0.0))) {
            ++zeros;
            if (zeros == 2) {
                const double t = a / (a - b);
                return p.samples[i - 1].s + t * (p.samples[i].s - p.samples[i - 1].s);
            }
        }
    }
    return 0.0;
}

// Image of the lifted neck geodesic under the theta-associate immersion:
// an arc of curvature cos(theta)(r-1)+1, torsion sin(theta)(1-r), and
// length 2 pi / r. Agrees to round-off with geodesic_curvature_torsion on
// A = diag(r, 2-r), H = 1, dir = (1, 0).
inline HelixArc neck_image_curve(const DelaunayShape& shape, double theta)
{
    const double k = std::cos(theta) * (shape.r - 1.0) + 1.0;
    const double tau = std::sin(theta) * (1.0 - shape.r);
    return HelixArc(k, tau, 2.0 * M_PI / shape.r);
}

struct GapSweep {
    std::vector<std::pair<double, double>> table;  // (theta, gap)
    double min_gap = 0.0;
    double argmin_theta = 0.0;
};

// Endpoint gap of the neck image over a theta grid in (0, 2 pi), excluding
// 0 and hitting pi exactly. A strictly positive minimum is the rigidity
// certificate for unduloids and the cylinder. Odd n is rounded up to even
// so the grid contains pi.
inline GapSweep rigidity_gap_sweep(const DelaunayShape& shape, int n_theta)
{
    if (n_theta < 8)
        throw std::invalid_argument("rigidity_gap_sweep: n_theta must be >= 8");
    const int n = n_theta + (n_theta % 2);
    GapSweep sweep;
    sweep.min_gap = std::numeric_limits<double>::infinity();
    sweep.table.reserve(n - 1);
    for (int i = 1; i < n; ++i) {
        const double theta = (2 * i == n) ? M_PI : 2.0 * M_PI * i / n;
        const double gap = helix_endpoint_gap(neck_image_curve(shape, theta));
        sweep.table.emplace_back(theta, gap);
        if (gap < sweep.min_gap) {
            sweep.min_gap = gap;
            sweep.argmin_theta = theta;
        }
    }
    return sweep;
}

namespace detail {

// Signed closure function at theta = pi: sin of half the total turning of
// the neck image arc. Vanishes exactly where the gap does, with a sign
// change across each root.
inline double closure_sign(double r)
{
    const HelixArc arc = neck_image_curve(shape_from_neck_curvature(r), M_PI);
    return std::sin(0.5 * std::abs(arc.k) * arc.len);
}

} // namespace detail

// Nodoid closure problem: the m-th parameter r in (0, 2) for which the
// theta = pi image of the neck closes up after exactly m full turns.
// Located by scanning for the m-th sign change of the closure function and
// bisecting the bracket; never evaluates the closed form 2/(m+1).
inline double nodoid_closure_solve(int m)
{
    if (m < 1)
        throw std::invalid_argument(
            "nodoid_closure_solve: m must be >= 1 (m = 0 is the cylinder, whose image is a line)");

    // Log-spaced descending scan from just below the cylinder; resolution
    // grows with m since roots accumulate towards r = 0.
    const double r_hi = 2.0 - 1e-9;
    const double r_lo = 0.05 / m;
    const int n = 4000 * (m + 1);
    double prev_r = r_hi;
    double prev_f = detail::closure_sign(prev_r);
    int crossings = 0;
    double a = 0.0, b = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double r = r_hi * std::pow(r_lo / r_hi, double(i) / n);
        const double f = detail::closure_sign(r);
        if (prev_f == 0.0 || (prev_f > 0.0) != (f > 0.0)) {
            ++crossings;
            if (crossings == m) {
                a = r;
                b = prev_r;
                break;
            }
        }
        prev_r = r;
        prev_f = f;
    }
    if (crossings < m)
        throw std::runtime_error("nodoid_closure_solve: scan did not bracket the root");

    double fa = detail::closure_sign(a);
    for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = detail::closure_sign(mid);
        if (fm == 0.0) { a = b = mid; break; }
        if ((fa > 0.0) == (fm > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    const double root = 0.5 * (a + b);

    // The gap itself must vanish at the root, and the planar closed circle
    // must also close its frame (automatic for integer turns; asserted).
    const HelixArc arc = neck_image_curve(shape_from_neck_curvature(root), M_PI);
    if (helix_endpoint_gap(arc) > 1e-8)
        throw std::runtime_error("nodoid_closure_solve: root does not close the gap");
    const FrenetState fs = frenet_integrate(arc.k, arc.tau, arc.len, 1e-4);
    if ((fs.tangent - Eigen::Vector3d::UnitX()).norm() > 1e-6)
        throw std::runtime_error("nodoid_closure_solve: frame fails to close at the root");
    return root;
}

} // namespace cmcr
