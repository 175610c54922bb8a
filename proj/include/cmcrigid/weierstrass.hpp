#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmcrigid/quadrature.hpp"

namespace cmcr {

using Complex = std::complex<double>;
using HoloFn = std::function<Complex(Complex)>;

inline constexpr double kPunctureClearance = 1e-6;

// Planar parameter domain. CutPlane is the plane minus the closed negative
// real axis (branch cut for log-cover surfaces).
struct DomainSpec {
    enum class Kind { FullPlane, Disk, Annulus, PuncturedPlane, CutPlane };
    Kind kind = Kind::FullPlane;
    Complex center = 0.0;
    double r_in = 0.0;
    double r_out = 0.0;

    bool contains(Complex z) const
    {
        switch (kind) {
        case Kind::FullPlane:
        case Kind::PuncturedPlane:
            return true;
        case Kind::Disk:
            return std::abs(z - center) < r_out;
        case Kind::Annulus: {
            const double d = std::abs(z - center);
            return d > r_in && d < r_out;
        }
        case Kind::CutPlane:
            return !(z.real() <= 0.0 && z.imag() == 0.0);
        }
        return false;
    }
};

// Holomorphic Weierstrass data: Gauss map g and height differential
// dh = eta(z) dz. The induced forms are
//   phi1 = (1/2)(1/g - g) eta,  phi2 = (i/2)(1/g + g) eta,  phi3 = eta,
// and f_theta = Re(e^{i theta} \int (phi1, phi2, phi3)).
struct WeierstrassSurface {
    std::string name;
    DomainSpec domain;
    HoloFn gauss_map;
    HoloFn height_density;
    std::vector<Complex> punctures;
    bool log_cover = false;       // domain is a branch-cut plane, full surface is the universal cover
    bool simply_connected = false;
    bool flat = false;
    Complex base = 0.0;

    Eigen::Vector3cd forms(Complex z) const
    {
        const Complex g = gauss_map(z);
        const Complex eta = height_density(z);
        const Complex inv_g = 1.0 / g;
        return {0.5 * (inv_g - g) * eta,
                Complex(0.0, 0.5) * (inv_g + g) * eta,
                eta};
    }
};

// A homology-class carrier: circle (integrated in angle parametrization) or
// closed polyline. `ccw` reverses traversal when false.
struct LoopSpec {
    enum class Kind { Circle, Polyline };
    Kind kind = Kind::Circle;
    Complex center = 0.0;
    double radius = 1.0;
    std::vector<Complex> vertices;  // closed: front == back
    bool ccw = true;

    static LoopSpec circle(Complex c, double r, bool ccw = true)
    {
        if (!(r > 0.0))
            throw std::invalid_argument("loop radius must be positive");
        LoopSpec l;
        l.kind = Kind::Circle;
        l.center = c;
        l.radius = r;
        l.ccw = ccw;
        return l;
    }

    static LoopSpec polyline(std::vector<Complex> verts, bool ccw = true)
    {
        if (verts.size() < 3)
            throw std::invalid_argument("polyline loop needs at least 3 vertices");
        if (std::abs(verts.front() - verts.back()) > 1e-12)
            throw std::invalid_argument("polyline loop must be closed (first vertex = last)");
        LoopSpec l;
        l.kind = Kind::Polyline;
        l.vertices = std::move(verts);
        l.ccw = ccw;
        return l;
    }
};

struct PeriodResult {
    Eigen::Vector3cd value;
    double error = 0.0;
};

// Flux of a loop: imaginary part of the period. The real part must vanish
// for the immersion to be single-valued, and is reported so callers can
// assert it.
struct FluxVector {
    Eigen::Vector3d v;
    Eigen::Vector3d real_part;
    double quadrature_error = 0.0;
};

namespace detail {

inline double point_segment_distance(Complex p, Complex a, Complex b)
{
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0)
        return std::abs(p - a);
    double t = ((p - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

inline bool segment_crosses_cut(Complex a, Complex b)
{
    // Negative real axis, including 0.
    if (a.imag() == 0.0 && a.real() <= 0.0) return true;
    if (b.imag() == 0.0 && b.real() <= 0.0) return true;
    if ((a.imag() > 0.0) == (b.imag() > 0.0)) return false;
    const double t = a.imag() / (a.imag() - b.imag());
    const double x = a.real() + t * (b.real() - a.real());
    return x <= 0.0;
}

inline void check_segment(const WeierstrassSurface& s, Complex a, Complex b)
{
    for (Complex p : s.punctures)
        if (point_segment_distance(p, a, b) < kPunctureClearance)
            throw std::domain_error("path passes within clearance of a puncture");
    if (s.domain.kind == DomainSpec::Kind::CutPlane && segment_crosses_cut(a, b))
        throw std::domain_error("path crosses the branch cut");
    for (int i = 0; i <= 16; ++i) {
        const Complex z = a + (double(i) / 16.0) * (b - a);
        if (!s.domain.contains(z))
            throw std::domain_error("path exits the surface domain");
    }
}

inline void check_loop(const WeierstrassSurface& s, const LoopSpec& loop)
{
    if (loop.kind == LoopSpec::Kind::Circle) {
        for (Complex p : s.punctures)
            if (std::abs(std::abs(loop.center - p) - loop.radius) < kPunctureClearance)
                throw std::domain_error("loop passes within clearance of a puncture");
        for (int i = 0; i < 64; ++i) {
            const double t = 2.0 * M_PI * i / 64.0;
            if (!s.domain.contains(loop.center + loop.radius * std::polar(1.0, t)))
                throw std::domain_error("loop exits the surface domain");
        }
    } else {
        for (std::size_t i = 0; i + 1 < loop.vertices.size(); ++i)
            check_segment(s, loop.vertices[i], loop.vertices[i + 1]);
    }
}

} // namespace detail

// Contour integral of (phi1, phi2, phi3) along a path (straight segments
// between consecutive waypoints).
inline PeriodResult path_integral(const WeierstrassSurface& s,
                                  const std::vector<Complex>& waypoints,
                                  double tol = 1e-12)
{
    PeriodResult out;
    out.value.setZero();
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
        const Complex a = waypoints[i];
        const Complex b = waypoints[i + 1];
        if (std::abs(b - a) < 1e-15)
            continue;
        detail::check_segment(s, a, b);
        const Complex dz = b - a;
        auto f = [&](double t) -> Eigen::Vector3cd { return s.forms(a + t * dz) * dz; };
        out.value += integrate_adaptive(f, 0.0, 1.0, tol, out.error);
    }
    return out;
}

// Period of a closed loop, adaptive contour integration.
inline PeriodResult period(const WeierstrassSurface& s, const LoopSpec& loop,
                           double tol = 1e-10)
{
    detail::check_loop(s, loop);
    if (loop.kind == LoopSpec::Kind::Circle) {
        const double sign = loop.ccw ? 1.0 : -1.0;
        auto f = [&](double t) -> Eigen::Vector3cd {
            const Complex e = std::polar(1.0, sign * t);
            const Complex z = loop.center + loop.radius * e;
            const Complex dz = Complex(0.0, sign) * loop.radius * e;
            return s.forms(z) * dz;
        };
        PeriodResult out;
        out.value = integrate_adaptive(f, 0.0, 2.0 * M_PI, tol, out.error);
        return out;
    }
    std::vector<Complex> verts = loop.vertices;
    if (!loop.ccw)
        std::reverse(verts.begin(), verts.end());
    return path_integral(s, verts, tol);
}

inline FluxVector flux(const WeierstrassSurface& s, const LoopSpec& loop,
                       double tol = 1e-10)
{
    const PeriodResult p = period(s, loop, tol);
    FluxVector f;
    for (int i = 0; i < 3; ++i) {
        f.v[i] = p.value[i].imag();
        f.real_part[i] = p.value[i].real();
    }
    f.quadrature_error = p.error;
    return f;
}

struct WellDefinedResult {
    bool well_defined = true;
    std::optional<std::size_t> witness_index;  // loop index in the basis
    std::optional<FluxVector> witness_flux;
};

// Calabi criterion: the associate family is well defined iff every loop in a
// homology generating set has zero flux. Supplying a generating basis is the
// caller's responsibility.
inline WellDefinedResult associate_well_defined(const WeierstrassSurface& s,
                                                const std::vector<LoopSpec>& basis,
                                                double tol = 1e-8)
{
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const FluxVector f = flux(s, basis[i]);
        if (f.v.cwiseAbs().maxCoeff() > tol) {
            WellDefinedResult r;
            r.well_defined = false;
            r.witness_index = i;
            r.witness_flux = f;
            return r;
        }
    }
    return {};
}

// f_theta(z) = Re(e^{i theta} \int_path (phi1, phi2, phi3)). An empty path
// means the straight segment from base to z. Path independence holds iff all
// real periods vanish, which the catalog surfaces guarantee on
// simply-connected subdomains.
inline Eigen::Vector3d immerse(const WeierstrassSurface& s, double theta,
                               Complex base, Complex z,
                               std::vector<Complex> path = {},
                               double tol = 1e-12)
{
    if (path.empty())
        path = {base, z};
    if (std::abs(path.front() - base) > 1e-12 || std::abs(path.back() - z) > 1e-12)
        throw std::invalid_argument("immerse: path must run from base to z");
    const PeriodResult integral = path_integral(s, path, tol);
    const Complex rot = std::polar(1.0, theta);
    Eigen::Vector3d out;
    for (int i = 0; i < 3; ++i)
        out[i] = (rot * integral.value[i]).real();
    return out;
}

// Conformal factor lambda(z) = (1/2)(|g| + 1/|g|)|eta|; the metric is
// lambda^2 |dz|^2 for every member of the associate family.
inline double metric_factor(const WeierstrassSurface& s, Complex z)
{
    if (!s.domain.contains(z))
        throw std::domain_error("metric_factor: point outside domain");
    for (Complex p : s.punctures)
        if (std::abs(z - p) < kPunctureClearance)
            throw std::domain_error("metric_factor: point at or near a puncture");
    const double ag = std::abs(s.gauss_map(z));
    if (ag < 1e-12 || ag > 1e12)
        throw std::domain_error("metric_factor: Gauss map degenerate at this point");
    return 0.5 * (ag + 1.0 / ag) * std::abs(s.height_density(z));
}

namespace detail {

// Spot-check the immersion condition: |g|, 1/|g| finite and lambda > 0 on a
// grid and on small circles around each puncture.
inline void validate_surface(const WeierstrassSurface& s)
{
    auto probe = [&](Complex z) {
        if (!s.domain.contains(z))
            return;
        for (Complex p : s.punctures)
            if (std::abs(z - p) < 1e-3)
                return;
        const double ag = std::abs(s.gauss_map(z));
        const double ae = std::abs(s.height_density(z));
        if (!std::isfinite(ag) || ag > 1e12 || (ag > 0.0 && 1.0 / ag > 1e12))
            throw std::domain_error("surface data: Gauss map degenerate on domain");
        const double lambda = 0.5 * (ag + (ag > 0.0 ? 1.0 / ag : 1e300)) * ae;
        if (!std::isfinite(lambda) || !(lambda > 0.0))
            throw std::domain_error("surface data: conformal factor not positive on domain");
    };
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            probe(Complex(-2.0 + 4.0 * (i + 0.37) / 12.0, -2.0 + 4.0 * (j + 0.61) / 12.0));
    for (Complex p : s.punctures)
        for (double r : {1e-2, 1e-1, 0.5})
            for (int i = 0; i < 16; ++i)
                probe(p + std::polar(r, 2.0 * M_PI * (i + 0.5) / 16.0));
}

} // namespace detail

enum class CatalogSurface { catenoid, helicoid, enneper };

inline WeierstrassSurface catalog(CatalogSurface which)
{
    WeierstrassSurface s;
    switch (which) {
    case CatalogSurface::catenoid:
        s.name = "catenoid";
        s.domain.kind = DomainSpec::Kind::PuncturedPlane;
        s.gauss_map = [](Complex z) { return z; };
        s.height_density = [](Complex z) { return 1.0 / z; };
        s.punctures = {Complex(0.0, 0.0)};
        s.base = 1.0;
        break;
    case CatalogSurface::helicoid:
        s.name = "helicoid";
        s.domain.kind = DomainSpec::Kind::CutPlane;
        s.gauss_map = [](Complex z) { return z; };
        s.height_density = [](Complex z) { return Complex(0.0, 1.0) / z; };
        s.punctures = {Complex(0.0, 0.0)};
        s.log_cover = true;         // cut plane; the full helicoid is the universal cover
        s.simply_connected = true;
        s.base = 1.0;
        break;
    case CatalogSurface::enneper:
        s.name = "enneper";
        s.domain.kind = DomainSpec::Kind::FullPlane;
        s.gauss_map = [](Complex z) { return z; };
        s.height_density = [](Complex z) { return z; };
        s.simply_connected = true;
        s.base = 0.0;
        break;
    }
    detail::validate_surface(s);
    return s;
}

inline WeierstrassSurface catalog(const std::string& name)
{
    if (name == "catenoid") return catalog(CatalogSurface::catenoid);
    if (name == "helicoid") return catalog(CatalogSurface::helicoid);
    if (name == "enneper") return catalog(CatalogSurface::enneper);
    throw std::invalid_argument("unknown catalog surface: " + name);
}

} // namespace cmcr
