#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmcrigid/delaunay.hpp"
#include "cmcrigid/weierstrass.hpp"

namespace cmcr {

struct MeshPatch {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<Eigen::Vector3d> normals;        // optional, per vertex when present
    std::map<std::string, std::string> meta;     // provenance: surface, parameters, theta, resolution
};

// Revolves a profile curve about the x-axis into a triangle mesh, closed
// (watertight) in the angular direction. Vertex count = samples * n_angular.
inline MeshPatch revolve_to_mesh(const ProfileCurve& p, int n_angular)
{
    if (n_angular < 8)
        throw std::invalid_argument("revolve_to_mesh: n_angular must be >= 8");
    if (p.samples.size() < 2)
        throw std::invalid_argument("revolve_to_mesh: degenerate profile");

    MeshPatch mesh;
    const int rows = static_cast<int>(p.samples.size());
    mesh.vertices.reserve(static_cast<std::size_t>(rows) * n_angular);
    mesh.normals.reserve(mesh.vertices.capacity());
    for (const ProfileSample& smp : p.samples) {
        for (int j = 0; j < n_angular; ++j) {
            const double phi = 2.0 * M_PI * j / n_angular;
            const double c = std::cos(phi), sn = std::sin(phi);
            mesh.vertices.emplace_back(smp.x, smp.y * c, smp.y * sn);
            // Inward (mean convex, H = +1) normal of the surface of revolution.
            mesh.normals.emplace_back(std::sin(smp.psi), -std::cos(smp.psi) * c,
                                      -std::cos(smp.psi) * sn);
        }
    }
    for (int i = 0; i + 1 < rows; ++i) {
        for (int j = 0; j < n_angular; ++j) {
            const int jn = (j + 1) % n_angular;
            const int a = i * n_angular + j;
            const int b = i * n_angular + jn;
            const int c = (i + 1) * n_angular + j;
            const int d = (i + 1) * n_angular + jn;
            mesh.faces.push_back({a, b, d});
            mesh.faces.push_back({a, d, c});
        }
    }
    return mesh;
}

// Samples a minimal-surface immersion f_theta over an n x n parameter grid.
// For log-cover surfaces (catenoid, helicoid) the grid is exponential,
// z = exp(u + i v) over box_u x box_v; for plane domains it is the affine
// grid over the same box. mirror_u flips the u direction (used to pair a
// surface with its conjugate).
inline MeshPatch immersion_grid_mesh(const WeierstrassSurface& s, double theta, int n,
                                     double u0, double u1, double v0, double v1,
                                     bool exponential, bool mirror_u = false)
{
    if (n < 2)
        throw std::invalid_argument("immersion_grid_mesh: resolution must be >= 2");
    MeshPatch mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        double u = u0 + (u1 - u0) * i / (n - 1.0);
        if (mirror_u)
            u = -u;
        for (int j = 0; j < n; ++j) {
            const double v = v0 + (v1 - v0) * j / (n - 1.0);
            const Complex z = exponential ? std::exp(Complex(u, v)) : Complex(u, v);
            mesh.vertices.push_back(immerse(s, theta, s.base, z));
        }
    }
    for (int i = 0; i + 1 < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) {
            const int a = i * n + j;
            const int b = i * n + j + 1;
            const int c = (i + 1) * n + j;
            const int d = (i + 1) * n + j + 1;
            mesh.faces.push_back({a, b, d});
            mesh.faces.push_back({a, d, c});
        }
    }
    return mesh;
}

// Plain-text OBJ with metadata in comment header lines. Numbers carry 17
// significant digits so files are byte-stable golden artifacts.
inline void write_obj(std::ostream& os, const MeshPatch& mesh)
{
    os.precision(17);
    for (const auto& [key, value] : mesh.meta)
        os << "# " << key << " " << value << "\n";
    for (const auto& v : mesh.vertices)
        os << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& nv : mesh.normals)
        os << "vn " << nv.x() << " " << nv.y() << " " << nv.z() << "\n";
    for (const auto& f : mesh.faces)
        os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

} // namespace cmcr
