#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cmcrigid/delaunay.hpp"
#include "cmcrigid/mesh.hpp"
#include "cmcrigid/shape_operator.hpp"

using namespace cmcr;

TEST_CASE("shape classification from neck curvature")
{
    CHECK(shape_from_neck_curvature(2.0).family == DelaunayFamily::cylinder);
    CHECK(shape_from_neck_curvature(2.0).s == 0.0);
    CHECK(shape_from_neck_curvature(3.0).family == DelaunayFamily::unduloid);
    CHECK(shape_from_neck_curvature(3.0).s == -1.0);
    CHECK(shape_from_neck_curvature(1.0).family == DelaunayFamily::nodoid);
    CHECK(shape_from_neck_curvature(1.0).s == 1.0);
    CHECK_THROWS_AS(shape_from_neck_curvature(0.0), std::invalid_argument);
    CHECK_THROWS_AS(shape_from_neck_curvature(-1.0), std::invalid_argument);

    CHECK(shape_from_neck_curvature(3.0).neck_radius() == Catch::Approx(1.0 / 3.0));
    CHECK(shape_from_neck_curvature(3.0).neck_length() == Catch::Approx(2.0 * M_PI / 3.0));
}

TEST_CASE("profile curve")
{
    SECTION("cylinder is a fixed point of the ODE")
    {
        const ProfileCurve p = profile_solve(shape_from_neck_curvature(2.0), 2.0, 1e-3);
        for (const ProfileSample& smp : p.samples) {
            CHECK(std::abs(smp.y - 0.5) < 1e-12);
            CHECK(std::abs(smp.psi) < 1e-12);
        }
    }
    SECTION("unduloid r = 3 oscillates between 1/3 and 2/3")
    {
        // y_max is the other root of y^2 - y = c with c = 1/9 - 1/3.
        const ProfileCurve p = profile_solve(shape_from_neck_curvature(3.0), 4.0);
        double ymin = 1e9, ymax = 0.0, drift = 0.0;
        for (const ProfileSample& smp : p.samples) {
            ymin = std::min(ymin, smp.y);
            ymax = std::max(ymax, smp.y);
            drift = std::max(drift,
                             std::abs(smp.y * smp.y - smp.y * std::cos(smp.psi) - p.force));
        }
        CHECK(ymin == Catch::Approx(1.0 / 3.0).margin(1e-9));
        CHECK(ymax == Catch::Approx(2.0 / 3.0).margin(1e-6));
        CHECK(drift < 1e-9);
        CHECK(profile_period(p) > 0.0);
        CHECK(profile_period(p) < 4.0);
    }
    SECTION("argument validation")
    {
        CHECK_THROWS_AS(profile_solve(shape_from_neck_curvature(3.0), -1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(profile_solve(shape_from_neck_curvature(3.0), 1.0, 0.0),
                        std::invalid_argument);
    }
    SECTION("neck principal curvature recovered from the embedded surface")
    {
        // Second difference along the neck ring of the revolved mesh.
        const double r = 3.0;
        const ProfileCurve p = profile_solve(shape_from_neck_curvature(r), 0.01, 1e-3);
        const int na = 1024;
        const MeshPatch mesh = revolve_to_mesh(p, na);
        const Eigen::Vector3d v0 = mesh.vertices[0];
        const Eigen::Vector3d vp = mesh.vertices[1];
        const Eigen::Vector3d vm = mesh.vertices[na - 1];
        const Eigen::Vector3d n0 = mesh.normals[0];
        const double ds = 2.0 * M_PI / (r * na);  // arclength step along the neck circle
        const double k = (vp - 2.0 * v0 + vm).dot(n0) / (ds * ds);
        CHECK(k == Catch::Approx(r).margin(1e-4));
    }
}

TEST_CASE("neck image curve")
{
    SECTION("distinguished angles")
    {
        const DelaunayShape und = shape_from_neck_curvature(3.0);
        const HelixArc a0 = neck_image_curve(und, 0.0);
        CHECK(a0.k == 3.0);
        CHECK(a0.tau == 0.0);
        CHECK(a0.len == Catch::Approx(2.0 * M_PI / 3.0));

        const HelixArc api = neck_image_curve(und, M_PI);
        CHECK(api.k == Catch::Approx(-1.0).margin(1e-15));
        CHECK(std::abs(api.tau) < 1e-15);

        const HelixArc cyl = neck_image_curve(shape_from_neck_curvature(2.0), M_PI);
        CHECK(std::abs(cyl.k) < 1e-15);
        CHECK(std::abs(cyl.tau) < 1e-15);
        CHECK(cyl.len == Catch::Approx(M_PI));
        CHECK(helix_endpoint_gap(cyl) == Catch::Approx(M_PI));
    }
    SECTION("consistent with the shape-operator route")
    {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> rd(0.05, 50.0);
        std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
        const Eigen::Vector2d e1(1.0, 0.0);
        for (int i = 0; i < 200; ++i) {
            const double r = rd(rng);
            const double theta = ang(rng);
            const DelaunayShape shape = shape_from_neck_curvature(r);
            const HelixArc arc = neck_image_curve(shape, theta);
            const ShapeOperatorSample neck(r, 0.0, 2.0 - r);
            const auto [k, tau] = geodesic_curvature_torsion(neck, theta, e1);
            CHECK(std::abs(arc.k - k) <= 4e-15 * std::max(1.0, r));
            CHECK(std::abs(arc.tau - tau) <= 4e-15 * std::max(1.0, r));
        }
    }
}

TEST_CASE("rigidity gap sweep")
{
    SECTION("table hits pi exactly and reproduces the chord values")
    {
        const GapSweep sweep = rigidity_gap_sweep(shape_from_neck_curvature(3.0), 360);
        bool found_pi = false;
        for (const auto& [theta, gap] : sweep.table) {
            if (theta == M_PI) {
                found_pi = true;
                CHECK(gap == Catch::Approx(std::sqrt(3.0)).epsilon(1e-12));
            }
            CHECK(gap > 0.0);
        }
        CHECK(found_pi);
        CHECK(sweep.min_gap > 0.0);
    }
    SECTION("cylinder gap at pi is pi")
    {
        const GapSweep sweep = rigidity_gap_sweep(shape_from_neck_curvature(2.0), 360);
        for (const auto& [theta, gap] : sweep.table)
            if (theta == M_PI)
                CHECK(gap == Catch::Approx(M_PI));
    }
    SECTION("helical gap at a quarter turn matches the Frenet oracle")
    {
        const HelixArc arc = neck_image_curve(shape_from_neck_curvature(3.0), M_PI / 2.0);
        CHECK(arc.k == Catch::Approx(1.0));
        CHECK(arc.tau == Catch::Approx(-2.0));
        const double gap = helix_endpoint_gap(arc);
        CHECK(gap > 0.0);
        CHECK(std::abs(gap - frenet_integrate(arc.k, arc.tau, arc.len, 1e-4).position.norm()) <
              1e-8);
    }
    SECTION("gap vanishes linearly as theta -> 0")
    {
        const DelaunayShape und = shape_from_neck_curvature(2.5);
        const double g1 = helix_endpoint_gap(neck_image_curve(und, 1e-3));
        const double g2 = helix_endpoint_gap(neck_image_curve(und, 2e-3));
        CHECK(g1 > 0.0);
        CHECK(g2 / g1 == Catch::Approx(2.0).epsilon(0.05));
    }
    SECTION("grid size validation")
    {
        CHECK_THROWS_AS(rigidity_gap_sweep(shape_from_neck_curvature(3.0), 4),
                        std::invalid_argument);
    }
}

TEST_CASE("nodoid closure parameters")
{
    CHECK(nodoid_closure_solve(1) == Catch::Approx(1.0).margin(1e-9));
    CHECK(nodoid_closure_solve(2) == Catch::Approx(2.0 / 3.0).margin(1e-9));
    CHECK(nodoid_closure_solve(5) == Catch::Approx(1.0 / 3.0).margin(1e-9));
    CHECK_THROWS_AS(nodoid_closure_solve(0), std::invalid_argument);

    SECTION("gap is strictly positive between consecutive closure parameters")
    {
        for (int m = 1; m <= 4; ++m) {
            const double ra = 2.0 / (m + 1.0);
            const double rb = 2.0 / (m + 2.0);
            for (int i = 1; i < 20; ++i) {
                const double r = ra + (rb - ra) * i / 20.0;
                CHECK(helix_endpoint_gap(neck_image_curve(shape_from_neck_curvature(r), M_PI)) >
                      1e-4);
            }
        }
    }
    SECTION("unduloids never close at theta = pi")
    {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> rd(2.0000001, 50.0);
        for (int i = 0; i < 200; ++i) {
            const double r = rd(rng);
            CHECK(helix_endpoint_gap(neck_image_curve(shape_from_neck_curvature(r), M_PI)) > 0.0);
        }
    }
}

TEST_CASE("surface of revolution mesh")
{
    SECTION("cylinder vertices sit on the radius-1/2 tube")
    {
        const ProfileCurve p = profile_solve(shape_from_neck_curvature(2.0), 1.0, 1e-2);
        const MeshPatch mesh = revolve_to_mesh(p, 64);
        CHECK(mesh.vertices.size() == p.samples.size() * 64);
        for (const Eigen::Vector3d& v : mesh.vertices)
            CHECK(std::abs(std::hypot(v.y(), v.z()) - 0.5) < 1e-12);
    }
    SECTION("unduloid radial range")
    {
        const ProfileCurve p = profile_solve(shape_from_neck_curvature(3.0), 4.0, 1e-3);
        const MeshPatch mesh = revolve_to_mesh(p, 32);
        for (const Eigen::Vector3d& v : mesh.vertices) {
            const double rad = std::hypot(v.y(), v.z());
            CHECK(rad > 1.0 / 3.0 - 1e-6);
            CHECK(rad < 2.0 / 3.0 + 1e-6);
        }
    }
    SECTION("no crack across the angular seam")
    {
        const ProfileCurve p = profile_solve(shape_from_neck_curvature(3.0), 1.0, 1e-2);
        const int na = 16;
        const MeshPatch mesh = revolve_to_mesh(p, na);
        // Radial alignment of normals is continuous in j, including the wrap.
        for (std::size_t i = 0; i < p.samples.size(); ++i) {
            for (int j = 0; j < na; ++j) {
                const auto& v = mesh.vertices[i * na + j];
                const auto& n = mesh.normals[i * na + j];
                const Eigen::Vector3d radial(0.0, v.y(), v.z());
                const auto& vn = mesh.vertices[i * na + (j + 1) % na];
                const auto& nn = mesh.normals[i * na + (j + 1) % na];
                const Eigen::Vector3d radialn(0.0, vn.y(), vn.z());
                CHECK(std::abs(n.dot(radial.normalized()) - nn.dot(radialn.normalized())) < 1e-12);
            }
        }
        for (const auto& f : mesh.faces) {
            for (int idx : f) {
                CHECK(idx >= 0);
                CHECK(idx < static_cast<int>(mesh.vertices.size()));
            }
        }
    }
    SECTION("argument validation")
    {
        const ProfileCurve p = profile_solve(shape_from_neck_curvature(2.0), 1.0, 1e-2);
        CHECK_THROWS_AS(revolve_to_mesh(p, 4), std::invalid_argument);
        ProfileCurve degenerate;
        degenerate.force = 0.0;
        degenerate.samples.push_back({0.0, 0.0, 0.5, 0.0});
        CHECK_THROWS_AS(revolve_to_mesh(degenerate, 64), std::invalid_argument);
    }
}
