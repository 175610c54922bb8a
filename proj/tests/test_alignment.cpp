#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cmcrigid/alignment.hpp"
#include "cmcrigid/mesh.hpp"

using namespace cmcr;

namespace {

Eigen::Matrix3d random_rotation(std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss;
    const Eigen::Quaterniond q =
        Eigen::Quaterniond(gauss(rng), gauss(rng), gauss(rng), gauss(rng)).normalized();
    return q.toRotationMatrix();
}

std::vector<Eigen::Vector3d> random_cloud(std::mt19937_64& rng, int n)
{
    std::normal_distribution<double> gauss;
    std::vector<Eigen::Vector3d> pts(n);
    for (auto& p : pts)
        p = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    return pts;
}

} // namespace

TEST_CASE("congruence fit")
{
    std::mt19937_64 rng(123);

    SECTION("identity on equal point sets")
    {
        const auto x = random_cloud(rng, 20);
        const CongruenceResult res = congruence_fit(x, x);
        CHECK((res.rotation - Eigen::Matrix3d::Identity()).norm() < 1e-12);
        CHECK(res.translation.norm() < 1e-12);
        CHECK(res.rms_residual < 1e-12);
        CHECK_FALSE(res.reflection);
    }
    SECTION("recovers a known rigid motion")
    {
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = random_cloud(rng, 30);
            const Eigen::Matrix3d r = random_rotation(rng);
            const Eigen::Vector3d t(0.3, -1.2, 2.0);
            std::vector<Eigen::Vector3d> y;
            for (const auto& p : x)
                y.push_back(r * p + t);
            const CongruenceResult res = congruence_fit(x, y);
            CHECK((res.rotation - r).norm() < 1e-10);
            CHECK((res.translation - t).norm() < 1e-10);
            CHECK(res.rms_residual < 1e-12);
            CHECK((res.rotation.transpose() * res.rotation - Eigen::Matrix3d::Identity()).norm() <
                  1e-12);
        }
    }
    SECTION("residual invariant under rigid pre-motion of the source")
    {
        const auto x = random_cloud(rng, 25);
        auto y = random_cloud(rng, 25);
        const Eigen::Matrix3d r = random_rotation(rng);
        std::vector<Eigen::Vector3d> xm;
        for (const auto& p : x)
            xm.push_back(r * p + Eigen::Vector3d(1, 2, 3));
        CHECK(std::abs(congruence_fit(x, y).rms_residual -
                       congruence_fit(xm, y).rms_residual) < 1e-10);
    }
    SECTION("reflections only when allowed")
    {
        const auto x = random_cloud(rng, 25);
        std::vector<Eigen::Vector3d> y;
        for (const auto& p : x)
            y.push_back(-p);
        const CongruenceResult strict = congruence_fit(x, y, false);
        CHECK(strict.rms_residual > 1e-3);
        CHECK_FALSE(strict.reflection);
        const CongruenceResult loose = congruence_fit(x, y, true);
        CHECK(loose.rms_residual < 1e-12);
        CHECK(loose.reflection);
    }
    SECTION("input validation")
    {
        const auto x = random_cloud(rng, 10);
        auto y = random_cloud(rng, 9);
        CHECK_THROWS_AS(congruence_fit(x, y), std::invalid_argument);
        CHECK_THROWS_AS(congruence_fit({x[0], x[1], x[2]}, {x[0], x[1], x[2]}),
                        std::invalid_argument);
        std::vector<Eigen::Vector3d> line, line2;
        for (int i = 0; i < 8; ++i) {
            line.emplace_back(i, 0.0, 0.0);
            line2.emplace_back(0.0, i, 0.0);
        }
        CHECK_THROWS_AS(congruence_fit(line, line2), std::invalid_argument);
    }
}

TEST_CASE("helicoid quarter-turn associate aligns with the catenoid")
{
    const WeierstrassSurface helicoid = catalog(CatalogSurface::helicoid);
    const WeierstrassSurface catenoid = catalog(CatalogSurface::catenoid);
    const int n = 16;
    const MeshPatch hel =
        immersion_grid_mesh(helicoid, M_PI / 2.0, n, -0.5, 0.5, -1.0, 1.0, true);
    const MeshPatch cat = immersion_grid_mesh(catenoid, 0.0, n, -0.5, 0.5, -1.0, 1.0, true,
                                              /*mirror_u=*/true);
    const CongruenceResult res = congruence_fit(hel.vertices, cat.vertices);
    CHECK(res.rms_residual < 1e-6);
    CHECK_FALSE(res.reflection);
}

TEST_CASE("recover_theta")
{
    const WeierstrassSurface enneper = catalog(CatalogSurface::enneper);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::vector<Complex> params;
    for (int i = 0; i < 40; ++i)
        params.emplace_back(coord(rng), coord(rng));

    auto sample = [&](const WeierstrassSurface& s, double theta,
                      const std::vector<Complex>& pts) {
        std::vector<Eigen::Vector3d> out;
        for (Complex z : pts)
            out.push_back(immerse(s, theta, s.base, z));
        return out;
    };

    SECTION("the inclusion recovers theta = 0")
    {
        const CongruenceResult res = recover_theta(enneper, params, sample(enneper, 0.0, params));
        REQUIRE(res.recovered_theta.has_value());
        const double t = *res.recovered_theta;
        CHECK(std::min(t, 2.0 * M_PI - t) < 1e-6);
        CHECK(res.rms_residual < 1e-8);
    }
    SECTION("round trip over random angles")
    {
        std::uniform_real_distribution<double> ang(0.1, 2.0 * M_PI - 0.1);
        for (int i = 0; i < 10; ++i) {
            const double theta_true = ang(rng);
            const CongruenceResult res =
                recover_theta(enneper, params, sample(enneper, theta_true, params));
            REQUIRE(res.recovered_theta.has_value());
            CHECK(std::abs(*res.recovered_theta - theta_true) < 1e-6);
            CHECK(res.rms_residual < 1e-8);
        }
    }
    SECTION("round trip on a helicoid patch")
    {
        const WeierstrassSurface helicoid = catalog(CatalogSurface::helicoid);
        std::vector<Complex> hp;
        std::uniform_real_distribution<double> u(-0.5, 0.5), v(-1.0, 1.0);
        for (int i = 0; i < 30; ++i)
            hp.push_back(std::exp(Complex(u(rng), v(rng))));
        const double theta_true = 1.2345;
        const CongruenceResult res =
            recover_theta(helicoid, hp, sample(helicoid, theta_true, hp));
        REQUIRE(res.recovered_theta.has_value());
        CHECK(std::abs(*res.recovered_theta - theta_true) < 1e-6);
    }
    SECTION("intrinsic rotation by alpha of this Enneper chart maps to theta = 2 alpha")
    {
        // Parameter rotation z -> e^{i alpha} z: the height integrand is
        // quadratic in z, so the recovered associate angle is 2 alpha.
        const double alpha = M_PI / 4.0;
        std::vector<Complex> rotated;
        for (Complex z : params)
            rotated.push_back(std::polar(1.0, alpha) * z);
        const CongruenceResult res =
            recover_theta(enneper, params, sample(enneper, 0.0, rotated));
        REQUIRE(res.recovered_theta.has_value());
        CHECK(std::abs(*res.recovered_theta - 2.0 * alpha) < 1e-6);
        CHECK(res.rms_residual < 1e-8);
    }
    SECTION("theta not identifiable on a rotationally degenerate target")
    {
        // All target points equal: congruence_fit rejects this as degenerate.
        std::vector<Eigen::Vector3d> flat(params.size(), Eigen::Vector3d::Zero());
        CHECK_THROWS_AS(recover_theta(enneper, params, flat), std::invalid_argument);
    }
    SECTION("size mismatch rejected")
    {
        CHECK_THROWS_AS(recover_theta(enneper, params, {}), std::invalid_argument);
    }
}
