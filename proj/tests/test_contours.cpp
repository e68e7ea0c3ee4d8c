#include <cmath>
#include <vector>

#include "doctest.h"
#include "qc/contours.hpp"
#include "qc/errors.hpp"
#include "qc/rng.hpp"
#include "qc/stats.hpp"

using namespace qc;

namespace {

// Hand-built covariate-free fit: the halfspace { y : u'y >= a }.
DirectionalFit plain_halfspace(double theta, double a, double tau = 0.2) {
    DirectionalFit f;
    f.direction = Direction::from_angle(theta);
    f.tau = tau;
    f.a = a;
    f.b_y = 0.0;
    f.kind = CovariateKind::None;
    return f;
}

std::vector<Eigen::Vector2d> normal_cloud(Rng& rng, int n) {
    std::vector<Eigen::Vector2d> c;
    c.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto [e1, e2] = rng.normal_pair();
        c.emplace_back(e1, e2);
    }
    return c;
}

double polygon_turn_min(const std::vector<Eigen::Vector2d>& v) {
    double worst = std::numeric_limits<double>::infinity();
    const size_t m = v.size();
    for (size_t i = 0; i < m; ++i) {
        const Eigen::Vector2d a = v[(i + 1) % m] - v[i];
        const Eigen::Vector2d b = v[(i + 2) % m] - v[(i + 1) % m];
        worst = std::min(worst, a.x() * b.y() - a.y() * b.x());
    }
    return worst;
}

}  // namespace

TEST_SUITE("contours") {

TEST_CASE("four axis halfspaces intersect in the unit square") {
    std::vector<DirectionalFit> fits = {
        plain_halfspace(0.0, -1.0),           // x >= -1
        plain_halfspace(M_PI, -1.0),          // x <= 1
        plain_halfspace(M_PI / 2.0, -1.0),    // y >= -1
        plain_halfspace(3.0 * M_PI / 2.0, -1.0)};
    const Contour c = halfspace_intersection(fits);
    REQUIRE(c.vertices.size() == 4);
    CHECK(c.kind == ContourKind::Halfspace);
    CHECK_FALSE(c.at_x.has_value());
    double area = 0.0;
    for (size_t i = 0; i < 4; ++i) {
        const auto& a = c.vertices[i];
        const auto& b = c.vertices[(i + 1) % 4];
        area += 0.5 * (a.x() * b.y() - a.y() * b.x());
        CHECK(std::abs(std::abs(a.x()) - 1.0) <= 1e-9);
        CHECK(std::abs(std::abs(a.y()) - 1.0) <= 1e-9);
    }
    CHECK(area == doctest::Approx(4.0));  // positive area = counterclockwise
}

TEST_CASE("opposing halfspaces with no overlap raise EmptyIntersection") {
    std::vector<DirectionalFit> fits = {
        plain_halfspace(0.0, 2.0),          // x >= 2
        plain_halfspace(M_PI, 2.0),         // x <= -2
        plain_halfspace(M_PI / 2.0, 0.0),
        plain_halfspace(3.0 * M_PI / 2.0, 0.0)};
    CHECK_THROWS_AS(halfspace_intersection(fits), EmptyIntersection);
}

TEST_CASE("normals confined to a halfplane raise UnboundedRegion") {
    std::vector<DirectionalFit> one_sided = {
        plain_halfspace(0.0, 0.0), plain_halfspace(0.3, 0.0), plain_halfspace(0.6, 0.0)};
    CHECK_THROWS_AS(halfspace_intersection(one_sided), UnboundedRegion);

    std::vector<DirectionalFit> two_orientations = {
        plain_halfspace(0.0, 0.0), plain_halfspace(0.0, -1.0), plain_halfspace(M_PI / 2.0, 0.0)};
    CHECK_THROWS_AS(halfspace_intersection(two_orientations), UnboundedRegion);
}

TEST_CASE("near-parallel constraints keep the tighter offset") {
    std::vector<DirectionalFit> fits = {
        plain_halfspace(0.0, -1.0),
        plain_halfspace(1e-10, -0.5),  // same orientation, tighter
        plain_halfspace(M_PI, -1.0),
        plain_halfspace(M_PI / 2.0, -1.0),
        plain_halfspace(3.0 * M_PI / 2.0, -1.0)};
    const Contour c = halfspace_intersection(fits);
    double min_x = 1e300;
    for (const auto& v : c.vertices) min_x = std::min(min_x, v.x());
    CHECK(min_x == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("mismatched or out-of-range taus are rejected") {
    std::vector<DirectionalFit> fits = {
        plain_halfspace(0.0, -1.0, 0.2), plain_halfspace(M_PI / 2.0, -1.0, 0.2),
        plain_halfspace(M_PI, -1.0, 0.3), plain_halfspace(3.0 * M_PI / 2.0, -1.0, 0.2)};
    CHECK_THROWS_AS(halfspace_intersection(fits), InvalidArgument);

    std::vector<DirectionalFit> high_tau = {
        plain_halfspace(0.0, -1.0, 0.8), plain_halfspace(M_PI / 2.0, -1.0, 0.8),
        plain_halfspace(M_PI, -1.0, 0.8), plain_halfspace(3.0 * M_PI / 2.0, -1.0, 0.8)};
    CHECK_THROWS_AS(halfspace_intersection(high_tau), InvalidArgument);
}

TEST_CASE("componentwise median follows the order statistics") {
    CHECK(componentwise_median({{0.0, 0.0}, {2.0, 4.0}}).isApprox(Eigen::Vector2d(1.0, 2.0), 1e-12));
    CHECK(componentwise_median({{1.0, 1.0}, {2.0, 2.0}, {3.0, 9.0}})
              .isApprox(Eigen::Vector2d(2.0, 2.0), 1e-12));

    Rng rng(17);
    const auto cloud = normal_cloud(rng, 10001);
    const Eigen::Vector2d med = componentwise_median(cloud);
    CHECK(std::abs(med.x()) <= 0.05);
    CHECK(std::abs(med.y()) <= 0.05);
}

TEST_CASE("four axis points give a rotated unit square") {
    const std::vector<Eigen::Vector2d> cloud = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const Contour c = radial_contour(cloud, 0.5, 4);
    REQUIRE(c.vertices.size() == 4);
    CHECK(c.center->isApprox(Eigen::Vector2d(0.0, 0.0), 1e-12));
    for (const auto& v : c.vertices) CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.vertices[0].x() == doctest::Approx(std::sqrt(0.5)));
    CHECK(c.vertices[0].y() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("a cloud on the unit circle yields unit radii") {
    std::vector<Eigen::Vector2d> cloud;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * (i + 0.5) / n;
        cloud.emplace_back(std::cos(t), std::sin(t));
    }
    const Contour c = radial_contour(cloud, 0.5, 8);
    REQUIRE(c.vertices.size() == 8);
    for (const auto& v : c.vertices) CHECK(std::abs((v - *c.center).norm() - 1.0) <= 0.02);
}

TEST_CASE("radial coverage tracks tau on the generating cloud") {
    Rng rng(2024);
    const auto cloud = normal_cloud(rng, 20000);
    for (double tau : {0.5, 0.8}) {
        const Contour c = radial_contour(cloud, tau, 16);
        const double cov = coverage(c, cloud);
        const double se = 3.0 * std::sqrt(tau * (1.0 - tau) / (20000.0 / 16.0));
        CHECK(std::abs(cov - tau) <= se + 0.01);
    }
}

TEST_CASE("a sparse cloud with empty bins is rejected") {
    const std::vector<Eigen::Vector2d> cloud = {{1.0, 0.0}, {1.1, 0.05}, {0.9, -0.02}};
    CHECK_THROWS_AS(radial_contour(cloud, 0.5, 8), EmptyAngleBin);
}

TEST_CASE("coverage counts boundary points as inside") {
    std::vector<DirectionalFit> fits = {
        plain_halfspace(0.0, 0.0), plain_halfspace(M_PI, -1.0),
        plain_halfspace(M_PI / 2.0, 0.0), plain_halfspace(3.0 * M_PI / 2.0, -1.0)};
    const Contour square = halfspace_intersection(fits);  // [0,1]^2
    CHECK(coverage(square, {{0.0, 0.0}, {2.0, 2.0}}) == doctest::Approx(0.5));
    CHECK(coverage(square, square.vertices) == doctest::Approx(1.0));
    CHECK(coverage(square, {{0.5, 0.0}, {0.5, 0.5}, {1.5, 0.5}}) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("smaller tau gives an enclosing halfspace contour") {
    Rng rng(500);
    Dataset d;
    for (int i = 0; i < 3000; ++i) {
        const auto [e1, e2] = rng.normal_pair();
        d.y1.push_back(e1);
        d.y2.push_back(e2);
        d.x.push_back(0.0);
    }
    const auto inner_fits = sweep_directions(d, 0.3, 24, CovariateModel::none());
    const auto outer_fits = sweep_directions(d, 0.1, 24, CovariateModel::none());
    const Contour inner = halfspace_intersection(inner_fits);
    const Contour outer = halfspace_intersection(outer_fits);
    for (const auto& v : inner.vertices) CHECK(point_in_polygon(outer.vertices, v));
    CHECK(polygon_turn_min(inner.vertices) > 0.0);
    CHECK(polygon_turn_min(outer.vertices) > 0.0);
}

TEST_CASE("translating the cloud translates the radial contour exactly") {
    Rng rng(321);
    auto cloud = normal_cloud(rng, 5000);
    const Contour base = radial_contour(cloud, 0.7, 12);
    const Eigen::Vector2d shift(3.5, -1.25);
    for (auto& p : cloud) p += shift;
    const Contour moved = radial_contour(cloud, 0.7, 12);
    REQUIRE(moved.vertices.size() == base.vertices.size());
    for (size_t i = 0; i < base.vertices.size(); ++i)
        CHECK((moved.vertices[i] - base.vertices[i] - shift).norm() <= 1e-9);
}

}  // TEST_SUITE
