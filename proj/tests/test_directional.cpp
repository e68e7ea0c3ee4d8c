#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qc/directional.hpp"
#include "qc/errors.hpp"
#include "qc/rng.hpp"
#include "qc/stats.hpp"
#include "qc/synthetic.hpp"

using namespace qc;

namespace {

Dataset sample_data(Rng& rng, int n) {
    Dataset d;
    for (int i = 0; i < n; ++i) {
        d.x.push_back(rng.uniform());
        const auto [e1, e2] = rng.normal_pair();
        d.y1.push_back(d.x.back() + e1);
        d.y2.push_back(d.x.back() + 0.5 * e1 + 0.8 * e2);
    }
    return d;
}

}  // namespace

TEST_SUITE("directional") {

TEST_CASE("gamma is the quarter-turn of u") {
    const Direction e1 = Direction::from_angle(0.0);
    CHECK(gamma_of(e1).isApprox(Eigen::Vector2d(0.0, 1.0), 1e-12));
    const Direction e2 = Direction::from_angle(M_PI / 2.0);
    CHECK(gamma_of(e2).isApprox(Eigen::Vector2d(-1.0, 0.0), 1e-12));

    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const Direction u = Direction::from_angle(rng.uniform(0.0, 2.0 * M_PI));
        const Eigen::Vector2d g = gamma_of(u);
        CHECK(std::abs(g.dot(u.u)) <= 1e-12);
        CHECK(std::abs(g.norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("an identically zero response gives the zero fit") {
    Dataset d;
    Rng rng(15);
    for (int i = 0; i < 25; ++i) {
        d.y1.push_back(rng.normal());
        d.y2.push_back(0.0);
        d.x.push_back(rng.uniform());
    }
    const DirectionalFit f =
        fit_directional(d, Direction::from_angle(M_PI / 2.0), 0.5, CovariateModel::linear());
    CHECK(f.a == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.b_y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.b_x(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.objective == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("the first-axis direction relates to the single-output fit") {
    Rng rng(21);
    const Dataset d = sample_data(rng, 80);
    const double tau = 0.35;
    const DirectionalFit free_fit =
        fit_directional(d, Direction::from_angle(0.0), tau, CovariateModel::linear());

    QrProblem constrained;
    constrained.design.resize(80, 2);
    constrained.response.resize(80);
    for (int i = 0; i < 80; ++i) {
        constrained.design(i, 0) = 1.0;
        constrained.design(i, 1) = d.x[static_cast<size_t>(i)];
        constrained.response(i) = d.y1[static_cast<size_t>(i)];
    }
    constrained.tau = tau;
    const QrSolution marginal = solve(constrained);

    // The free fit has one extra regressor, so it can only do better.
    CHECK(free_fit.objective <= marginal.objective + 1e-9);
    if (std::abs(free_fit.b_y) <= 1e-12)
        CHECK(free_fit.objective == doctest::Approx(marginal.objective).epsilon(1e-9));
}

TEST_CASE("directional objective matches the subset-enumeration oracle") {
    Rng rng(99);
    const Dataset d = sample_data(rng, 15);
    const Direction u = Direction::from_angle(1.0);
    const double tau = 0.3;
    const DirectionalFit f = fit_directional(d, u, tau, CovariateModel::linear());

    Eigen::MatrixXd X(15, 3);
    Eigen::VectorXd y(15);
    const Eigen::Vector2d g = gamma_of(u);
    for (int i = 0; i < 15; ++i) {
        const Eigen::Vector2d yi(d.y1[static_cast<size_t>(i)], d.y2[static_cast<size_t>(i)]);
        X(i, 0) = 1.0;
        X(i, 1) = g.dot(yi);
        X(i, 2) = d.x[static_cast<size_t>(i)];
        y(i) = u.u.dot(yi);
    }
    CHECK(std::abs(f.objective - oracles::brute_force_objective(X, y, tau)) <= 1e-9);
    CHECK(f.optimal());
}

TEST_CASE("sweep covers the uniform angle grid") {
    Rng rng(61);
    const Dataset d = sample_data(rng, 40);
    const std::vector<DirectionalFit> fits = sweep_directions(d, 0.3, 4, CovariateModel::linear());
    REQUIRE(fits.size() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK(fits[static_cast<size_t>(k)].direction.theta ==
              doctest::Approx(k * M_PI / 2.0).epsilon(1e-12));
        CHECK(fits[static_cast<size_t>(k)].optimal());
    }
}

TEST_CASE("swapping the responses mirrors the sweep") {
    Rng rng(8);
    const Dataset d = sample_data(rng, 60);
    const int n_dir = 8;  // multiple of 4 so the mirrored grid is the same grid
    const std::vector<DirectionalFit> sweep = sweep_directions(d, 0.25, n_dir, CovariateModel::linear());
    const std::vector<DirectionalFit> swapped =
        sweep_directions(d.swapped(), 0.25, n_dir, CovariateModel::linear());

    for (const auto& f : sweep) {
        // Direction (cos t, sin t) on the original data corresponds to
        // (sin t, cos t) on the swapped data, i.e. theta' = pi/2 - theta.
        double target = M_PI / 2.0 - f.direction.theta;
        target = std::fmod(target + 2.0 * M_PI, 2.0 * M_PI);
        const int k = static_cast<int>(std::lround(target * n_dir / (2.0 * M_PI))) % n_dir;
        CHECK(swapped[static_cast<size_t>(k)].objective ==
              doctest::Approx(f.objective).epsilon(1e-9));
    }
}

TEST_CASE("fits on a centered normal cloud recover the directional quantile") {
    Rng rng(1234);
    Dataset d;
    for (int i = 0; i < 20000; ++i) {
        const auto [e1, e2] = rng.normal_pair();
        d.y1.push_back(e1);
        d.y2.push_back(e2);
        d.x.push_back(0.0);  // unused by the no-covariate model
    }
    const double tau = 0.2;
    const std::vector<DirectionalFit> fits = sweep_directions(d, tau, 8, CovariateModel::none());
    const double want = normal_quantile(tau);
    for (const auto& f : fits) {
        CHECK(f.b_x.size() == 0);
        CHECK(std::abs(f.a - want) <= 0.03);
        CHECK(f.optimal());
    }
}

TEST_CASE("scaling both responses scales the objective") {
    Rng rng(44);
    const Dataset base = sample_data(rng, 50);
    Dataset scaled = base;
    const double c = 3.25;
    for (size_t i = 0; i < scaled.n(); ++i) {
        scaled.y1[i] *= c;
        scaled.y2[i] *= c;
    }
    const Direction u = Direction::from_angle(2.1);
    const DirectionalFit f1 = fit_directional(base, u, 0.4, CovariateModel::linear());
    const DirectionalFit f2 = fit_directional(scaled, u, 0.4, CovariateModel::linear());
    CHECK(f2.objective == doctest::Approx(c * f1.objective).epsilon(1e-9));
}

TEST_CASE("spline covariate fits absorb the intercept into the basis") {
    Rng rng(100);
    const Dataset d = sample_data(rng, 200);
    const SplineBasis basis = make_basis(4, 2, d.x, KnotPlacement::Quantile);
    const DirectionalFit f =
        fit_directional(d, Direction::from_angle(0.7), 0.3, CovariateModel::spline(basis));
    CHECK(f.a == 0.0);
    CHECK(f.b_x.size() == basis.q());
    CHECK(f.kind == CovariateKind::Spline);
    CHECK(f.optimal());

    // offset_at must agree with the stored coefficients.
    const double x0 = 0.5;
    const Eigen::VectorXd pi = eval_basis(basis, x0);
    CHECK(f.offset_at(x0) == doctest::Approx(pi.dot(f.b_x)).epsilon(1e-12));
}

TEST_CASE("a constant covariate makes every linear direction fail") {
    Dataset d;
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        d.y1.push_back(rng.normal());
        d.y2.push_back(rng.normal());
        d.x.push_back(7.0);
    }
    try {
        sweep_directions(d, 0.3, 4, CovariateModel::linear());
        FAIL("expected SweepError");
    } catch (const SweepError& e) {
        CHECK(e.failed.size() == 4);
        CHECK(e.partial_fits.empty());
    }
}

TEST_CASE("residual sign drives the fit's counting") {
    Rng rng(71);
    const Dataset d = sample_data(rng, 60);
    const DirectionalFit f =
        fit_directional(d, Direction::from_angle(0.3), 0.25, CovariateModel::linear());
    int neg = 0;
    for (size_t i = 0; i < d.n(); ++i)
        if (f.residual(d.y1[i], d.y2[i], d.x[i]) < -1e-9) ++neg;
    CHECK(neg <= f.neg_count + f.zero_count);
    CHECK(f.neg_count + f.zero_count + f.pos_count == 60);
}

}  // TEST_SUITE
