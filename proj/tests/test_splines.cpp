#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qc/errors.hpp"
#include "qc/rng.hpp"
#include "qc/splines.hpp"

using namespace qc;

TEST_SUITE("splines") {

TEST_CASE("order-1 uniform basis on [0, 2] is the interval indicator") {
    const SplineBasis b = make_basis(1, 1, {0.0, 0.5, 2.0}, KnotPlacement::Uniform);
    CHECK(b.q() == 2);
    CHECK(b.interior_knots() == std::vector<double>{1.0});
    const Eigen::VectorXd v = eval_basis(b, 0.5);
    CHECK(v(0) == doctest::Approx(1.0));
    CHECK(v(1) == doctest::Approx(0.0));
}

TEST_CASE("cubic uniform basis on [0, 1] places quarter knots") {
    std::vector<double> data;
    for (int i = 0; i <= 10; ++i) data.push_back(i / 10.0);
    const SplineBasis b = make_basis(4, 3, data, KnotPlacement::Uniform);
    CHECK(b.q() == 7);
    REQUIRE(b.interior_knots().size() == 3);
    CHECK(b.interior_knots()[0] == doctest::Approx(0.25));
    CHECK(b.interior_knots()[1] == doctest::Approx(0.5));
    CHECK(b.interior_knots()[2] == doctest::Approx(0.75));
}

TEST_CASE("quantile placement lands on the empirical terciles") {
    Rng rng(42);
    std::vector<double> data;
    for (int i = 0; i < 100; ++i) data.push_back(rng.uniform());
    const SplineBasis b = make_basis(4, 2, data, KnotPlacement::Quantile);
    REQUIRE(b.interior_knots().size() == 2);
    CHECK(b.interior_knots()[0] == doctest::Approx(oracles::sorted_quantile(data, 1.0 / 3.0)));
    CHECK(b.interior_knots()[1] == doctest::Approx(oracles::sorted_quantile(data, 2.0 / 3.0)));
}

TEST_CASE("basis values are a nonnegative partition of unity") {
    Rng rng(9);
    std::vector<double> data;
    for (int i = 0; i < 200; ++i) data.push_back(rng.uniform(-3.0, 5.0));
    for (int order : {1, 2, 3, 4}) {
        const SplineBasis b = make_basis(order, 4, data, KnotPlacement::Quantile);
        for (int t = 0; t < 1000; ++t) {
            const double x = rng.uniform(b.lo(), b.hi());
            const Eigen::VectorXd v = eval_basis(b, x);
            int nonzero = 0;
            double sum = 0.0;
            for (int j = 0; j < v.size(); ++j) {
                CHECK(v(j) >= 0.0);
                if (v(j) > 0.0) ++nonzero;
                sum += v(j);
            }
            CHECK(std::abs(sum - 1.0) <= 1e-12);
            CHECK(nonzero <= order);
        }
    }
}

TEST_CASE("each basis function vanishes outside its knot span") {
    std::vector<double> data;
    for (int i = 0; i <= 20; ++i) data.push_back(i / 20.0);
    const SplineBasis b = make_basis(3, 3, data, KnotPlacement::Uniform);
    const auto& t = b.knots();
    Rng rng(4);
    for (int trial = 0; trial < 500; ++trial) {
        const double x = rng.uniform();
        const Eigen::VectorXd v = eval_basis(b, x);
        for (int j = 0; j < b.q(); ++j) {
            const double lo = t[static_cast<size_t>(j)];
            const double hi = t[static_cast<size_t>(j + b.order())];
            if (x < lo || x > hi) CHECK(v(j) == 0.0);
        }
    }
}

TEST_CASE("greville weights reproduce the identity map") {
    Rng rng(31);
    std::vector<double> data;
    for (int i = 0; i < 150; ++i) data.push_back(rng.uniform(2.0, 9.0));
    for (int order : {2, 3, 4, 5}) {
        const SplineBasis b = make_basis(order, 3, data, KnotPlacement::Uniform);
        const std::vector<double> g = b.greville();
        REQUIRE(static_cast<int>(g.size()) == b.q());
        for (int t = 0; t < 200; ++t) {
            const double x = rng.uniform(b.lo(), b.hi());
            const Eigen::VectorXd v = eval_basis(b, x);
            double rep = 0.0;
            for (int j = 0; j < b.q(); ++j) rep += g[static_cast<size_t>(j)] * v(j);
            CHECK(std::abs(rep - x) <= 1e-10);
        }
    }
}

TEST_CASE("evaluation matches the recursive oracle") {
    std::vector<double> data;
    for (int i = 0; i <= 4; ++i) data.push_back(i / 4.0);
    const SplineBasis b = make_basis(4, 3, data, KnotPlacement::Uniform);
    const auto& t = b.knots();
    Rng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const double x = trial == 0 ? 0.0 : trial == 1 ? 1.0 : trial == 2 ? 0.4 : rng.uniform();
        const Eigen::VectorXd v = eval_basis(b, x);
        for (int j = 0; j < b.q(); ++j)
            CHECK(std::abs(v(j) - oracles::naive_bspline(t, j, b.order(), x)) <= 1e-12);
    }
}

TEST_CASE("oracle agreement holds across orders and knot layouts") {
    Rng rng(123);
    std::vector<double> data;
    for (int i = 0; i < 80; ++i) data.push_back(rng.uniform(-1.0, 3.0));
    for (int order : {1, 2, 3, 4}) {
        for (int interior : {0, 2, 5}) {
            const SplineBasis b = make_basis(order, interior, data, KnotPlacement::Quantile);
            const auto& t = b.knots();
            for (int trial = 0; trial < 60; ++trial) {
                const double x = rng.uniform(b.lo(), b.hi());
                const Eigen::VectorXd v = eval_basis(b, x);
                for (int j = 0; j < b.q(); ++j)
                    CHECK(std::abs(v(j) - oracles::naive_bspline(t, j, order, x)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("out-of-range evaluation and degenerate data are rejected") {
    const SplineBasis b = make_basis(4, 2, {0.0, 0.3, 0.7, 1.0}, KnotPlacement::Uniform);
    CHECK_THROWS_AS(eval_basis(b, -0.01), OutOfDomain);
    CHECK_THROWS_AS(eval_basis(b, 1.01), OutOfDomain);
    CHECK_THROWS_AS(make_basis(4, 3, std::vector<double>(50, 2.5), KnotPlacement::Quantile),
                    DegenerateData);
}

TEST_CASE("tied data collapses colliding quantile knots") {
    std::vector<double> data(97, 0.5);
    data.push_back(0.0);
    data.push_back(1.0);
    const SplineBasis b = make_basis(4, 5, data, KnotPlacement::Quantile);
    CHECK(b.collapsed_knots() > 0);
    CHECK(b.q() < 9);  // 5 interior + 4 would be 9 without collapsing
    const Eigen::VectorXd v = eval_basis(b, 0.5);
    CHECK(std::abs(v.sum() - 1.0) <= 1e-12);
}

TEST_CASE("construction validates its arguments") {
    CHECK_THROWS_AS(SplineBasis(0, 0.0, 1.0, {}), InvalidArgument);
    CHECK_THROWS_AS(SplineBasis(4, 1.0, 1.0, {}), InvalidArgument);
    CHECK_THROWS_AS(SplineBasis(4, 0.0, 1.0, {0.5, 0.5}), InvalidArgument);
    CHECK_THROWS_AS(SplineBasis(4, 0.0, 1.0, {1.5}), InvalidArgument);
}

}  // TEST_SUITE
