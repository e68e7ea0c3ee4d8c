#ifndef QC_DIRECTIONAL_HPP
#define QC_DIRECTIONAL_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qc/dataset.hpp"
#include "qc/errors.hpp"
#include "qc/qr_core.hpp"
#include "qc/splines.hpp"

namespace qc {

// Unit direction on the circle.
struct Direction {
    double theta = 0.0;   // [0, 2pi)
    Eigen::Vector2d u;    // (cos theta, sin theta)

    static Direction from_angle(double theta);
};

// Orthogonal completion of u in 2D: u rotated by +90 degrees.
Eigen::Vector2d gamma_of(const Direction& dir);

enum class CovariateKind { None, Linear, Spline };

// How the covariate enters the directional model: not at all, as a single
// linear column, or through its B-spline basis values. For the spline kind
// the basis partition of unity supplies the intercept, so no separate
// intercept column is added (the design would be singular otherwise).
class CovariateModel {
public:
    static CovariateModel none() { return CovariateModel(CovariateKind::None, std::nullopt); }
    static CovariateModel linear() { return CovariateModel(CovariateKind::Linear, std::nullopt); }
    static CovariateModel spline(SplineBasis basis) {
        return CovariateModel(CovariateKind::Spline, std::move(basis));
    }

    CovariateKind kind() const { return kind_; }
    const SplineBasis& basis() const;

    // Number of covariate regressors (0, 1, or q).
    int dim() const;

    // The covariate block of the design row at x.
    Eigen::VectorXd regressors(double x) const;

private:
    CovariateModel(CovariateKind kind, std::optional<SplineBasis> basis)
        : kind_(kind), basis_(std::move(basis)) {}
    CovariateKind kind_;
    std::optional<SplineBasis> basis_;
};

// One directional regression quantile: the hyperplane
//   { y : u'y - b_y * (gamma_u'y) = a + b_x' * cov(x) }
// minimizing the tau check loss of u'Y against [1, gamma_u'Y, cov(X)].
struct DirectionalFit {
    Direction direction;
    double tau = 0.5;
    double a = 0.0;           // intercept; identically 0 for the spline model
    double b_y = 0.0;
    Eigen::VectorXd b_x;      // length 0 (none), 1 (linear), or q (spline)
    CovariateKind kind = CovariateKind::Linear;
    std::optional<SplineBasis> basis;  // spline kind only

    double objective = 0.0;
    int neg_count = 0, zero_count = 0, pos_count = 0;
    long n = 0;
    std::vector<int> basis_rows;

    // a + b_x' * cov(x0); the hyperplane offset at covariate value x0.
    double offset_at(double x0) const;

    // Directional residual u'y - b_y * gamma'y - offset for one point.
    double residual(double y1, double y2, double x) const;

    bool optimal() const;
};

DirectionalFit fit_directional(const Dataset& data, const Direction& u, double tau,
                               const CovariateModel& model,
                               const std::vector<int>& basis_hint = {});

// Per-direction failures collected over a sweep; successful fits ride along.
class SweepError : public Error {
public:
    SweepError(const std::string& msg, std::vector<std::pair<double, std::string>> failures,
               std::vector<DirectionalFit> partial)
        : Error(msg), failed(std::move(failures)), partial_fits(std::move(partial)) {}
    std::vector<std::pair<double, std::string>> failed;  // (theta, reason)
    std::vector<DirectionalFit> partial_fits;
};

// Fits at theta_k = 2 pi k / n_dir, k = 0..n_dir-1, warm-starting each fit
// from its predecessor. Throws SweepError if any direction fails.
std::vector<DirectionalFit> sweep_directions(const Dataset& data, double tau, int n_dir,
                                             const CovariateModel& model);

}  // namespace qc

#endif  // QC_DIRECTIONAL_HPP
