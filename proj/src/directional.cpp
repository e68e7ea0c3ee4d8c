#include "qc/directional.hpp"

#include <cmath>

namespace qc {

Direction Direction::from_angle(double theta) {
    const double two_pi = 2.0 * M_PI;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    Direction d;
    d.theta = t;
    d.u = Eigen::Vector2d(std::cos(t), std::sin(t));
    return d;
}

Eigen::Vector2d gamma_of(const Direction& dir) {
    return Eigen::Vector2d(-dir.u[1], dir.u[0]);
}

const SplineBasis& CovariateModel::basis() const {
    if (!basis_) throw InvalidArgument("covariate model has no spline basis");
    return *basis_;
}

int CovariateModel::dim() const {
    switch (kind_) {
        case CovariateKind::None: return 0;
        case CovariateKind::Linear: return 1;
        case CovariateKind::Spline: return basis_->q();
    }
    return 0;
}

Eigen::VectorXd CovariateModel::regressors(double x) const {
    switch (kind_) {
        case CovariateKind::None: return Eigen::VectorXd(0);
        case CovariateKind::Linear: {
            Eigen::VectorXd r(1);
            r[0] = x;
            return r;
        }
        case CovariateKind::Spline: return eval_basis(*basis_, x);
    }
    return Eigen::VectorXd(0);
}

double DirectionalFit::offset_at(double x0) const {
    switch (kind) {
        case CovariateKind::None: return a;
        case CovariateKind::Linear: return a + b_x[0] * x0;
        case CovariateKind::Spline: return a + b_x.dot(eval_basis(*basis, x0));
    }
    return a;
}

double DirectionalFit::residual(double y1, double y2, double x) const {
    const Eigen::Vector2d y(y1, y2);
    const Eigen::Vector2d g = gamma_of(direction);
    return direction.u.dot(y) - b_y * g.dot(y) - offset_at(x);
}

bool DirectionalFit::optimal() const {
    const double ntau = static_cast<double>(n) * tau;
    return static_cast<double>(neg_count) <= ntau + 1e-9 &&
           ntau <= static_cast<double>(neg_count + zero_count) + 1e-9;
}

DirectionalFit fit_directional(const Dataset& data, const Direction& u, double tau,
                               const CovariateModel& model, const std::vector<int>& basis_hint) {
    data.validate();
    const long n = static_cast<long>(data.n());
    const int cov_dim = model.dim();
    if (n < cov_dim + 3)
        throw InvalidArgument("need at least " + std::to_string(cov_dim + 3) + " rows for this model");

    // Spline model: partition of unity plays the intercept role.
    const bool explicit_intercept = model.kind() != CovariateKind::Spline;
    const int p = (explicit_intercept ? 2 : 1) + cov_dim;

    const Eigen::Vector2d g = gamma_of(u);

    QrProblem prob;
    prob.tau = tau;
    prob.design.resize(n, p);
    prob.response.resize(n);
    for (long i = 0; i < n; ++i) {
        const double y1 = data.y1[static_cast<size_t>(i)];
        const double y2 = data.y2[static_cast<size_t>(i)];
        const double xi = data.x[static_cast<size_t>(i)];
        prob.response[i] = u.u[0] * y1 + u.u[1] * y2;
        int col = 0;
        if (explicit_intercept) prob.design(i, col++) = 1.0;
        prob.design(i, col++) = g[0] * y1 + g[1] * y2;
        if (cov_dim > 0) prob.design.row(i).segment(col, cov_dim) = model.regressors(xi).transpose();
    }

    QrSolution sol = solve(prob, basis_hint);

    DirectionalFit fit;
    fit.direction = u;
    fit.tau = tau;
    fit.kind = model.kind();
    if (model.kind() == CovariateKind::Spline) fit.basis = model.basis();
    int col = 0;
    fit.a = explicit_intercept ? sol.coefficients[col++] : 0.0;
    fit.b_y = sol.coefficients[col++];
    fit.b_x = sol.coefficients.segment(col, cov_dim);
    fit.objective = sol.objective;
    fit.neg_count = sol.neg_count;
    fit.zero_count = sol.zero_count;
    fit.pos_count = sol.pos_count;
    fit.n = n;
    fit.basis_rows = std::move(sol.basis_rows);
    return fit;
}

std::vector<DirectionalFit> sweep_directions(const Dataset& data, double tau, int n_dir,
                                             const CovariateModel& model) {
    if (n_dir < 3) throw InvalidArgument("need at least 3 directions");

    std::vector<DirectionalFit> fits;
    fits.reserve(static_cast<size_t>(n_dir));
    std::vector<std::pair<double, std::string>> failures;
    std::vector<int> hint;

    for (int k = 0; k < n_dir; ++k) {
        const double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n_dir);
        try {
            DirectionalFit fit = fit_directional(data, Direction::from_angle(theta), tau, model, hint);
            hint = fit.basis_rows;
            fits.push_back(std::move(fit));
        } catch (const Error& e) {
            failures.emplace_back(theta, e.what());
        }
    }

    if (!failures.empty()) {
        std::string msg = "sweep failed at " + std::to_string(failures.size()) + "/" +
                          std::to_string(n_dir) + " directions (first at theta=" +
                          std::to_string(failures.front().first) + ": " + failures.front().second + ")";
        throw SweepError(msg, std::move(failures), std::move(fits));
    }
    return fits;
}

}  // namespace qc
