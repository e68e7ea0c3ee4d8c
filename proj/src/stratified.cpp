#include "qc/stratified.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "qc/errors.hpp"
#include "qc/qr_core.hpp"
#include "qc/rng.hpp"

namespace qc {

namespace {

std::string tau_tag(double tau) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", tau);
    return std::string("at tau=") + buf + ": ";
}

// Runs one grid-level regression, rethrowing solver errors with the level
// attached so a 400-fit run names the offending tau.
QrSolution solve_at(const Eigen::MatrixXd& design, const Eigen::VectorXd& response, double tau,
                    const std::vector<int>& hint) {
    QrProblem prob;
    prob.design = design;
    prob.response = response;
    prob.tau = tau;
    try {
        return hint.empty() ? solve(prob) : solve(prob, hint);
    } catch (const RankDeficient& e) {
        throw RankDeficient(tau_tag(tau) + e.what());
    } catch (const NumericalFailure& e) {
        throw NumericalFailure(tau_tag(tau) + e.what());
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(tau_tag(tau) + e.what());
    }
}

FitRecord to_record(const QrSolution& s) {
    FitRecord r;
    r.coef = s.coefficients;
    r.objective = s.objective;
    r.neg_count = s.neg_count;
    r.zero_count = s.zero_count;
    r.pos_count = s.pos_count;
    return r;
}

// Fits one family (fixed design, fixed response) across the whole grid,
// chaining warm starts upward in tau.
std::vector<FitRecord> fit_family(const Eigen::MatrixXd& design, const Eigen::VectorXd& response,
                                  const TauGrid& grid) {
    std::vector<FitRecord> out;
    out.reserve(grid.levels.size());
    std::vector<int> hint;
    for (double tau : grid.levels) {
        QrSolution s = solve_at(design, response, tau, hint);
        hint = s.basis_rows;
        out.push_back(to_record(s));
    }
    return out;
}

void common_checks(const Dataset& data, const TauGrid& grid) {
    data.validate();
    grid.validate();
    if (data.n() < 10) throw InvalidArgument("stratified fit needs at least 10 rows");
}

std::vector<double> sorted_x(const Dataset& data) {
    std::vector<double> xs = data.x;
    std::sort(xs.begin(), xs.end());
    return xs;
}

void check_domain(const StratifiedModel& m, double x) {
    if (!std::isfinite(x)) throw InvalidArgument("covariate value must be finite");
    if (m.setting == Setting::Two && !m.basis->in_domain(x))
        throw OutOfDomain("x=" + std::to_string(x) + " outside the fitted spline domain [" +
                          std::to_string(m.basis->lo()) + ", " + std::to_string(m.basis->hi()) + "]");
}

struct GridPos {
    int k;
    double frac;
};

GridPos locate(const std::vector<double>& levels, double tau) {
    const int g = static_cast<int>(levels.size());
    auto it = std::upper_bound(levels.begin(), levels.end(), tau);
    int k = static_cast<int>(it - levels.begin()) - 1;
    if (k < 0) k = 0;
    if (k >= g - 1) return {g - 1, 0.0};
    return {k, (tau - levels[k]) / (levels[k + 1] - levels[k])};
}

double interp_sorted(const std::vector<double>& levels, const std::vector<double>& vals,
                     double tau) {
    const GridPos p = locate(levels, tau);
    if (p.frac == 0.0) return vals[p.k];
    return (1.0 - p.frac) * vals[p.k] + p.frac * vals[p.k + 1];
}

// Interpolated value of the sorted rearrangement of `scratch` without a full
// sort: order statistics k and k+1 via nth_element. Permutes scratch.
double interp_order_stat(const std::vector<double>& levels, std::vector<double>& scratch,
                         double tau) {
    const GridPos p = locate(levels, tau);
    auto kth = scratch.begin() + p.k;
    std::nth_element(scratch.begin(), kth, scratch.end());
    const double vk = *kth;
    if (p.frac == 0.0) return vk;
    const double vk1 = *std::min_element(kth + 1, scratch.end());
    return (1.0 - p.frac) * vk + p.frac * vk1;
}

}  // namespace

TauGrid TauGrid::evenly_spaced(int g) {
    if (g < 1) throw InvalidArgument("grid size must be positive");
    TauGrid grid;
    grid.levels.reserve(static_cast<size_t>(g));
    for (int k = 1; k <= g; ++k)
        grid.levels.push_back(static_cast<double>(k) / static_cast<double>(g + 1));
    return grid;
}

void TauGrid::validate() const {
    if (levels.empty()) throw InvalidArgument("empty tau grid");
    if (!(levels.front() > 0.0) || !(levels.back() < 1.0))
        throw InvalidArgument("tau grid must stay strictly inside (0, 1)");
    for (size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i] > levels[i - 1])) throw InvalidArgument("tau grid must be strictly increasing");
    if (levels.size() > 2) {
        const double step = levels[1] - levels[0];
        for (size_t i = 2; i < levels.size(); ++i)
            if (std::abs((levels[i] - levels[i - 1]) - step) > 1e-9)
                throw InvalidArgument("tau grid must be evenly spaced");
    }
}

StratifiedModel fit_setting1(const Dataset& data, const TauGrid& grid) {
    common_checks(data, grid);
    const long n = static_cast<long>(data.n());

    Eigen::MatrixXd marg(n, 2);
    Eigen::MatrixXd cond(n, 3);
    Eigen::VectorXd y1(n), y2(n);
    for (long i = 0; i < n; ++i) {
        marg(i, 0) = 1.0;
        marg(i, 1) = data.x[static_cast<size_t>(i)];
        cond(i, 0) = 1.0;
        cond(i, 1) = data.x[static_cast<size_t>(i)];
        cond(i, 2) = data.y1[static_cast<size_t>(i)];
        y1(i) = data.y1[static_cast<size_t>(i)];
        y2(i) = data.y2[static_cast<size_t>(i)];
    }

    StratifiedModel m;
    m.setting = Setting::One;
    m.grid = grid;
    m.marginal = fit_family(marg, y1, grid);
    m.conditional = fit_family(cond, y2, grid);
    m.n = n;
    m.x_sorted = sorted_x(data);
    m.y1_name = data.y1_name;
    m.y2_name = data.y2_name;
    m.x_name = data.x_name;
    return m;
}

StratifiedModel fit_setting2(const Dataset& data, const TauGrid& grid, const SplineBasis& basis) {
    common_checks(data, grid);
    const long n = static_cast<long>(data.n());
    const int q = basis.q();
    if (2 * q > n)
        throw RankDeficient("conditional design needs " + std::to_string(2 * q) +
                            " columns but only " + std::to_string(n) + " rows are available");

    Eigen::MatrixXd marg(n, q);
    Eigen::MatrixXd cond(n, 2 * q);
    Eigen::VectorXd y1(n), y2(n);
    for (long i = 0; i < n; ++i) {
        const double xi = data.x[static_cast<size_t>(i)];
        if (!basis.in_domain(xi))
            throw OutOfDomain("covariate row " + std::to_string(i) + " outside the spline domain");
        const Eigen::VectorXd pi = eval_basis(basis, xi);
        marg.row(i) = pi.transpose();
        cond.row(i).head(q) = pi.transpose();
        cond.row(i).tail(q) = data.y1[static_cast<size_t>(i)] * pi.transpose();
        y1(i) = data.y1[static_cast<size_t>(i)];
        y2(i) = data.y2[static_cast<size_t>(i)];
    }

    StratifiedModel m;
    m.setting = Setting::Two;
    m.grid = grid;
    m.basis = basis;
    m.marginal = fit_family(marg, y1, grid);
    m.conditional = fit_family(cond, y2, grid);
    m.n = n;
    m.x_sorted = sorted_x(data);
    m.y1_name = data.y1_name;
    m.y2_name = data.y2_name;
    m.x_name = data.x_name;
    return m;
}

std::vector<double> grid_predictions(const StratifiedModel& model, const Which& which, double x) {
    check_domain(model, x);
    const auto& fits = which.kind == Which::Marginal ? model.marginal : model.conditional;
    const int g = model.grid.size();
    std::vector<double> out(static_cast<size_t>(g));

    if (model.setting == Setting::One) {
        for (int k = 0; k < g; ++k) {
            const Eigen::VectorXd& c = fits[static_cast<size_t>(k)].coef;
            out[static_cast<size_t>(k)] =
                which.kind == Which::Marginal ? c(0) + c(1) * x : c(0) + c(1) * x + c(2) * which.y1;
        }
    } else {
        const Eigen::VectorXd pi = eval_basis(*model.basis, x);
        const int q = model.basis->q();
        for (int k = 0; k < g; ++k) {
            const Eigen::VectorXd& c = fits[static_cast<size_t>(k)].coef;
            out[static_cast<size_t>(k)] =
                which.kind == Which::Marginal
                    ? pi.dot(c)
                    : pi.dot(c.head(q)) + which.y1 * pi.dot(c.tail(q));
        }
    }
    if (model.rearranged) std::sort(out.begin(), out.end());
    return out;
}

double predict_quantile(const StratifiedModel& model, const Which& which, double x, double tau) {
    if (tau < model.grid.min() || tau > model.grid.max())
        throw ExtrapolationInTau("tau=" + std::to_string(tau) + " outside the fitted grid [" +
                                 std::to_string(model.grid.min()) + ", " +
                                 std::to_string(model.grid.max()) + "]");
    const std::vector<double> vals = grid_predictions(model, which, x);
    return interp_sorted(model.grid.levels, vals, tau);
}

StratifiedModel rearrange(const StratifiedModel& model, const std::vector<ProbePoint>& probes) {
    StratifiedModel out = model;
    out.rearranged = true;
    for (const auto& p : probes) {
        const Which w = p.y1 ? Which::conditional(*p.y1) : Which::marginal();
        const std::vector<double> vals = grid_predictions(out, w, p.x);
        if (!std::is_sorted(vals.begin(), vals.end()))
            throw NumericalFailure("rearranged predictions not monotone at a probe point");
    }
    return out;
}

std::vector<Eigen::Vector2d> simulate_conditional(const StratifiedModel& model, double x,
                                                  long n_draws, std::uint64_t seed) {
    if (!model.rearranged) throw InvalidArgument("simulate_conditional needs a rearranged model");
    if (n_draws < 1) throw InvalidArgument("n_draws must be positive");
    check_domain(model, x);

    const auto& levels = model.grid.levels;
    const int g = model.grid.size();
    const std::vector<double> marg = grid_predictions(model, Which::marginal(), x);  // sorted

    // Conditional grid value at (x, y1) is A[k] + B[k] * y1; the y1-dependent
    // sort order forces per-draw order statistics.
    std::vector<double> A(static_cast<size_t>(g)), B(static_cast<size_t>(g));
    if (model.setting == Setting::One) {
        for (int k = 0; k < g; ++k) {
            const Eigen::VectorXd& c = model.conditional[static_cast<size_t>(k)].coef;
            A[static_cast<size_t>(k)] = c(0) + c(1) * x;
            B[static_cast<size_t>(k)] = c(2);
        }
    } else {
        const Eigen::VectorXd pi = eval_basis(*model.basis, x);
        const int q = model.basis->q();
        for (int k = 0; k < g; ++k) {
            const Eigen::VectorXd& c = model.conditional[static_cast<size_t>(k)].coef;
            A[static_cast<size_t>(k)] = pi.dot(c.head(q));
            B[static_cast<size_t>(k)] = pi.dot(c.tail(q));
        }
    }

    Rng rng(seed);
    const double lo = levels.front();
    const double hi = levels.back();
    std::vector<Eigen::Vector2d> out;
    out.reserve(static_cast<size_t>(n_draws));
    std::vector<double> scratch(static_cast<size_t>(g));
    for (long d = 0; d < n_draws; ++d) {
        const double tau1 = rng.uniform(lo, hi);
        const double y1 = interp_sorted(levels, marg, tau1);
        const double tau2 = rng.uniform(lo, hi);
        for (int k = 0; k < g; ++k)
            scratch[static_cast<size_t>(k)] = A[static_cast<size_t>(k)] + B[static_cast<size_t>(k)] * y1;
        const double y2 = interp_order_stat(levels, scratch, tau2);
        out.emplace_back(y1, y2);
    }
    return out;
}

double joint_cdf(const StratifiedModel& model, double x, const Eigen::Vector2d& query,
                 long n_draws, std::uint64_t seed) {
    const std::vector<Eigen::Vector2d> cloud = simulate_conditional(model, x, n_draws, seed);
    long hits = 0;
    for (const auto& p : cloud)
        if (p.x() <= query.x() && p.y() <= query.y()) ++hits;
    return static_cast<double>(hits) / static_cast<double>(cloud.size());
}

}  // namespace qc
