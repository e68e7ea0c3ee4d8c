#include "qc/qr_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "qc/errors.hpp"
#include "qc/rng.hpp"

namespace qc {

double check_loss(double z, double tau) {
    return z >= 0.0 ? z * tau : z * (tau - 1.0);
}

void QrProblem::validate() const {
    const auto n = design.rows();
    const auto p = design.cols();
    if (p < 1) throw InvalidArgument("design needs at least one column");
    if (n < p) throw InvalidArgument("need at least as many rows as columns");
    if (response.size() != n) throw InvalidArgument("response length != design rows");
    if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("tau must lie in (0,1)");
    if (!design.allFinite() || !response.allFinite())
        throw InvalidArgument("design/response contain NaN or Inf");
}

namespace {

struct SimplexResult {
    Eigen::VectorXd beta;       // coefficients in SCALED column units
    std::vector<int> basis;
    int iterations = 0;
    bool stalled = false;       // hit the pivot cap
};

// Core loop on a column-scaled design. Returns either an optimal vertex or
// a stall flag; the caller decides on perturbation restarts.
SimplexResult simplex_pass(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           double tau, std::vector<int> basis, int max_iter) {
    const auto n = X.rows();
    const auto p = X.cols();

    SimplexResult out;
    out.basis = std::move(basis);

    Eigen::MatrixXd B(p, p);
    Eigen::VectorXd beta(p), r(n), v(p), sigma(n);
    std::vector<char> in_basis(static_cast<size_t>(n), 0);
    std::vector<std::pair<double, int>> crossings;
    crossings.reserve(static_cast<size_t>(n));

    int degenerate_streak = 0;
    bool bland = false;

    for (int iter = 0;; ++iter) {
        if (iter >= max_iter) {
            out.beta = beta;
            out.iterations = iter;
            out.stalled = true;
            return out;
        }

        for (Eigen::Index k = 0; k < p; ++k) B.row(k) = X.row(out.basis[static_cast<size_t>(k)]);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);

        Eigen::VectorXd yb(p);
        for (Eigen::Index k = 0; k < p; ++k) yb[k] = y[out.basis[static_cast<size_t>(k)]];
        beta = lu.solve(yb);
        r = y - X * beta;

        std::fill(in_basis.begin(), in_basis.end(), 0);
        for (int b : out.basis) in_basis[static_cast<size_t>(b)] = 1;

        // v = sum over nonbasic rows of c_i x_i, with c_i = tau on the
        // nonnegative-residual side and tau-1 below.
        v.setZero();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (in_basis[static_cast<size_t>(i)]) continue;
            const double c = r[i] >= 0.0 ? tau : tau - 1.0;
            v += c * X.row(i).transpose();
        }

        // W = B^{-1}; column k is the move that perturbs only basis row k.
        Eigen::MatrixXd W = lu.inverse();
        Eigen::VectorXd s = W.transpose() * v;

        // Edge reduced costs: push basis residual k positive or negative.
        int best_k = -1;
        bool best_push_neg = false;
        double best_g = -1e-30;
        for (Eigen::Index k = 0; k < p; ++k) {
            const double gtol = 1e-9 * (1.0 + std::abs(s[k]));
            const double g_pos = tau + s[k];
            const double g_neg = (1.0 - tau) - s[k];
            if (bland) {
                if (g_pos < -gtol) { best_k = static_cast<int>(k); best_push_neg = false; best_g = g_pos; break; }
                if (g_neg < -gtol) { best_k = static_cast<int>(k); best_push_neg = true; best_g = g_neg; break; }
            } else {
                if (g_pos < -gtol && g_pos < best_g) { best_k = static_cast<int>(k); best_push_neg = false; best_g = g_pos; }
                if (g_neg < -gtol && g_neg < best_g) { best_k = static_cast<int>(k); best_push_neg = true; best_g = g_neg; }
            }
        }

        if (best_k < 0) {  // all edges nondecreasing: vertex optimal
            out.beta = beta;
            out.iterations = iter;
            return out;
        }

        // Move along d = -+ W.col(best_k); sigma_i = d(residual_i)/dt.
        const Eigen::VectorXd w = W.col(best_k);
        if (best_push_neg) {
            sigma = -(X * w);
        } else {
            sigma = X * w;
        }

        // Breakpoints where a nonbasic residual changes sign. Each crossing
        // raises the objective slope by |sigma_i|.
        crossings.clear();
        const double sig_tol = 1e-13;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (in_basis[static_cast<size_t>(i)]) continue;
            if (r[i] >= 0.0 && sigma[i] < -sig_tol) {
                crossings.emplace_back(-r[i] / sigma[i], static_cast<int>(i));
            } else if (r[i] < 0.0 && sigma[i] > sig_tol) {
                crossings.emplace_back(-r[i] / sigma[i], static_cast<int>(i));
            }
        }
        std::sort(crossings.begin(), crossings.end());

        double slope = best_g;
        int entering = -1;
        double step = 0.0;
        for (const auto& [t, i] : crossings) {
            slope += std::abs(sigma[i]);
            if (slope >= 0.0) {
                entering = i;
                step = t;
                break;
            }
        }
        if (entering < 0) {
            // Objective of a quantile LP is bounded below; reaching here
            // means the slope accounting lost to round-off.
            out.beta = beta;
            out.iterations = iter;
            out.stalled = true;
            return out;
        }

        if (step <= 1e-13) {
            ++degenerate_streak;
            if (degenerate_streak > 25) bland = true;
            // A long zero-step run means the pricing is chasing float dust
            // around one highly degenerate point. Hand the vertex back; the
            // caller accepts it if the subgradient certificate holds.
            if (degenerate_streak > 100 + 4 * static_cast<int>(p)) {
                out.beta = beta;
                out.iterations = iter;
                out.stalled = true;
                return out;
            }
        } else {
            degenerate_streak = 0;
            bland = false;
        }

        out.basis[static_cast<size_t>(best_k)] = entering;
    }
}

std::vector<int> cold_start_basis(const Eigen::MatrixXd& X) {
    // Column-pivoted QR of X^T picks a well-conditioned independent row set
    // and certifies full column rank.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X.transpose());
    if (qr.rank() < X.cols())
        throw RankDeficient("design has linearly dependent columns (rank " +
                            std::to_string(qr.rank()) + " < " + std::to_string(X.cols()) + ")");
    std::vector<int> basis(static_cast<size_t>(X.cols()));
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = 0; k < X.cols(); ++k) basis[static_cast<size_t>(k)] = perm[k];
    return basis;
}

bool hint_usable(const Eigen::MatrixXd& X, const std::vector<int>& hint) {
    const auto p = X.cols();
    if (static_cast<Eigen::Index>(hint.size()) != p) return false;
    Eigen::MatrixXd B(p, p);
    for (Eigen::Index k = 0; k < p; ++k) {
        const int row = hint[static_cast<size_t>(k)];
        if (row < 0 || row >= X.rows()) return false;
        for (Eigen::Index j = 0; j < p; ++j)
            if (j != k && hint[static_cast<size_t>(j)] == row) return false;
        B.row(k) = X.row(row);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    lu.setThreshold(1e-10);
    return lu.rank() == p;
}

QrSolution finish(const QrProblem& problem, const Eigen::VectorXd& beta_scaled,
                  const Eigen::VectorXd& col_scale, std::vector<int> basis, int iterations) {
    QrSolution sol;
    sol.coefficients = beta_scaled.cwiseQuotient(col_scale);
    sol.residuals = problem.response - problem.design * sol.coefficients;
    sol.basis_rows = std::move(basis);
    sol.iterations = iterations;

    const double ztol = 1e-8 * (1.0 + problem.response.cwiseAbs().maxCoeff());
    double obj = 0.0;
    for (Eigen::Index i = 0; i < sol.residuals.size(); ++i) {
        const double ri = sol.residuals[i];
        obj += check_loss(ri, problem.tau);
        if (ri < -ztol) {
            ++sol.neg_count;
        } else if (ri > ztol) {
            ++sol.pos_count;
        } else {
            ++sol.zero_count;
        }
    }
    sol.objective = obj;
    return sol;
}

}  // namespace

QrSolution solve(const QrProblem& problem, const std::vector<int>& basis_hint) {
    problem.validate();
    const auto n = problem.design.rows();
    const auto p = problem.design.cols();

    // Scale columns to unit max-abs; keeps pivot tolerances meaningful for
    // mixed-unit designs. Residuals and the objective are scale-invariant.
    Eigen::VectorXd col_scale(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double m = problem.design.col(j).cwiseAbs().maxCoeff();
        if (m == 0.0) throw RankDeficient("design column " + std::to_string(j) + " is identically zero");
        col_scale[j] = m;
    }
    const Eigen::MatrixXd X = problem.design * col_scale.cwiseInverse().asDiagonal();
    const Eigen::VectorXd& y = problem.response;

    std::vector<int> start;
    if (!basis_hint.empty() && hint_usable(X, basis_hint)) {
        start = basis_hint;
    } else {
        start = cold_start_basis(X);
    }

    const int max_iter = 50 * static_cast<int>(n + p);

    // A stalled pass still sits at some interpolation vertex of the original
    // problem; keep it when the subgradient certificate already holds there.
    // Degenerate churn on near-exactly-representable data ends here with the
    // optimum in hand but no strict-descent proof.
    auto accept_if_optimal = [&](const SimplexResult& r, int iters) -> std::optional<QrSolution> {
        QrSolution sol = finish(problem, r.beta, col_scale, r.basis, iters);
        if (verify_optimality(sol, problem.tau)) return sol;
        return std::nullopt;
    };

    SimplexResult res = simplex_pass(X, y, problem.tau, start, max_iter);
    if (!res.stalled)
        return finish(problem, res.beta, col_scale, std::move(res.basis), res.iterations);
    if (auto sol = accept_if_optimal(res, res.iterations)) return *sol;

    // Stall almost always means cycling on heavily tied data. Break the ties
    // with a tiny seeded perturbation, then polish the perturbed basis on the
    // original response.
    const double scale = 1.0 + y.cwiseAbs().maxCoeff();
    Rng rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(n * 131 + p));
    Eigen::VectorXd y_pert = y;
    for (Eigen::Index i = 0; i < n; ++i) y_pert[i] += scale * 1e-11 * (rng.uniform() - 0.5);

    SimplexResult pert = simplex_pass(X, y_pert, problem.tau, cold_start_basis(X), max_iter);
    if (!pert.stalled) {
        SimplexResult polish = simplex_pass(X, y, problem.tau, pert.basis, max_iter);
        const int total = res.iterations + pert.iterations + polish.iterations;
        if (!polish.stalled)
            return finish(problem, polish.beta, col_scale, std::move(polish.basis), total);
        if (auto sol = accept_if_optimal(polish, total)) return *sol;
    }
    throw NumericalFailure("quantile LP exceeded pivot budget (n=" + std::to_string(n) +
                           ", p=" + std::to_string(p) + ", tau=" + std::to_string(problem.tau) + ")");
}

QrSolution solve(const QrProblem& problem) {
    return solve(problem, {});
}

bool verify_optimality(const QrSolution& solution, double tau) {
    // n from the counts themselves, so a recorded certificate (counts without
    // residuals) can be rechecked later.
    const long n = solution.neg_count + solution.zero_count + solution.pos_count;
    const double ntau = static_cast<double>(n) * tau;
    return static_cast<double>(solution.neg_count) <= ntau + 1e-9 &&
           ntau <= static_cast<double>(solution.neg_count + solution.zero_count) + 1e-9;
}

}  // namespace qc
