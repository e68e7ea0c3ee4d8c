#ifndef QC_QR_CORE_HPP
#define QC_QR_CORE_HPP

#include <Eigen/Dense>
#include <vector>

namespace qc {

// Asymmetric absolute loss whose minimization defines the tau-th quantile:
// z * tau for z >= 0, z * (tau - 1) for z < 0. Always >= 0.
double check_loss(double z, double tau);

// One check-function regression instance: minimize sum_i check_loss(
// response_i - design.row(i) * beta, tau) over beta.
struct QrProblem {
    Eigen::MatrixXd design;    // n x p, full column rank required
    Eigen::VectorXd response;  // n
    double tau = 0.5;          // in (0, 1)

    void validate() const;  // throws InvalidArgument
};

struct QrSolution {
    Eigen::VectorXd coefficients;  // p
    double objective = 0.0;        // sum of check losses at the optimum
    Eigen::VectorXd residuals;     // n, response - design * coefficients
    int neg_count = 0;
    int zero_count = 0;
    int pos_count = 0;

    // Rows interpolated by the returned vertex; reusable as a warm-start
    // hint for a nearby problem.
    std::vector<int> basis_rows;
    int iterations = 0;
};

// Exact vertex solution of the quantile-regression linear program via a
// specialized primal simplex. The basis is the set of p interpolated
// observations; each pivot performs an exact line minimization that may
// pass through many breakpoints at once. Throws RankDeficient when the
// design columns are linearly dependent and NumericalFailure when the
// pivot budget (50 * (n + p) per phase) is exhausted.
//
// `basis_hint` (row indices of a previous solution on similar data) seeds
// the initial vertex; an unusable hint silently falls back to a cold start.
QrSolution solve(const QrProblem& problem);
QrSolution solve(const QrProblem& problem, const std::vector<int>& basis_hint);

// Subgradient optimality: neg_count <= n * tau <= neg_count + zero_count.
// Meaningful whenever the constant vector lies in the design column span,
// which holds for every design this library builds.
bool verify_optimality(const QrSolution& solution, double tau);

}  // namespace qc

#endif  // QC_QR_CORE_HPP
