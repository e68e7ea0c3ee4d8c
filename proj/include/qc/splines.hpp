#ifndef QC_SPLINES_HPP
#define QC_SPLINES_HPP

#include <Eigen/Dense>
#include <vector>

namespace qc {

enum class KnotPlacement { Uniform, Quantile };

// Clamped B-spline basis pi(x) on [lo, hi]: `order` copies of each boundary
// knot plus strictly increasing interior knots. Basis dimension
// q = interior_knots.size() + order.
class SplineBasis {
public:
    SplineBasis(int order, double lo, double hi, std::vector<double> interior_knots);

    int order() const { return order_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    int q() const { return static_cast<int>(interior_.size()) + order_; }
    const std::vector<double>& interior_knots() const { return interior_; }
    const std::vector<double>& knots() const { return knots_; }  // full clamped vector

    // Knots dropped by duplicate collapsing in make_basis (0 unless the
    // quantile placement collided on tied data).
    int collapsed_knots() const { return collapsed_; }

    bool in_domain(double x) const { return x >= lo_ && x <= hi_; }

    // Greville abscissae; sum_j greville_j * pi_j(x) == x for order >= 2.
    std::vector<double> greville() const;

private:
    friend SplineBasis make_basis(int, int, const std::vector<double>&, KnotPlacement);
    int order_;
    double lo_, hi_;
    std::vector<double> interior_;
    std::vector<double> knots_;
    int collapsed_ = 0;
};

// Build a basis over the range of `data`. Uniform placement spaces interior
// knots evenly in (lo, hi); Quantile placement puts knot j at the
// j/(n_interior+1) empirical quantile. Colliding quantile knots are collapsed
// (reducing q); inspect collapsed_knots() to warn. Throws DegenerateData when
// the data has no spread.
SplineBasis make_basis(int order, int n_interior, const std::vector<double>& data,
                       KnotPlacement placement);

// All q basis values at x by the Cox-de Boor recursion. Entries are
// nonnegative, sum to 1, and at most `order` are nonzero. Throws OutOfDomain
// for x outside [lo, hi].
Eigen::VectorXd eval_basis(const SplineBasis& basis, double x);

}  // namespace qc

#endif  // QC_SPLINES_HPP
