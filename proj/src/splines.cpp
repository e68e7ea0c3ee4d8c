#include "qc/splines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qc/errors.hpp"
#include "qc/stats.hpp"

namespace qc {

SplineBasis::SplineBasis(int order, double lo, double hi, std::vector<double> interior_knots)
    : order_(order), lo_(lo), hi_(hi), interior_(std::move(interior_knots)) {
    if (order_ < 1) throw InvalidArgument("spline order must be >= 1");
    if (!(lo_ < hi_)) throw InvalidArgument("spline domain is empty");
    for (size_t j = 0; j < interior_.size(); ++j) {
        if (!(interior_[j] > lo_ && interior_[j] < hi_))
            throw InvalidArgument("interior knot outside (lo, hi)");
        if (j > 0 && !(interior_[j] > interior_[j - 1]))
            throw InvalidArgument("interior knots must be strictly increasing");
    }
    knots_.reserve(interior_.size() + 2 * static_cast<size_t>(order_));
    knots_.insert(knots_.end(), static_cast<size_t>(order_), lo_);
    knots_.insert(knots_.end(), interior_.begin(), interior_.end());
    knots_.insert(knots_.end(), static_cast<size_t>(order_), hi_);
}

std::vector<double> SplineBasis::greville() const {
    std::vector<double> xi(static_cast<size_t>(q()));
    if (order_ == 1) {
        // Midpoints of the knot spans; linear reproduction does not apply.
        for (int j = 0; j < q(); ++j)
            xi[static_cast<size_t>(j)] = 0.5 * (knots_[static_cast<size_t>(j)] + knots_[static_cast<size_t>(j + 1)]);
        return xi;
    }
    for (int j = 0; j < q(); ++j) {
        double s = 0.0;
        for (int m = 1; m < order_; ++m) s += knots_[static_cast<size_t>(j + m)];
        xi[static_cast<size_t>(j)] = s / static_cast<double>(order_ - 1);
    }
    return xi;
}

SplineBasis make_basis(int order, int n_interior, const std::vector<double>& data,
                       KnotPlacement placement) {
    if (order < 1) throw InvalidArgument("spline order must be >= 1");
    if (n_interior < 0) throw InvalidArgument("interior knot count must be >= 0");
    if (data.size() < 2) throw InvalidArgument("need at least 2 data values for a basis");

    const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(lo < hi)) throw DegenerateData("all covariate values are equal; no spline domain");

    std::vector<double> interior;
    interior.reserve(static_cast<size_t>(n_interior));
    if (placement == KnotPlacement::Uniform) {
        for (int j = 1; j <= n_interior; ++j)
            interior.push_back(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n_interior + 1));
    } else {
        std::vector<double> sorted(data);
        std::sort(sorted.begin(), sorted.end());
        for (int j = 1; j <= n_interior; ++j) {
            const double k = quantile_of_sorted(sorted, static_cast<double>(j) / static_cast<double>(n_interior + 1));
            if (k > lo && k < hi) interior.push_back(k);
        }
    }

    // Collapse duplicates from tied data so the knot vector stays valid.
    interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
    const int collapsed = n_interior - static_cast<int>(interior.size());

    SplineBasis basis(order, lo, hi, std::move(interior));
    basis.collapsed_ = collapsed;
    return basis;
}

Eigen::VectorXd eval_basis(const SplineBasis& basis, double x) {
    if (!basis.in_domain(x))
        throw OutOfDomain("x=" + std::to_string(x) + " outside spline domain [" +
                          std::to_string(basis.lo()) + ", " + std::to_string(basis.hi()) + "]");

    const int k = basis.order();
    const int q = basis.q();
    const auto& t = basis.knots();

    // Knot span `span` with t[span] <= x < t[span+1]; the right boundary
    // belongs to the last span so pi_{q-1}(hi) = 1.
    int span;
    if (x >= basis.hi()) {
        span = q - 1;
    } else {
        span = static_cast<int>(std::upper_bound(t.begin() + k, t.begin() + q, x) - t.begin()) - 1;
    }

    // Triangular Cox-de Boor: N[j] holds the value of basis function
    // span-d+j of order d+1 after round d.
    std::vector<double> N(static_cast<size_t>(k), 0.0);
    std::vector<double> left(static_cast<size_t>(k)), right(static_cast<size_t>(k));
    N[0] = 1.0;
    for (int d = 1; d < k; ++d) {
        left[static_cast<size_t>(d)] = x - t[static_cast<size_t>(span + 1 - d)];
        right[static_cast<size_t>(d)] = t[static_cast<size_t>(span + d)] - x;
        double saved = 0.0;
        for (int j = 0; j < d; ++j) {
            const double denom = right[static_cast<size_t>(j + 1)] + left[static_cast<size_t>(d - j)];
            const double tmp = denom != 0.0 ? N[static_cast<size_t>(j)] / denom : 0.0;
            N[static_cast<size_t>(j)] = saved + right[static_cast<size_t>(j + 1)] * tmp;
            saved = left[static_cast<size_t>(d - j)] * tmp;
        }
        N[static_cast<size_t>(d)] = saved;
    }

    Eigen::VectorXd out = Eigen::VectorXd::Zero(q);
    for (int j = 0; j < k; ++j) {
        const int idx = span - k + 1 + j;
        if (idx >= 0 && idx < q) out[idx] = N[static_cast<size_t>(j)];
    }
    return out;
}

}  // namespace qc
