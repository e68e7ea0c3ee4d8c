#ifndef QC_SYNTHETIC_HPP
#define QC_SYNTHETIC_HPP

#include <cstdint>

#include "qc/dataset.hpp"

namespace qc {

enum class Family { NormalLinear, NormalNonlinear, Exchangeable };

// A generated dataset plus the generator's own conditional quantile
// functions, so tests can compare fits against the truth.
struct Synthetic {
    Dataset data;
    Family family = Family::NormalLinear;
    double lambda = 0.0;

    // Conditional location and scale of the response pair given x.
    double mean_at(double x) const;
    double scale_at(double x) const;

    double true_marginal_quantile(double x, double tau) const;             // Q(Y1 | x)
    double true_conditional_quantile(double x, double y1, double tau) const;  // Q(Y2 | x, y1)
    double true_correlation() const { return 0.5; }
};

// Deterministic given seed. NormalLinear: x ~ U(0,1), (y1, y2) | x bivariate
// normal, means (x, x), unit variances, correlation 0.5. NormalNonlinear
// bends the mean by lambda * sin(2 pi x) and inflates the scale by
// (1 + lambda * x); lambda = 0 reproduces NormalLinear draw for draw.
// Exchangeable: x inert, (y1, y2) centered bivariate normal, correlation 0.5,
// so the distribution is symmetric under response swap.
Synthetic gen_synthetic(Family family, long n, std::uint64_t seed, double lambda = 0.0);

}  // namespace qc

#endif  // QC_SYNTHETIC_HPP
