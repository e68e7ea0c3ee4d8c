#include "qc/synthetic.hpp"

#include <cmath>

#include "qc/errors.hpp"
#include "qc/rng.hpp"
#include "qc/stats.hpp"

namespace qc {

namespace {
const double kRho = 0.5;
const double kResid = std::sqrt(1.0 - kRho * kRho);  // sqrt(0.75)
}  // namespace

double Synthetic::mean_at(double x) const {
    switch (family) {
        case Family::NormalLinear: return x;
        case Family::NormalNonlinear: return x + lambda * std::sin(2.0 * M_PI * x);
        case Family::Exchangeable: return 0.0;
    }
    return 0.0;
}

double Synthetic::scale_at(double x) const {
    return family == Family::NormalNonlinear ? 1.0 + lambda * x : 1.0;
}

double Synthetic::true_marginal_quantile(double x, double tau) const {
    return mean_at(x) + scale_at(x) * normal_quantile(tau);
}

double Synthetic::true_conditional_quantile(double x, double y1, double tau) const {
    const double mu = mean_at(x);
    const double s = scale_at(x);
    // Y2 | Y1 = y1 is normal with mean mu + rho * (y1 - mu) and scale s * sqrt(1 - rho^2).
    return mu + kRho * (y1 - mu) + s * kResid * normal_quantile(tau);
}

Synthetic gen_synthetic(Family family, long n, std::uint64_t seed, double lambda) {
    if (n < 1) throw InvalidArgument("synthetic sample size must be positive");
    if (family != Family::NormalNonlinear) lambda = 0.0;

    Synthetic out;
    out.family = family;
    out.lambda = lambda;
    out.data.y1.reserve(static_cast<size_t>(n));
    out.data.y2.reserve(static_cast<size_t>(n));
    out.data.x.reserve(static_cast<size_t>(n));

    Rng rng(seed);
    for (long i = 0; i < n; ++i) {
        const double x = rng.uniform();
        const auto [e1, e2] = rng.normal_pair();
        const double mu = out.mean_at(x);
        const double s = out.scale_at(x);
        out.data.x.push_back(x);
        out.data.y1.push_back(mu + s * e1);
        out.data.y2.push_back(mu + s * (kRho * e1 + kResid * e2));
    }
    return out;
}

}  // namespace qc
