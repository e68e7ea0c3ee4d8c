#include "qc/config.hpp"

#include "qc/errors.hpp"

namespace qc {

void RunConfig::validate() const {
    auto in_unit = [](const std::vector<double>& v) {
        for (double p : v)
            if (!(p > 0.0 && p < 1.0)) return false;
        return !v.empty();
    };
    if (!in_unit(tau_levels)) throw InvalidArgument("tau levels must lie in (0, 1)");
    if (!in_unit(covariate_quantiles)) throw InvalidArgument("covariate quantiles must lie in (0, 1)");
    if (n_directions < 3) throw InvalidArgument("need at least 3 directions");
    if (grid_size < 1) throw InvalidArgument("grid size must be positive");
    if (spline_order < 1) throw InvalidArgument("spline order must be at least 1");
    if (n_interior_knots < 0) throw InvalidArgument("interior knot count cannot be negative");
    if (n_draws < 1) throw InvalidArgument("draw count must be positive");
}

}  // namespace qc
