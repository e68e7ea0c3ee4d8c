#ifndef QC_CONFIG_HPP
#define QC_CONFIG_HPP

#include <cstdint>
#include <vector>

namespace qc {

enum class ModelMode { One, Two, DirLinear, DirSpline };

// Run defaults mirroring the standard protocol: contour levels
// {0.2, 0.5, 0.8, 0.94, 0.98} at the {0.1, 0.3, 0.5, 0.7, 0.9} covariate
// quantiles, a 200-level fitting grid, 360 directions.
struct RunConfig {
    std::vector<double> tau_levels{0.2, 0.5, 0.8, 0.94, 0.98};
    std::vector<double> covariate_quantiles{0.1, 0.3, 0.5, 0.7, 0.9};
    int n_directions = 360;
    int grid_size = 200;
    int spline_order = 4;
    int n_interior_knots = 3;
    long n_draws = 10000;
    std::uint64_t seed = 12345;
    ModelMode setting = ModelMode::One;

    void validate() const;  // throws InvalidArgument
};

}  // namespace qc

#endif  // QC_CONFIG_HPP
