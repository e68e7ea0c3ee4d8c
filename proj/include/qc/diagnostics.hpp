#ifndef QC_DIAGNOSTICS_HPP
#define QC_DIAGNOSTICS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qc/dataset.hpp"
#include "qc/directional.hpp"
#include "qc/stratified.hpp"

namespace qc {

// Directional coverage audit at one (tau, x0): per-direction coverage of the
// fitted halfspaces over a covariate window, plus its signed and absolute
// deviations from tau averaged over directions.
struct AdequacyReport {
    double tau = 0.0;
    double x0 = 0.0;
    std::vector<std::pair<double, double>> per_direction;  // (theta, delta_u)
    double delta_signed = 0.0;  // mean of (delta_u - tau)
    double delta_abs = 0.0;     // mean of |delta_u - tau|
    long m = 0;                 // window subsample size
};

// Rows with |x - center| <= halfwidth, original order. Throws EmptyWindow.
Dataset window_subsample(const Dataset& data, double center, double halfwidth);

// Covariate term evaluated at each row's own x, or frozen at one value.
struct XMode {
    enum Kind { UseRowX, FixedX } kind = UseRowX;
    double x0 = 0.0;

    static XMode use_row_x() { return {UseRowX, 0.0}; }
    static XMode fixed_x(double x0) { return {FixedX, x0}; }
};

// Fraction of rows whose directional residual is <= 0.
double delta_u(const Dataset& subset, const DirectionalFit& fit, const XMode& x_mode);

// Windowed subsample at x0, then delta_u for every fit (sharing one tau),
// covariate term evaluated per row.
AdequacyReport delta_x(const Dataset& data, double x0, double halfwidth, double tau,
                       const std::vector<DirectionalFit>& fits);

// P-P pairs over the window at x0: bivariate empirical CDF of the subsample
// at each of its own rows vs the model's simulated joint CDF there. Sorted by
// the empirical coordinate. One simulation cloud serves every query, which
// matches per-query joint_cdf exactly (same seed, same draws).
std::vector<std::pair<double, double>> pp_pairs(const StratifiedModel& model, const Dataset& data,
                                                double x0, double halfwidth, long n_draws,
                                                std::uint64_t seed);

}  // namespace qc

#endif  // QC_DIAGNOSTICS_HPP
