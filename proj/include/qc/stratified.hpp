#ifndef QC_STRATIFIED_HPP
#define QC_STRATIFIED_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "qc/dataset.hpp"
#include "qc/splines.hpp"

namespace qc {

// Evenly spaced quantile levels strictly inside (0, 1).
struct TauGrid {
    std::vector<double> levels;

    static TauGrid evenly_spaced(int g);  // k / (g + 1), k = 1..g

    double min() const { return levels.front(); }
    double max() const { return levels.back(); }
    int size() const { return static_cast<int>(levels.size()); }

    void validate() const;  // sorted, open endpoints, even spacing
};

enum class Setting { One, Two };

// One grid-level regression kept with its optimality certificate.
struct FitRecord {
    Eigen::VectorXd coef;
    double objective = 0.0;
    int neg_count = 0, zero_count = 0, pos_count = 0;
};

// Two-step conditional quantile model: a marginal family Q_{tau|x}(Y1) and a
// conditional family Q_{tau|x,y1}(Y2), each fit at every grid level.
// Setting One is linear in (x, y1); Setting Two replaces x by spline
// regressors pi(x) with a varying coefficient on y1.
struct StratifiedModel {
    Setting setting = Setting::One;
    TauGrid grid;
    std::vector<FitRecord> marginal;     // grid.size() entries
    std::vector<FitRecord> conditional;  // grid.size() entries
    std::optional<SplineBasis> basis;    // Setting Two only
    bool rearranged = false;

    long n = 0;                  // training rows
    std::vector<double> x_sorted;  // training covariate, ascending
    std::string y1_name = "y1", y2_name = "y2", x_name = "x";

    double x_lo() const { return x_sorted.front(); }
    double x_hi() const { return x_sorted.back(); }
};

struct Which {
    enum Kind { Marginal, Conditional } kind = Marginal;
    double y1 = 0.0;

    static Which marginal() { return {Marginal, 0.0}; }
    static Which conditional(double y1) { return {Conditional, y1}; }
};

// A covariate value (marginal) or covariate/response pair (conditional) at
// which rearrangement guarantees are asserted.
struct ProbePoint {
    double x = 0.0;
    std::optional<double> y1;
};

StratifiedModel fit_setting1(const Dataset& data, const TauGrid& grid);
StratifiedModel fit_setting2(const Dataset& data, const TauGrid& grid, const SplineBasis& basis);

// Grid predictions at one point, in grid order; sorted when the model is
// rearranged. Building block for predict_quantile and the simulator.
std::vector<double> grid_predictions(const StratifiedModel& model, const Which& which, double x);

// Fitted quantile at (x [, y1]); linear interpolation in tau between grid
// levels. Throws ExtrapolationInTau outside [grid.min, grid.max] and
// OutOfDomain outside the covariate domain (Setting Two).
double predict_quantile(const StratifiedModel& model, const Which& which, double x, double tau);

// Monotone-in-tau repair: predictions become the sorted rearrangement of the
// grid sequence, everywhere. The probe points are where monotonicity is
// asserted after the flip.
StratifiedModel rearrange(const StratifiedModel& model, const std::vector<ProbePoint>& probes);

// Two-step inverse-transform sampler: tau1, tau2 i.i.d. uniform on
// [grid.min, grid.max]; y1 from the marginal family, y2 from the conditional
// family given y1. Deterministic given seed. Requires a rearranged model.
std::vector<Eigen::Vector2d> simulate_conditional(const StratifiedModel& model, double x,
                                                  long n_draws, std::uint64_t seed);

// Empirical CDF of simulate_conditional draws at `query` (<= on both
// coordinates).
double joint_cdf(const StratifiedModel& model, double x, const Eigen::Vector2d& query,
                 long n_draws, std::uint64_t seed);

}  // namespace qc

#endif  // QC_STRATIFIED_HPP
