#include "qc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qc/errors.hpp"

namespace qc {

Dataset window_subsample(const Dataset& data, double center, double halfwidth) {
    data.validate();
    if (!(halfwidth > 0.0)) throw InvalidArgument("window halfwidth must be positive");
    Dataset out;
    out.y1_name = data.y1_name;
    out.y2_name = data.y2_name;
    out.x_name = data.x_name;
    for (size_t i = 0; i < data.n(); ++i) {
        if (std::abs(data.x[i] - center) <= halfwidth) {
            out.y1.push_back(data.y1[i]);
            out.y2.push_back(data.y2[i]);
            out.x.push_back(data.x[i]);
        }
    }
    if (out.y1.empty())
        throw EmptyWindow("no rows with |" + data.x_name + " - " + std::to_string(center) +
                          "| <= " + std::to_string(halfwidth));
    return out;
}

double delta_u(const Dataset& subset, const DirectionalFit& fit, const XMode& x_mode) {
    if (subset.n() == 0) throw InvalidArgument("delta_u needs a nonempty subset");
    long below = 0;
    for (size_t i = 0; i < subset.n(); ++i) {
        const double x = x_mode.kind == XMode::FixedX ? x_mode.x0 : subset.x[i];
        if (fit.residual(subset.y1[i], subset.y2[i], x) <= 0.0) ++below;
    }
    return static_cast<double>(below) / static_cast<double>(subset.n());
}

AdequacyReport delta_x(const Dataset& data, double x0, double halfwidth, double tau,
                       const std::vector<DirectionalFit>& fits) {
    if (fits.empty()) throw InvalidArgument("delta_x needs at least one directional fit");
    for (const auto& f : fits)
        if (std::abs(f.tau - tau) > 1e-12)
            throw InvalidArgument("delta_x fits must share the requested tau");

    const Dataset sub = window_subsample(data, x0, halfwidth);

    AdequacyReport rep;
    rep.tau = tau;
    rep.x0 = x0;
    rep.m = static_cast<long>(sub.n());
    rep.per_direction.reserve(fits.size());
    double signed_sum = 0.0, abs_sum = 0.0;
    for (const auto& f : fits) {
        const double d = delta_u(sub, f, XMode::use_row_x());
        rep.per_direction.emplace_back(f.direction.theta, d);
        signed_sum += d - tau;
        abs_sum += std::abs(d - tau);
    }
    rep.delta_signed = signed_sum / static_cast<double>(fits.size());
    rep.delta_abs = abs_sum / static_cast<double>(fits.size());
    return rep;
}

std::vector<std::pair<double, double>> pp_pairs(const StratifiedModel& model, const Dataset& data,
                                                double x0, double halfwidth, long n_draws,
                                                std::uint64_t seed) {
    const Dataset sub = window_subsample(data, x0, halfwidth);
    const size_t m = sub.n();

    const std::vector<Eigen::Vector2d> cloud = simulate_conditional(model, x0, n_draws, seed);

    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(m);
    for (size_t i = 0; i < m; ++i) {
        long emp = 0;
        for (size_t j = 0; j < m; ++j)
            if (sub.y1[j] <= sub.y1[i] && sub.y2[j] <= sub.y2[i]) ++emp;
        long mod = 0;
        for (const auto& p : cloud)
            if (p.x() <= sub.y1[i] && p.y() <= sub.y2[i]) ++mod;
        pairs.emplace_back(static_cast<double>(emp) / static_cast<double>(m),
                           static_cast<double>(mod) / static_cast<double>(cloud.size()));
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace qc
