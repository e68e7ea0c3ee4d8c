#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qc/config.hpp"
#include "qc/contours.hpp"
#include "qc/csv.hpp"
#include "qc/diagnostics.hpp"
#include "qc/directional.hpp"
#include "qc/errors.hpp"
#include "qc/serialize.hpp"
#include "qc/stats.hpp"
#include "qc/stratified.hpp"
#include "qc/synthetic.hpp"

namespace {

using namespace qc;

std::pair<std::string, std::string> parse_filter(const std::string& s) {
    const size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
        throw InvalidArgument("--filter expects COL=VALUE, got '" + s + "'");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

// With several levels, tag each output file: out.json -> out_tau0.2.json.
std::string tau_path(const std::string& base, double tau, bool multi) {
    if (!multi) return base;
    char tag[40];
    std::snprintf(tag, sizeof tag, "_tau%g", tau);
    const size_t dot = base.find_last_of('.');
    const size_t slash = base.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return base + tag;
    return base.substr(0, dot) + tag + base.substr(dot);
}

CovariateModel model_of(const DirectionalSpec& spec) {
    switch (spec.kind) {
        case CovariateKind::None: return CovariateModel::none();
        case CovariateKind::Spline: return CovariateModel::spline(*spec.basis);
        case CovariateKind::Linear: break;
    }
    return CovariateModel::linear();
}

struct FitArgs {
    std::string input, y1 = "y1", y2 = "y2", x = "x", filter, out;
    ModelMode setting = ModelMode::One;
    std::vector<double> taus;
    int grid = 200, knots = 3, order = 4;
};

void run_fit(const FitArgs& a) {
    std::optional<std::pair<std::string, std::string>> filter;
    if (!a.filter.empty()) filter = parse_filter(a.filter);
    const Dataset data = load_csv(a.input, a.y1, a.y2, a.x, filter);

    if (a.setting == ModelMode::DirLinear || a.setting == ModelMode::DirSpline) {
        DirectionalSpec spec;
        spec.kind = a.setting == ModelMode::DirLinear ? CovariateKind::Linear : CovariateKind::Spline;
        if (spec.kind == CovariateKind::Spline)
            spec.basis = make_basis(a.order, a.knots, data.x, KnotPlacement::Quantile);
        spec.default_taus = a.taus.empty() ? std::vector<double>{0.2} : a.taus;
        spec.data = data;
        save_directional(spec, a.out);
        return;
    }

    const TauGrid grid = TauGrid::evenly_spaced(a.grid);
    StratifiedModel model;
    if (a.setting == ModelMode::One) {
        model = fit_setting1(data, grid);
    } else {
        const SplineBasis basis = make_basis(a.order, a.knots, data.x, KnotPlacement::Quantile);
        model = fit_setting2(data, grid, basis);
    }

    RunConfig defaults;
    std::vector<ProbePoint> probes;
    const double y1_med = empirical_quantile(data.y1, 0.5);
    for (double q : defaults.covariate_quantiles) {
        const double xq = quantile_of_sorted(model.x_sorted, q);
        probes.push_back({xq, std::nullopt});
        probes.push_back({xq, y1_med});
    }
    save_stratified(rearrange(model, probes), a.out);
}

struct ContourArgs {
    std::string model, out, format = "json";
    std::optional<double> at_quantile, at_value;
    std::vector<double> taus;
    int directions = 360;
    long draws = 10000;
    std::uint64_t seed = 12345;
};

void run_contour(const ContourArgs& a) {
    const LoadedModel loaded = load_model(a.model);

    const bool needs_x0 = loaded.stratified || loaded.directional->kind != CovariateKind::None;
    if (needs_x0 && !a.at_quantile && !a.at_value)
        throw InvalidArgument("pass --at-value or --at-quantile to condition the contour");

    double x0 = 0.0;
    if (a.at_value) {
        x0 = *a.at_value;
    } else if (a.at_quantile) {
        if (!(*a.at_quantile > 0.0 && *a.at_quantile < 1.0))
            throw InvalidArgument("--at-quantile must lie in (0, 1)");
        if (loaded.stratified) {
            x0 = quantile_of_sorted(loaded.stratified->x_sorted, *a.at_quantile);
        } else {
            x0 = empirical_quantile(loaded.directional->data.x, *a.at_quantile);
        }
    }

    std::vector<double> taus = a.taus;
    if (taus.empty()) {
        taus = loaded.directional ? loaded.directional->default_taus : RunConfig{}.tau_levels;
    }
    if (taus.empty()) throw InvalidArgument("no tau levels requested");
    const bool multi = taus.size() > 1;
    const OutputFormat fmt = a.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

    if (loaded.directional) {
        const DirectionalSpec& spec = *loaded.directional;
        for (double tau : taus) {
            if (!(tau > 0.0 && tau < 0.5))
                throw InvalidArgument("directional contours need tau in (0, 0.5); got " +
                                      std::to_string(tau));
        }
        const CovariateModel cov = model_of(spec);
        for (double tau : taus) {
            const std::vector<DirectionalFit> fits =
                sweep_directions(spec.data, tau, a.directions, cov);
            const Contour c = spec.kind == CovariateKind::None
                                  ? halfspace_intersection(fits)
                                  : halfspace_intersection(fits, x0);
            emit_contour(c, tau_path(a.out, tau, multi), fmt);
        }
        return;
    }

    const StratifiedModel& model = *loaded.stratified;
    for (double tau : taus) {
        if (!(tau > 0.0 && tau < 1.0))
            throw InvalidArgument("radial contours need tau in (0, 1); got " + std::to_string(tau));
    }
    const std::vector<Eigen::Vector2d> cloud = simulate_conditional(model, x0, a.draws, a.seed);
    for (double tau : taus) {
        Contour c = radial_contour(cloud, tau, a.directions);
        c.at_x = x0;
        emit_contour(c, tau_path(a.out, tau, multi), fmt);
    }
}

struct DiagnoseArgs {
    std::string model, input, out = "-";
    double at_value = 0.0, window = 0.0;
    double tau = 0.2;
    int directions = 360;
    long draws = 10000;
    std::uint64_t seed = 12345;
    bool window_given = false;
};

void run_diagnose(const DiagnoseArgs& a) {
    const LoadedModel loaded = load_model(a.model);
    const std::string y1 = loaded.stratified ? loaded.stratified->y1_name : loaded.directional->data.y1_name;
    const std::string y2 = loaded.stratified ? loaded.stratified->y2_name : loaded.directional->data.y2_name;
    const std::string xc = loaded.stratified ? loaded.stratified->x_name : loaded.directional->data.x_name;
    const Dataset data = load_csv(a.input, y1, y2, xc);

    double halfwidth = a.window;
    if (!a.window_given) halfwidth = 0.5 * stddev(data.x);

    if (loaded.directional) {
        const DirectionalSpec& spec = *loaded.directional;
        if (!(a.tau > 0.0 && a.tau < 1.0)) throw InvalidArgument("--tau must lie in (0, 1)");
        const std::vector<DirectionalFit> fits =
            sweep_directions(spec.data, a.tau, a.directions, model_of(spec));
        write_report(delta_x(data, a.at_value, halfwidth, a.tau, fits), a.out);
        return;
    }
    write_pp_csv(pp_pairs(*loaded.stratified, data, a.at_value, halfwidth, a.draws, a.seed), a.out);
}

struct SimArgs {
    std::string family = "normal-linear", out;
    long n = 1000;
    std::uint64_t seed = 12345;
    double lambda = 0.8;
};

void run_simulate(const SimArgs& a) {
    Family fam = Family::NormalLinear;
    if (a.family == "normal-nonlinear") fam = Family::NormalNonlinear;
    else if (a.family == "exchangeable") fam = Family::Exchangeable;
    write_csv(gen_synthetic(fam, a.n, a.seed, a.lambda).data, a.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditional bivariate quantile contours: directional regression "
                 "quantiles and stratified two-step models"};
    app.require_subcommand(1);

    const std::map<std::string, ModelMode> setting_names{{"one", ModelMode::One},
                                                         {"two", ModelMode::Two},
                                                         {"dir-linear", ModelMode::DirLinear},
                                                         {"dir-spline", ModelMode::DirSpline}};

    FitArgs fit;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a model and write it to disk");
    fit_cmd->add_option("--input", fit.input, "Input CSV path")->required();
    fit_cmd->add_option("--y1", fit.y1, "First response column")->required();
    fit_cmd->add_option("--y2", fit.y2, "Second response column")->required();
    fit_cmd->add_option("--x", fit.x, "Covariate column")->required();
    fit_cmd->add_option("--setting", fit.setting, "one|two|dir-linear|dir-spline")
        ->required()
        ->transform(CLI::CheckedTransformer(setting_names, CLI::ignore_case));
    fit_cmd->add_option("--taus", fit.taus, "Default contour levels stored with directional models")
        ->delimiter(',');
    fit_cmd->add_option("--grid", fit.grid, "Tau-grid size for stratified fits");
    fit_cmd->add_option("--knots", fit.knots, "Interior knot count for spline settings");
    fit_cmd->add_option("--order", fit.order, "Spline order (degree + 1)");
    fit_cmd->add_option("--filter", fit.filter, "Keep rows where COL=VAL");
    fit_cmd->add_option("--out", fit.out, "Model output path")->required();

    ContourArgs ctr;
    CLI::App* ctr_cmd = app.add_subcommand("contour", "Evaluate contours of a fitted model");
    ctr_cmd->add_option("--model", ctr.model, "Model path from fit")->required();
    CLI::Option* atq = ctr_cmd->add_option("--at-quantile", ctr.at_quantile,
                                           "Condition at this training-covariate quantile");
    ctr_cmd->add_option("--at-value", ctr.at_value, "Condition at this covariate value")
        ->excludes(atq);
    ctr_cmd->add_option("--taus", ctr.taus, "Contour levels")->delimiter(',');
    ctr_cmd->add_option("--directions", ctr.directions, "Direction / angle-bin count");
    ctr_cmd->add_option("--draws", ctr.draws, "Simulation draws (stratified models)");
    ctr_cmd->add_option("--seed", ctr.seed, "Simulation seed");
    ctr_cmd->add_option("--format", ctr.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    ctr_cmd->add_option("--out", ctr.out, "Output path (tagged per tau when several)")->required();

    DiagnoseArgs diag;
    CLI::App* diag_cmd = app.add_subcommand("diagnose", "Adequacy report or P-P pairs");
    diag_cmd->add_option("--model", diag.model, "Model path from fit")->required();
    diag_cmd->add_option("--input", diag.input, "Evaluation CSV path")->required();
    diag_cmd->add_option("--at-value", diag.at_value, "Covariate window center")->required();
    CLI::Option* win = diag_cmd->add_option("--window", diag.window, "Covariate window halfwidth");
    diag_cmd->add_option("--tau", diag.tau, "Level for the directional report");
    diag_cmd->add_option("--directions", diag.directions, "Direction count for the report");
    diag_cmd->add_option("--draws", diag.draws, "Simulation draws for P-P pairs");
    diag_cmd->add_option("--seed", diag.seed, "Simulation seed");
    diag_cmd->add_option("--out", diag.out, "Output path; '-' for stdout");

    SimArgs sim;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Write a synthetic dataset");
    sim_cmd->add_option("--family", sim.family, "normal-linear|normal-nonlinear|exchangeable")
        ->required()
        ->check(CLI::IsMember({"normal-linear", "normal-nonlinear", "exchangeable"}));
    sim_cmd->add_option("--n", sim.n, "Sample size")->required()->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim.seed, "Generator seed")->required();
    sim_cmd->add_option("--lambda", sim.lambda, "Nonlinearity strength (normal-nonlinear)");
    sim_cmd->add_option("--out", sim.out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fit_cmd->parsed()) run_fit(fit);
        if (ctr_cmd->parsed()) run_contour(ctr);
        if (diag_cmd->parsed()) {
            diag.window_given = win->count() > 0;
            run_diagnose(diag);
        }
        if (sim_cmd->parsed()) run_simulate(sim);
        return 0;
    } catch (const qc::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qc::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qc::EmptyWindow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const qc::EmptyIntersection& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const qc::UnboundedRegion& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const qc::EmptyAngleBin& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const qc::SweepError& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& [theta, why] : e.failed)
            std::cerr << "  theta=" << theta << ": " << why << "\n";
        return 3;
    } catch (const qc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
