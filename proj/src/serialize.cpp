#include "qc/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "qc/errors.hpp"

namespace qc {

namespace {

using nlohmann::json;

// Path "-" selects stdout; everything is rendered to a string first so a
// write is all-or-nothing.
void dump_to(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("cannot open " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what(), {});
    }
}

json vec_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json vec_json(const std::vector<double>& v) { return json(v); }

Eigen::VectorXd eigen_from(const json& a) {
    Eigen::VectorXd v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a.at(i).get<double>();
    return v;
}

json basis_json(const SplineBasis& b) {
    return json{{"order", b.order()},
                {"lo", b.lo()},
                {"hi", b.hi()},
                {"interior_knots", b.interior_knots()}};
}

SplineBasis basis_from(const json& j) {
    return SplineBasis(j.at("order").get<int>(), j.at("lo").get<double>(),
                       j.at("hi").get<double>(),
                       j.at("interior_knots").get<std::vector<double>>());
}

json columns_json(const std::string& y1, const std::string& y2, const std::string& x) {
    return json{{"y1", y1}, {"y2", y2}, {"x", x}};
}

json record_json(const FitRecord& r) {
    return json{{"coef", vec_json(r.coef)},
                {"objective", r.objective},
                {"neg", r.neg_count},
                {"zero", r.zero_count},
                {"pos", r.pos_count}};
}

FitRecord record_from(const json& j) {
    FitRecord r;
    r.coef = eigen_from(j.at("coef"));
    r.objective = j.at("objective").get<double>();
    r.neg_count = j.at("neg").get<int>();
    r.zero_count = j.at("zero").get<int>();
    r.pos_count = j.at("pos").get<int>();
    return r;
}

std::vector<FitRecord> records_from(const json& a) {
    std::vector<FitRecord> out;
    out.reserve(a.size());
    for (const auto& j : a) out.push_back(record_from(j));
    return out;
}

}  // namespace

void save_directional(const DirectionalSpec& spec, const std::string& path) {
    spec.data.validate();
    json j;
    j["model"] = "directional";
    switch (spec.kind) {
        case CovariateKind::None: j["covariate"] = "none"; break;
        case CovariateKind::Linear: j["covariate"] = "linear"; break;
        case CovariateKind::Spline: j["covariate"] = "spline"; break;
    }
    if (spec.kind == CovariateKind::Spline) j["spline"] = basis_json(*spec.basis);
    j["default_taus"] = spec.default_taus;
    j["columns"] = columns_json(spec.data.y1_name, spec.data.y2_name, spec.data.x_name);
    j["data"] = json{{"y1", spec.data.y1}, {"y2", spec.data.y2}, {"x", spec.data.x}};
    dump_to(path, j.dump(2) + "\n");
}

void save_stratified(const StratifiedModel& model, const std::string& path) {
    json j;
    j["model"] = "stratified";
    j["setting"] = model.setting == Setting::One ? 1 : 2;
    j["grid"] = model.grid.levels;
    j["rearranged"] = model.rearranged;
    j["n"] = model.n;
    j["columns"] = columns_json(model.y1_name, model.y2_name, model.x_name);
    if (model.basis) j["spline"] = basis_json(*model.basis);
    json marg = json::array(), cond = json::array();
    for (const auto& r : model.marginal) marg.push_back(record_json(r));
    for (const auto& r : model.conditional) cond.push_back(record_json(r));
    j["marginal"] = std::move(marg);
    j["conditional"] = std::move(cond);
    j["x_sorted"] = model.x_sorted;
    dump_to(path, j.dump(2) + "\n");
}

LoadedModel load_model(const std::string& path) {
    const json j = read_json(path);
    try {
        const std::string kind = j.at("model").get<std::string>();
        LoadedModel out;
        if (kind == "directional") {
            DirectionalSpec spec;
            const std::string cov = j.at("covariate").get<std::string>();
            if (cov == "none") spec.kind = CovariateKind::None;
            else if (cov == "linear") spec.kind = CovariateKind::Linear;
            else if (cov == "spline") spec.kind = CovariateKind::Spline;
            else throw ParseError(path + ": unknown covariate kind '" + cov + "'", {});
            if (spec.kind == CovariateKind::Spline) spec.basis = basis_from(j.at("spline"));
            spec.default_taus = j.at("default_taus").get<std::vector<double>>();
            const json& cols = j.at("columns");
            const json& data = j.at("data");
            spec.data.y1 = data.at("y1").get<std::vector<double>>();
            spec.data.y2 = data.at("y2").get<std::vector<double>>();
            spec.data.x = data.at("x").get<std::vector<double>>();
            spec.data.y1_name = cols.at("y1").get<std::string>();
            spec.data.y2_name = cols.at("y2").get<std::string>();
            spec.data.x_name = cols.at("x").get<std::string>();
            spec.data.validate();
            out.directional = std::move(spec);
        } else if (kind == "stratified") {
            StratifiedModel m;
            m.setting = j.at("setting").get<int>() == 1 ? Setting::One : Setting::Two;
            m.grid.levels = j.at("grid").get<std::vector<double>>();
            m.grid.validate();
            m.rearranged = j.at("rearranged").get<bool>();
            m.n = j.at("n").get<long>();
            const json& cols = j.at("columns");
            m.y1_name = cols.at("y1").get<std::string>();
            m.y2_name = cols.at("y2").get<std::string>();
            m.x_name = cols.at("x").get<std::string>();
            if (j.contains("spline")) m.basis = basis_from(j.at("spline"));
            if (m.setting == Setting::Two && !m.basis)
                throw ParseError(path + ": setting 2 model lacks its spline block", {});
            m.marginal = records_from(j.at("marginal"));
            m.conditional = records_from(j.at("conditional"));
            m.x_sorted = j.at("x_sorted").get<std::vector<double>>();
            if (m.marginal.size() != m.grid.levels.size() ||
                m.conditional.size() != m.grid.levels.size())
                throw ParseError(path + ": fit count does not match the tau grid", {});
            if (m.x_sorted.empty()) throw ParseError(path + ": empty x_sorted", {});
            out.stratified = std::move(m);
        } else {
            throw ParseError(path + ": unknown model kind '" + kind + "'", {});
        }
        return out;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what(), {});
    }
}

void emit_contour(const Contour& contour, const std::string& path, OutputFormat format) {
    if (contour.vertices.size() < 3) throw InvalidArgument("refusing to emit a degenerate contour");
    if (format == OutputFormat::Json) {
        json j;
        j["kind"] = contour.kind == ContourKind::Halfspace ? "halfspace" : "radial";
        j["tau"] = contour.tau;
        j["at_x"] = contour.at_x ? json(*contour.at_x) : json(nullptr);
        if (contour.center) j["center"] = json::array({contour.center->x(), contour.center->y()});
        json verts = json::array();
        for (const auto& v : contour.vertices) verts.push_back(json::array({v.x(), v.y()}));
        j["vertices"] = std::move(verts);
        dump_to(path, j.dump(2) + "\n");
        return;
    }
    std::string out = "y1,y2\n";
    char buf[80];
    auto emit = [&](const Eigen::Vector2d& v) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v.x(), v.y());
        out += buf;
    };
    for (const auto& v : contour.vertices) emit(v);
    emit(contour.vertices.front());
    dump_to(path, out);
}

Contour read_contour_json(const std::string& path) {
    const json j = read_json(path);
    try {
        Contour c;
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "halfspace") c.kind = ContourKind::Halfspace;
        else if (kind == "radial") c.kind = ContourKind::Radial;
        else throw ParseError(path + ": unknown contour kind '" + kind + "'", {});
        c.tau = j.at("tau").get<double>();
        if (!j.at("at_x").is_null()) c.at_x = j.at("at_x").get<double>();
        if (j.contains("center")) {
            const json& ctr = j.at("center");
            c.center = Eigen::Vector2d(ctr.at(0).get<double>(), ctr.at(1).get<double>());
        }
        for (const auto& v : j.at("vertices"))
            c.vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        return c;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what(), {});
    }
}

void write_report(const AdequacyReport& report, const std::string& path) {
    json j;
    j["tau"] = report.tau;
    j["x0"] = report.x0;
    j["m"] = report.m;
    j["delta_signed"] = report.delta_signed;
    j["delta_abs"] = report.delta_abs;
    json dirs = json::array();
    for (const auto& [theta, d] : report.per_direction)
        dirs.push_back(json{{"theta", theta}, {"delta_u", d}});
    j["per_direction"] = std::move(dirs);
    dump_to(path, j.dump(2) + "\n");
}

void write_pp_csv(const std::vector<std::pair<double, double>>& pairs, const std::string& path) {
    std::string out = "empirical,modeled\n";
    char buf[80];
    for (const auto& [emp, mod] : pairs) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", emp, mod);
        out += buf;
    }
    dump_to(path, out);
}

}  // namespace qc
