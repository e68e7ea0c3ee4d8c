#ifndef QC_SERIALIZE_HPP
#define QC_SERIALIZE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qc/contours.hpp"
#include "qc/dataset.hpp"
#include "qc/diagnostics.hpp"
#include "qc/directional.hpp"
#include "qc/stratified.hpp"

namespace qc {

enum class OutputFormat { Json, Csv };

// A directional model is fit per (direction, tau) at contour time, so its
// persisted form is the training data plus the covariate specification.
struct DirectionalSpec {
    CovariateKind kind = CovariateKind::Linear;
    std::optional<SplineBasis> basis;  // Spline kind only
    std::vector<double> default_taus;
    Dataset data;
};

// Self-describing JSON holding either model kind.
void save_directional(const DirectionalSpec& spec, const std::string& path);
void save_stratified(const StratifiedModel& model, const std::string& path);

struct LoadedModel {
    std::optional<DirectionalSpec> directional;
    std::optional<StratifiedModel> stratified;
};
LoadedModel load_model(const std::string& path);

// Json: one object {kind, tau, at_x, center?, vertices}. Csv: header y1,y2
// then the closed vertex ring. 17 significant digits either way.
void emit_contour(const Contour& contour, const std::string& path, OutputFormat format);
Contour read_contour_json(const std::string& path);

void write_report(const AdequacyReport& report, const std::string& path);
void write_pp_csv(const std::vector<std::pair<double, double>>& pairs, const std::string& path);

}  // namespace qc

#endif  // QC_SERIALIZE_HPP
