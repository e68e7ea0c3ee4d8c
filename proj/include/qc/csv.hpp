#ifndef QC_CSV_HPP
#define QC_CSV_HPP

#include <optional>
#include <string>
#include <utility>

#include "qc/dataset.hpp"

namespace qc {

// Comma-separated, "." decimal, mandatory header. Rows whose selected cells
// fail numeric parsing are reported together by 1-based file line number
// (header is line 1). An optional column=value filter keeps matching rows.
Dataset load_csv(const std::string& path, const std::string& y1_col, const std::string& y2_col,
                 const std::string& x_col,
                 const std::optional<std::pair<std::string, std::string>>& filter = std::nullopt);

// Header y1_name,y2_name,x_name then one row per observation, 17 significant
// digits (round-trip exact).
void write_csv(const Dataset& data, const std::string& path);

}  // namespace qc

#endif  // QC_CSV_HPP
