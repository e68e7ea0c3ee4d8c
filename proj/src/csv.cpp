#include "qc/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "qc/errors.hpp"

namespace qc {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return errno == 0 && end == s.c_str() + s.size() && std::isfinite(out);
}

size_t find_column(const std::vector<std::string>& header, const std::string& name,
                   const std::string& path) {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw MissingColumn("column '" + name + "' not found in " + path);
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& y1_col, const std::string& y2_col,
                 const std::string& x_col,
                 const std::optional<std::pair<std::string, std::string>>& filter) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file: " + path, {});
    const std::vector<std::string> header = split_line(line);
    const size_t iy1 = find_column(header, y1_col, path);
    const size_t iy2 = find_column(header, y2_col, path);
    const size_t ix = find_column(header, x_col, path);
    size_t ifilter = 0;
    if (filter) ifilter = find_column(header, filter->first, path);

    Dataset out;
    out.y1_name = y1_col;
    out.y2_name = y2_col;
    out.x_name = x_col;

    std::vector<long> bad_lines;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size()) {
            bad_lines.push_back(line_no);
            continue;
        }
        if (filter && cells[ifilter] != filter->second) continue;
        double v1, v2, vx;
        if (!parse_number(cells[iy1], v1) || !parse_number(cells[iy2], v2) ||
            !parse_number(cells[ix], vx)) {
            bad_lines.push_back(line_no);
            continue;
        }
        out.y1.push_back(v1);
        out.y2.push_back(v2);
        out.x.push_back(vx);
    }

    if (!bad_lines.empty()) {
        std::string msg = "unparseable rows in " + path + " (file lines:";
        for (long l : bad_lines) msg += " " + std::to_string(l);
        msg += ")";
        throw ParseError(msg, bad_lines);
    }
    if (out.y1.empty()) {
        throw InvalidArgument(filter ? "no rows match filter " + filter->first + "=" + filter->second
                                     : "no data rows in " + path);
    }
    out.validate();
    return out;
}

void write_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << data.y1_name << ',' << data.y2_name << ',' << data.x_name << '\n';
    char buf[96];
    for (size_t i = 0; i < data.n(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", data.y1[i], data.y2[i], data.x[i]);
        out << buf;
    }
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace qc
