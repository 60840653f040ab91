#pragma once

#include <cstdio>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ufix/checker.hpp"
#include "ufix/solver.hpp"
#include "ufix/space.hpp"

namespace ufix {

/// 17 significant digits: round-trip safe for IEEE doubles, locale-free.
inline std::string format_csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

/// Trace CSV layout, one row per orbit point:
///   n, x_0..x_{d-1}, step_d_0..step_d_{|I|-1}, res_d_0..res_d_{|I|-1}
/// Step columns hold the distances from x_n to x_{n+1}; the last row leaves
/// them empty because there is no outgoing step.
inline std::string trace_to_csv(const OrbitTrace& trace) {
    if (trace.points.empty()) throw std::invalid_argument("trace_to_csv: empty trace");
    const std::size_t dim = trace.points.front().dimension();
    const std::size_t indices = trace.residuals.front().size();

    std::ostringstream out;
    out << "n";
    for (std::size_t j = 0; j < dim; ++j) out << ",x_" << j;
    for (std::size_t i = 0; i < indices; ++i) out << ",step_d_" << i;
    for (std::size_t i = 0; i < indices; ++i) out << ",res_d_" << i;
    out << "\n";

    for (std::size_t n = 0; n < trace.points.size(); ++n) {
        out << n;
        for (std::size_t j = 0; j < dim; ++j)
            out << "," << format_csv_double(trace.points[n][j]);
        for (std::size_t i = 0; i < indices; ++i) {
            out << ",";
            if (n < trace.step_distances.size())
                out << format_csv_double(trace.step_distances[n][i]);
        }
        for (std::size_t i = 0; i < indices; ++i)
            out << "," << format_csv_double(trace.residuals[n][i]);
        out << "\n";
    }
    return out.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

inline double parse_cell(const std::string& cell, std::size_t line_no) {
    std::size_t pos = 0;
    const double v = std::stod(cell, &pos);
    if (pos != cell.size())
        throw std::invalid_argument("trace CSV: malformed number at line " +
                                    std::to_string(line_no));
    return v;
}

}  // namespace detail

/// Inverse of trace_to_csv. Dimension and index count are recovered from the
/// header row.
inline OrbitTrace trace_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("trace CSV: missing header");
    const auto header = detail::split_csv_line(line);

    std::size_t dim = 0, indices = 0;
    for (const auto& h : header) {
        if (h.rfind("x_", 0) == 0) ++dim;
        if (h.rfind("step_d_", 0) == 0) ++indices;
    }
    if (header.empty() || header[0] != "n" || dim == 0 ||
        header.size() != 1 + dim + 2 * indices)
        throw std::invalid_argument("trace CSV: unexpected header layout");

    OrbitTrace trace;
    std::size_t line_no = 1;
    bool saw_empty_step = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw std::invalid_argument("trace CSV: wrong cell count at line " +
                                        std::to_string(line_no));
        std::vector<double> coords(dim);
        for (std::size_t j = 0; j < dim; ++j)
            coords[j] = detail::parse_cell(cells[1 + j], line_no);
        trace.points.push_back(Point(std::move(coords)));

        const bool has_step = !cells[1 + dim].empty();
        if (saw_empty_step && has_step)
            throw std::invalid_argument(
                "trace CSV: step cells resume after an empty row at line " +
                std::to_string(line_no));
        saw_empty_step = saw_empty_step || !has_step;
        if (has_step) {
            std::vector<double> steps(indices);
            for (std::size_t i = 0; i < indices; ++i)
                steps[i] = detail::parse_cell(cells[1 + dim + i], line_no);
            trace.step_distances.push_back(std::move(steps));
        }
        std::vector<double> res(indices);
        for (std::size_t i = 0; i < indices; ++i)
            res[i] = detail::parse_cell(cells[1 + dim + indices + i], line_no);
        trace.residuals.push_back(std::move(res));
    }
    if (trace.points.empty())
        throw std::invalid_argument("trace CSV: no data rows");
    if (trace.step_distances.size() + 1 != trace.points.size())
        throw std::invalid_argument("trace CSV: step columns must be empty exactly on the last row");
    return trace;
}

inline nlohmann::json to_json(const Point& p) { return nlohmann::json(p.coords()); }

inline nlohmann::json to_json(const ConditionReport& report) {
    nlohmann::json violations = nlohmann::json::array();
    for (const Violation& v : report.violations) {
        violations.push_back({{"x", to_json(v.x)},
                              {"y", to_json(v.y)},
                              {"index", v.index},
                              {"lhs", v.lhs},
                              {"rhs", v.rhs}});
    }
    return {{"seed", report.seed},
            {"budget", report.budget},
            {"pairs_checked", report.pairs_checked},
            {"holds_on_sample", report.holds_on_sample},
            {"violations", violations}};
}

struct SolveVerification {
    std::vector<double> k;  // rates used, typically b_i + c_i
    bool geometric_decay = false;
    bool tail_bound = false;
};

inline nlohmann::json to_json(const SolveReport& report) {
    return {{"status", to_string(report.status)},
            {"final_point", to_json(report.final_point)},
            {"final_residual", report.final_residual},
            {"iterations_used", report.iterations_used},
            {"rate_estimates", report.rate_estimates}};
}

inline nlohmann::json to_json(const SolveReport& report, const SolveVerification& v) {
    nlohmann::json j = to_json(report);
    j["verification"] = {{"k", v.k},
                         {"geometric_decay", v.geometric_decay},
                         {"tail_bound", v.tail_bound}};
    return j;
}

/// Canonical document form used for emitted files: 2-space indent plus a
/// trailing newline, so identical inputs yield byte-identical files.
inline std::string to_document(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace ufix
