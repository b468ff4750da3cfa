#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "netens/analytic.hpp"
#include "netens/ensemble.hpp"
#include "netens/errors.hpp"

namespace netens {

inline constexpr const char* tool_version = "netens 0.1.0";

// Shortest round-trip decimal form; deterministic across runs.
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text, std::size_t line_no) {
    double value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw parse_error("expected a number, got \"" + text + "\"", line_no);
    return value;
}

using Metadata = std::map<std::string, std::string>;

// Metadata header lines: "# key=value", one per key, sorted (std::map), then
// the CSV column header and rows.
inline void write_metadata(std::ostream& out, const Metadata& meta) {
    for (const auto& [key, value] : meta) out << "# " << key << '=' << value << '\n';
}

inline void write_spectrum_csv(std::ostream& out, const DegreeSpectrum& spectrum,
                               const Metadata& meta) {
    write_metadata(out, meta);
    out << "degree,mean,stderr,count\n";
    for (const auto& row : spectrum.rows)
        out << row.degree << ',' << format_double(row.mean) << ',' << format_double(row.stderr_)
            << ',' << row.count << '\n';
}

// Prediction table: one row per degree in [k_lo, k_hi].
inline void write_prediction_csv(std::ostream& out, const AnalyticPrediction& pred,
                                 std::uint32_t k_lo, std::uint32_t k_hi, const Metadata& meta) {
    write_metadata(out, meta);
    out << "degree,knn_pred,c_pred\n";
    for (std::uint32_t k = k_lo; k <= k_hi; ++k)
        out << k << ',' << format_double(pred.knn_of_k(k)) << ','
            << format_double(pred.clustering_of_k(k)) << '\n';
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace detail

struct SpectrumFile {
    DegreeSpectrum spectrum;
    Metadata meta;
};

inline SpectrumFile read_spectrum_csv(std::istream& in) {
    SpectrumFile file;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            const auto eq = body.find('=');
            if (eq != std::string::npos) file.meta[body.substr(0, eq)] = body.substr(eq + 1);
            continue;
        }
        if (!header_seen) {
            if (line != "degree,mean,stderr,count")
                throw parse_error("expected header \"degree,mean,stderr,count\", got \"" + line + "\"",
                                  line_no);
            header_seen = true;
            continue;
        }
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 4)
            throw parse_error("expected 4 comma-separated fields", line_no);
        SpectrumRow row;
        row.degree = static_cast<std::uint32_t>(parse_double(fields[0], line_no));
        row.mean = parse_double(fields[1], line_no);
        row.stderr_ = parse_double(fields[2], line_no);
        row.count = static_cast<std::uint64_t>(parse_double(fields[3], line_no));
        file.spectrum.rows.push_back(row);
    }
    if (!header_seen) throw parse_error("missing column header", line_no);
    return file;
}

struct PredictionRow {
    std::uint32_t degree;
    double knn_pred;
    double c_pred;
};

struct PredictionFile {
    std::vector<PredictionRow> rows;
    Metadata meta;
};

inline PredictionFile read_prediction_csv(std::istream& in) {
    PredictionFile file;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            const auto eq = body.find('=');
            if (eq != std::string::npos) file.meta[body.substr(0, eq)] = body.substr(eq + 1);
            continue;
        }
        if (!header_seen) {
            if (line != "degree,knn_pred,c_pred")
                throw parse_error("expected header \"degree,knn_pred,c_pred\", got \"" + line + "\"",
                                  line_no);
            header_seen = true;
            continue;
        }
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 3)
            throw parse_error("expected 3 comma-separated fields", line_no);
        file.rows.push_back({static_cast<std::uint32_t>(parse_double(fields[0], line_no)),
                             parse_double(fields[1], line_no), parse_double(fields[2], line_no)});
    }
    if (!header_seen) throw parse_error("missing column header", line_no);
    return file;
}

}  // namespace netens
