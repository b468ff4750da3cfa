#pragma once

#include <stdexcept>
#include <string>

namespace netens {

// Precondition violations on user-supplied parameters.
struct invalid_params : std::runtime_error {
    explicit invalid_params(const std::string& what) : std::runtime_error(what) {}
};

// A vertex pair whose raw connection probability falls outside [0,1]
// while the kernel runs in strict mode.
struct infeasible_pair : std::runtime_error {
    explicit infeasible_pair(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; carries the 1-based line number.
struct parse_error : std::runtime_error {
    parse_error(const std::string& what, std::size_t line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    std::size_t line;
};

// merge_summaries over summaries that do not share sequence/kernel/seed lineage.
struct incompatible_summaries : std::runtime_error {
    explicit incompatible_summaries(const std::string& what) : std::runtime_error(what) {}
};

// Too few eligible spectrum rows to fit.
struct insufficient_data : std::runtime_error {
    explicit insufficient_data(const std::string& what) : std::runtime_error(what) {}
};

// mean_clustering over a graph where every vertex has degree < 2.
struct no_eligible_vertices : std::runtime_error {
    explicit no_eligible_vertices(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace netens
