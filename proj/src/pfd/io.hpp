#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfd/decomposer.hpp"
#include "pfd/multigraph.hpp"
#include "pfd/types.hpp"

namespace pfd {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "p <n> <m>" header, then m lines "e <u> <v>"; '#' lines and blank lines
/// are ignored. Throws ParseError with a 1-based line number.
Multigraph parse_edge_list(std::istream& in);
Multigraph parse_edge_list_file(const std::string& path);

std::string format_edge_list(const Multigraph& g);

/// The JSON artifact emitted by decompose and consumed by verify/export.
struct ResultDocument {
    int k = 0;
    int d = 0;
    Rational threshold_value;
    bool is_decomposition = true;
    std::vector<std::vector<int>> parts;  // decomposition branch
    int special_index = 0;
    std::vector<int> witness_vertices;  // certificate branch
    Rational witness_density;
    DecomposeStats stats;

    Decomposition decomposition() const;
    DensityCertificate certificate(const Params& p) const;
};

ResultDocument make_result_document(const Params& p, const DecomposeResult& result);

std::string result_to_json(const ResultDocument& doc);

/// Throws SchemaError on anything that does not match the schema.
ResultDocument result_from_json(const std::string& text);

/// DOT rendering of a decomposition document: special-part edges dashed
/// red, the other parts one pen colour each. Throws SchemaError for
/// certificate documents.
std::string export_dot(const Multigraph& g, const ResultDocument& doc);

}  // namespace pfd
