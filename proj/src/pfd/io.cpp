#include "pfd/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pfd {

using ordered_json = nlohmann::ordered_json;

Multigraph parse_edge_list(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;

    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (n < 0) {
            if (tag != "p") throw ParseError(lineno, "expected header 'p <n> <m>'");
            if (!(ls >> n >> m) || n < 0 || m < 0)
                throw ParseError(lineno, "malformed header 'p <n> <m>'");
            std::string rest;
            if (ls >> rest) throw ParseError(lineno, "trailing tokens after header");
            continue;
        }
        if (tag != "e") throw ParseError(lineno, "expected edge line 'e <u> <v>'");
        long long u, v;
        if (!(ls >> u >> v)) throw ParseError(lineno, "malformed edge line 'e <u> <v>'");
        std::string rest;
        if (ls >> rest) throw ParseError(lineno, "trailing tokens after edge");
        if ((long long)edges.size() == m) throw ParseError(lineno, "more than m edge lines");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(lineno, "edge endpoint out of range");
        if (u == v) throw ParseError(lineno, "loops are not allowed");
        edges.emplace_back((int)u, (int)v);
    }
    if (n < 0) throw ParseError(lineno ? lineno : 1, "missing header 'p <n> <m>'");
    if ((long long)edges.size() != m)
        throw ParseError(lineno ? lineno : 1,
                         "expected " + std::to_string(m) + " edges, found " +
                             std::to_string(edges.size()));
    return Multigraph((int)n, edges);
}

Multigraph parse_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_edge_list(in);
}

std::string format_edge_list(const Multigraph& g) {
    std::string out = "p " + std::to_string(g.vertex_count()) + " " +
                      std::to_string(g.edge_count()) + "\n";
    for (const Edge& e : g.edges())
        out += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    return out;
}

Decomposition ResultDocument::decomposition() const {
    if (!is_decomposition) throw SchemaError("document holds a certificate, not a decomposition");
    Decomposition dec;
    dec.parts = parts;
    dec.special_index = special_index;
    return dec;
}

DensityCertificate ResultDocument::certificate(const Params& p) const {
    if (is_decomposition) throw SchemaError("document holds a decomposition, not a certificate");
    DensityCertificate cert;
    cert.vertices = witness_vertices;
    // density determines the edge count: e = density * |S| / 2
    long long num = witness_density.num() * (long long)witness_vertices.size();
    long long den = 2 * witness_density.den();
    if (witness_vertices.empty() || num % den != 0)
        throw SchemaError("witness density is inconsistent with the vertex count");
    cert.edge_count = num / den;
    cert.density = witness_density;
    cert.claimed_bound = p.density_bound;
    return cert;
}

ResultDocument make_result_document(const Params& p, const DecomposeResult& result) {
    ResultDocument doc;
    doc.k = p.k;
    doc.d = p.d;
    doc.threshold_value = p.density_bound;
    doc.stats = result.stats;
    if (result.decomposition) {
        doc.is_decomposition = true;
        doc.parts = result.decomposition->parts;
        doc.special_index = result.decomposition->special_index;
    } else {
        doc.is_decomposition = false;
        doc.witness_vertices = result.certificate->vertices;
        doc.witness_density = result.certificate->density;
    }
    return doc;
}

std::string result_to_json(const ResultDocument& doc) {
    ordered_json j;
    j["k"] = doc.k;
    j["d"] = doc.d;
    j["threshold"] = doc.threshold_value.str();
    j["result"] = doc.is_decomposition ? "decomposition" : "certificate";
    if (doc.is_decomposition) {
        j["parts"] = doc.parts;
        j["special_index"] = doc.special_index;
    } else {
        j["witness_vertices"] = doc.witness_vertices;
        j["witness_density"] = doc.witness_density.str();
    }
    j["stats"] = {{"moves", doc.stats.moves},
                  {"flips", doc.stats.flips},
                  {"iterations", doc.stats.iterations},
                  {"seed", doc.stats.seed}};
    return j.dump(2) + "\n";
}

ResultDocument result_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    try {
        ResultDocument doc;
        doc.k = j.at("k").get<int>();
        doc.d = j.at("d").get<int>();
        doc.threshold_value = Rational::parse(j.at("threshold").get<std::string>());
        std::string result = j.at("result").get<std::string>();
        if (result == "decomposition") {
            doc.is_decomposition = true;
            doc.parts = j.at("parts").get<std::vector<std::vector<int>>>();
            doc.special_index = j.at("special_index").get<int>();
            if (j.contains("witness_vertices") || j.contains("witness_density"))
                throw SchemaError("decomposition document carries certificate fields");
        } else if (result == "certificate") {
            doc.is_decomposition = false;
            doc.witness_vertices = j.at("witness_vertices").get<std::vector<int>>();
            doc.witness_density = Rational::parse(j.at("witness_density").get<std::string>());
            if (j.contains("parts") || j.contains("special_index"))
                throw SchemaError("certificate document carries decomposition fields");
        } else {
            throw SchemaError("unknown result kind: " + result);
        }
        const auto& stats = j.at("stats");
        doc.stats.moves = stats.at("moves").get<uint64_t>();
        doc.stats.flips = stats.at("flips").get<uint64_t>();
        doc.stats.iterations = stats.at("iterations").get<uint64_t>();
        doc.stats.seed = stats.at("seed").get<uint64_t>();
        return doc;
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("schema mismatch: ") + e.what());
    }
}

std::string export_dot(const Multigraph& g, const ResultDocument& doc) {
    if (!doc.is_decomposition) throw SchemaError("nothing to draw for a certificate document");
    static const char* palette[] = {"blue", "darkgreen", "purple", "orange", "brown", "cadetblue"};
    std::string out = "digraph decomposition {\n  edge [dir=none];\n";
    for (int v = 0; v < g.vertex_count(); ++v) out += "  " + std::to_string(v) + ";\n";
    for (size_t i = 0; i < doc.parts.size(); ++i) {
        std::string style;
        if ((int)i == doc.special_index)
            style = "[style=dashed, color=red]";
        else
            style = std::string("[color=") + palette[i % 6] + "]";
        for (int e : doc.parts[i]) {
            out += "  " + std::to_string(g.edge(e).u) + " -> " + std::to_string(g.edge(e).v) +
                   " " + style + ";\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace pfd
