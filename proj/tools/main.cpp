#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pfd/decomposer.hpp"
#include "pfd/density.hpp"
#include "pfd/gen.hpp"
#include "pfd/io.hpp"
#include "pfd/orient.hpp"
#include "pfd/verify.hpp"

namespace {

// exit codes: 0 ok/decomposition, 1 verification violation, 2 usage/parse/
// schema error, 3 certificate, 4 iteration cap, 5 internal inconsistency
constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCertificate = 3;
constexpr int kExitIterationCap = 4;
constexpr int kExitInternal = 5;

pfd::Multigraph load_graph(const std::string& path) {
    return pfd::parse_edge_list_file(path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_mad(const std::string& file) {
    pfd::Multigraph g = load_graph(file);
    pfd::DensityWitness w = pfd::mad_exact(g);
    std::cout << w.density.str() << "\n";
    std::cout << "vertices:";
    for (int v : w.vertices) std::cout << " " << v;
    std::cout << "\n";
    return kExitOk;
}

int cmd_orient(const std::string& file, int cap) {
    pfd::Multigraph g = load_graph(file);
    pfd::OrientationResult r = pfd::hakimi_orient(g, cap);
    nlohmann::ordered_json j;
    j["cap"] = cap;
    if (r.state) {
        j["result"] = "orientation";
        j["max_out_degree"] = r.state->max_out_degree();
        auto arcs = nlohmann::ordered_json::array();
        for (int e = 0; e < g.edge_count(); ++e)
            arcs.push_back({r.state->tail(e), r.state->head(e)});
        j["arcs"] = arcs;
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    j["result"] = "witness";
    j["witness_vertices"] = r.witness->vertices;
    j["witness_density"] = r.witness->density.str();
    std::cout << j.dump(2) << "\n";
    return kExitCertificate;
}

int cmd_decompose(const std::string& file, int k, int d, uint64_t seed, uint64_t max_iters,
                  bool assert_potential) {
    pfd::Multigraph g = load_graph(file);
    pfd::Params p = pfd::Params::make(k, d);
    if (!p.guarantee && d != 1)
        std::cerr << "warning: d=" << d << " lies outside [2, " << (2 * k + 2)
                  << "]; decomposition is best-effort\n";
    pfd::DecomposeOptions options;
    options.max_iterations = max_iters;
    options.assert_potential = assert_potential;
    try {
        pfd::DecomposeResult result = pfd::decompose(g, p, seed, options);
        std::cout << pfd::result_to_json(pfd::make_result_document(p, result));
        return result.decomposition ? kExitOk : kExitCertificate;
    } catch (const pfd::IterationCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIterationCap;
    }
}

int cmd_verify(const std::string& graph_file, const std::string& result_file, int k, int d) {
    pfd::Multigraph g = load_graph(graph_file);
    pfd::ResultDocument doc = pfd::result_from_json(read_file(result_file));
    if (doc.k != k || doc.d != d)
        throw pfd::SchemaError("document parameters (k=" + std::to_string(doc.k) +
                               ", d=" + std::to_string(doc.d) + ") do not match the command line");
    pfd::Params p = pfd::Params::make(k, d);
    std::optional<pfd::VerifyViolation> violation;
    if (doc.is_decomposition)
        violation = pfd::verify_decomposition(g, doc.decomposition(), p);
    else
        violation = pfd::verify_certificate(g, doc.certificate(p), p);
    if (violation) {
        std::cout << "violation: " << violation->what << "\n";
        return kExitViolation;
    }
    std::cout << "ok\n";
    return kExitOk;
}

int cmd_export_dot(const std::string& graph_file, const std::string& result_file) {
    pfd::Multigraph g = load_graph(graph_file);
    pfd::ResultDocument doc = pfd::result_from_json(read_file(result_file));
    std::cout << pfd::export_dot(g, doc);
    return kExitOk;
}

int cmd_gen(const std::string& kind, int n, int k, int d, uint64_t seed, int tries,
            const std::string& out_path, const std::string& meta_path) {
    pfd::GeneratedInstance inst;
    if (kind == "pseudoforest-union")
        inst = pfd::gen_pseudoforest_union(n, k, d, seed);
    else if (kind == "below")
        inst = pfd::gen_below_threshold(n, k, d, seed, tries);
    else if (kind == "above")
        inst = pfd::gen_above_threshold(n, k, d, seed);
    else
        throw CLI::ValidationError("--kind must be pseudoforest-union, below or above");

    std::string graph_text = pfd::format_edge_list(inst.graph);
    if (out_path.empty() || out_path == "-") {
        std::cout << graph_text;
    } else {
        std::ofstream out(out_path);
        out << graph_text;
    }

    nlohmann::ordered_json meta;
    meta["kind"] = kind;
    meta["n"] = n;
    meta["k"] = k;
    meta["d"] = d;
    meta["seed"] = seed;
    if (inst.witness) {
        meta["witness_vertices"] = inst.witness->vertices;
        meta["witness_density"] = inst.witness->density.str();
    }
    if (inst.planted) {
        meta["planted_parts"] = inst.planted->parts;
        meta["planted_special_index"] = inst.planted->special_index;
    }
    if (!meta_path.empty()) {
        std::ofstream out(meta_path);
        out << meta.dump(2) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudoforest decomposition toolkit"};
    app.require_subcommand(1);

    std::string graph_file, result_file, out_path, meta_path, kind = "below";
    int k = 1, d = 2, cap = 1, n = 10, tries = 200;
    uint64_t seed = 0, max_iters = 0;
    bool assert_potential = false;

    auto* mad = app.add_subcommand("mad", "exact maximum average degree");
    mad->add_option("file", graph_file)->required();

    auto* orient = app.add_subcommand("orient", "bounded out-degree orientation");
    orient->add_option("file", graph_file)->required();
    orient->add_option("--cap", cap, "out-degree cap")->required();

    auto* decomp = app.add_subcommand("decompose", "decompose into k+1 pseudoforests");
    decomp->add_option("file", graph_file)->required();
    decomp->add_option("--k", k)->required();
    decomp->add_option("--d", d)->required();
    decomp->add_option("--seed", seed);
    decomp->add_option("--max-iters", max_iters);
    decomp->add_flag("--assert-potential", assert_potential);

    auto* verify = app.add_subcommand("verify", "check a result document against its graph");
    verify->add_option("graph", graph_file)->required();
    verify->add_option("result", result_file)->required();
    verify->add_option("--k", k)->required();
    verify->add_option("--d", d)->required();

    auto* dot = app.add_subcommand("export-dot", "render a decomposition as DOT");
    dot->add_option("graph", graph_file)->required();
    dot->add_option("result", result_file)->required();

    auto* gen = app.add_subcommand("gen", "generate test instances");
    gen->add_option("--kind", kind, "pseudoforest-union | below | above");
    gen->add_option("--n", n)->required();
    gen->add_option("--k", k)->required();
    gen->add_option("--d", d)->required();
    gen->add_option("--seed", seed);
    gen->add_option("--tries", tries);
    gen->add_option("-o,--out", out_path);
    gen->add_option("--meta", meta_path);

    try {
        app.parse(argc, argv);
        if (mad->parsed()) return cmd_mad(graph_file);
        if (orient->parsed()) return cmd_orient(graph_file, cap);
        if (decomp->parsed())
            return cmd_decompose(graph_file, k, d, seed, max_iters, assert_potential);
        if (verify->parsed()) return cmd_verify(graph_file, result_file, k, d);
        if (dot->parsed()) return cmd_export_dot(graph_file, result_file);
        if (gen->parsed()) return cmd_gen(kind, n, k, d, seed, tries, out_path, meta_path);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitUsage : kExitOk;
    } catch (const pfd::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pfd::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
