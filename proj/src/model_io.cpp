#include "sparsebn/model_io.hpp"

#include <fstream>
#include <sstream>

#include "sparsebn/expert.hpp"

namespace sparsebn {

Dag parse_model(std::istream& in, const std::string& source) {
    Dag dag;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream words(raw);
        std::string keyword;
        if (!(words >> keyword)) continue;
        std::vector<std::string> args;
        for (std::string w; words >> w;) {
            if (!valid_node_name(w))
                throw ParseError(source, line_no, "invalid node name '" + w + "'");
            args.push_back(std::move(w));
        }
        if (keyword == "node") {
            if (args.size() != 1) throw ParseError(source, line_no, "node expects 1 name");
            if (dag.contains(args[0]))
                throw ParseError(source, line_no, "duplicate node '" + args[0] + "'");
            dag.add_node(args[0]);
        } else if (keyword == "arc") {
            if (args.size() != 2) throw ParseError(source, line_no, "arc expects 2 names");
            for (const auto& a : args)
                if (!dag.contains(a))
                    throw ParseError(source, line_no, "undeclared node '" + a + "'");
            try {
                dag.add_arc(dag.id(args[0]), dag.id(args[1]));
            } catch (const CycleError& e) {
                throw ParseError(source, line_no, e.what());
            }
        } else {
            throw ParseError(source, line_no, "unknown keyword '" + keyword + "'");
        }
    }
    return dag;
}

Dag read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return parse_model(in, path);
}

void write_model(std::ostream& out, const Dag& dag) {
    for (const auto& n : dag.names()) out << "node " << n << '\n';
    for (auto [p, c] : dag.arcs()) out << "arc " << dag.name(p) << ' ' << dag.name(c) << '\n';
}

namespace {

std::string names_of(const Dag& dag, const NodeSet& set) {
    std::string out = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i) out += ", ";
        out += dag.name(set[i]);
    }
    return out + "}";
}

}  // namespace

void write_report(std::ostream& out, const BuildResult& result, const ReportOptions& opts) {
    const Dag& net = result.network;
    out << "insertion order:";
    for (NodeId v : result.node_order) out << ' ' << net.name(v);
    out << '\n';
    out << "parents:\n";
    for (NodeId v : result.node_order)
        out << "  " << net.name(v) << " <- " << names_of(net, result.strata[v]) << '\n';
    out << "arcs: " << net.arc_count() << '\n';
    if (opts.include_cost) out << "oracle calls: " << result.oracle_calls << '\n';
    out << "minimal I-map guaranteed: " << (result.minimality_guaranteed ? "yes" : "no") << '\n';
    out << "warnings: " << result.warnings.size() << '\n';
    for (const auto& w : result.warnings)
        out << "  " << to_string(w.kind) << ' ' << net.name(w.node) << ": " << w.detail << '\n';
}

std::string format_report(const BuildResult& result, const ReportOptions& opts) {
    std::ostringstream os;
    write_report(os, result, opts);
    return os.str();
}

}  // namespace sparsebn
