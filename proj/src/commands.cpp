#include "sparsebn/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sparsebn/builder.hpp"
#include "sparsebn/dsep.hpp"
#include "sparsebn/expert.hpp"
#include "sparsebn/harness.hpp"
#include "sparsebn/model_io.hpp"
#include "sparsebn/verify.hpp"

namespace sparsebn::cli {

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = item.find_last_not_of(" \t");
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

NodeSet resolve(const Dag& dag, const std::string& list) {
    std::vector<NodeId> ids;
    for (const auto& name : split_list(list)) ids.push_back(dag.id(name));
    return NodeSet::from_unsorted(std::move(ids));
}

}  // namespace

int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err) {
    Dag model;
    std::vector<ExpertStatement> statements;
    std::vector<std::size_t> lines;
    try {
        model = read_model_file(args.model_path);
        if (!args.expert_path.empty()) {
            std::ifstream in(args.expert_path);
            if (!in) throw ParseError(args.expert_path, 0, "cannot open file");
            statements = parse_statements(in, args.expert_path, &lines);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    std::optional<ExpertInfo> info;
    try {
        info = compile(statements, model.names());
    } catch (const ContradictionError& e) {
        err << "contradictions in expert information (" << e.report().size() << "):\n";
        for (const auto& c : e.report())
            err << "  " << args.expert_path << ':' << lines.at(c.statement) << ": "
                << to_string(c.kind) << ": " << c.detail << '\n';
        return kFailed;
    }
    if (args.max_parents && *args.max_parents == 0) {
        err << "error: --max-parents must be at least 1\n";
        return kUsage;
    }

    DsepOracle oracle(model, info->declared_independencies());
    BuildConfig config;
    config.max_parents = args.max_parents;
    config.use_cache = !args.no_cache;
    config.trust_expert = args.trust_expert;
    const BuildResult result = build(oracle, *info, config);

    write_report(out, result);
    if (!args.out_path.empty()) {
        std::ofstream file(args.out_path);
        if (!file) {
            err << "error: " << args.out_path << ":0: cannot write file\n";
            return kUsage;
        }
        write_model(file, result.network);
    }
    return kOk;
}

int cmd_dsep(const std::string& model_path, const std::string& x, const std::string& z,
             const std::string& y, std::ostream& out, std::ostream& err) {
    try {
        const Dag model = read_model_file(model_path);
        const DsepQuery q{resolve(model, x), resolve(model, z), resolve(model, y)};
        out << (d_separated(model, q) ? "d-separated" : "not d-separated") << '\n';
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const UnknownNode& e) {
        err << "error: " << e.what() << '\n';
    } catch (const InvalidQuery& e) {
        err << "error: " << e.what() << '\n';
    }
    return kUsage;
}

int cmd_experiment(const ExperimentArgs& args, std::ostream& out, std::ostream& err) {
    Dag truth;
    try {
        if (!args.model_path.empty()) {
            truth = read_model_file(args.model_path);
        } else {
            const auto fields = split_list(args.random_spec);
            if (fields.size() != 3) {
                err << "error: --random expects \"nodes,arcs,seed\"\n";
                return kUsage;
            }
            RandomDagSpec spec;
            spec.node_count = std::stoul(fields[0]);
            spec.arc_count = std::stoul(fields[1]);
            spec.seed = std::stoull(fields[2]);
            truth = random_dag(spec);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InfeasibleSpec& e) {
        err << "error: infeasible random spec: " << e.what() << '\n';
        return kUsage;
    } catch (const std::logic_error&) {
        err << "error: --random fields must be non-negative integers\n";
        return kUsage;
    }
    if (args.trials == 0 || args.deletions_per_step == 0) {
        err << "error: --trials and --deletions must be at least 1\n";
        return kUsage;
    }

    ExperimentConfig config;
    config.trials = args.trials;
    config.deletions_per_step = args.deletions_per_step;
    config.seed = args.seed;
    const auto records = args.serial ? sensitivity_experiment_serial(truth, config)
                                     : sensitivity_experiment(truth, config);

    if (args.out_path.empty()) {
        write_csv(out, records);
    } else {
        std::ofstream file(args.out_path);
        if (!file) {
            err << "error: " << args.out_path << ":0: cannot write file\n";
            return kUsage;
        }
        write_csv(file, records);
    }

    const TrendReport trend = analyse_trends(records);
    auto verdict = [](bool ok) { return ok ? "pass" : "FAIL"; };
    std::ostream& summary = args.out_path.empty() ? err : out;
    summary << "records=" << records.size() << " nodes=" << truth.node_count()
        << " arcs=" << truth.arc_count() << " endpoint_identity=" << verdict(trend.endpoint_exact)
        << " arc_trend=" << verdict(trend.arcs_non_increasing)
        << " call_trend=" << verdict(trend.calls_non_increasing) << '\n';
    return kOk;
}

int cmd_verify(const std::string& model_path, const std::string& candidate_path,
               std::ostream& out, std::ostream& err) {
    Dag model, candidate;
    try {
        model = read_model_file(model_path);
        candidate = read_model_file(candidate_path);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    const auto& names = candidate.names();
    const bool same_nodes =
        candidate.node_count() == model.node_count() &&
        std::all_of(names.begin(), names.end(), [&](const auto& n) { return model.contains(n); });
    if (!same_nodes) {
        err << "error: " << candidate_path << " and " << model_path
            << " declare different node sets\n";
        return kUsage;
    }
    if (model.node_count() > kVerifyNodeLimit) {
        err << "error: " << model.node_count()
            << " nodes is too large for exhaustive verification (limit "
            << kVerifyNodeLimit << ")\n";
        return kTooLarge;
    }

    // Re-index the candidate onto the model's node order.
    Dag network(model.names());
    for (auto [p, c] : candidate.arcs())
        network.add_arc(model.id(candidate.name(p)), model.id(candidate.name(c)));

    const DsepOracle oracle(model);
    const bool imap = is_imap(network, oracle);
    const bool minimal = imap && is_minimal_imap(network, oracle);
    out << "I-map: " << (imap ? "yes" : "no") << '\n';
    out << "minimal I-map: " << (minimal ? "yes" : "no") << '\n';
    return minimal ? kOk : kFailed;
}

}  // namespace sparsebn::cli
