#include "sparsebn/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <random>

#include "sparsebn/verify.hpp"

namespace sparsebn {

Dag random_dag(const RandomDagSpec& spec) {
    const std::size_t n = spec.node_count;
    if (n == 0) throw InfeasibleSpec("random DAG needs at least one node");
    std::size_t capacity = 0;
    for (std::size_t pos = 0; pos < n; ++pos)
        capacity += spec.max_in_degree ? std::min(pos, *spec.max_in_degree) : pos;
    if (spec.arc_count > capacity)
        throw InfeasibleSpec(std::to_string(spec.arc_count) + " arcs do not fit in " +
                             std::to_string(n) + " nodes (at most " + std::to_string(capacity) +
                             ")");

    std::mt19937_64 rng(spec.seed);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("X" + std::to_string(i));
    Dag dag(names);

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::shuffle(order.begin(), order.end(), rng);

    // Forward pairs by position in the order; a full pass of the shuffled list
    // saturates every in-degree limit, so the greedy fill never stalls.
    std::vector<std::pair<std::size_t, std::size_t>> forward;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) forward.emplace_back(i, j);
    std::shuffle(forward.begin(), forward.end(), rng);

    std::vector<std::size_t> indegree(n, 0);
    std::size_t placed = 0;
    for (auto [i, j] : forward) {
        if (placed == spec.arc_count) break;
        if (spec.max_in_degree && indegree[j] >= *spec.max_in_degree) continue;
        dag.add_arc(order[i], order[j]);
        ++indegree[j];
        ++placed;
    }
    return dag;
}

std::vector<ExpertStatement> full_expert_info(const Dag& dag) {
    std::vector<ExpertStatement> out;
    for (NodeId v = 0; v < dag.node_count(); ++v) {
        if (dag.parents(v).empty()) out.emplace_back(Hypothesis{dag.name(v)});
        else if (dag.children(v).empty()) out.emplace_back(Evidence{dag.name(v)});
    }
    for (auto [p, c] : dag.arcs()) out.emplace_back(CauseOf{dag.name(p), dag.name(c)});
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::vector<ExperimentRecord> run_trial(const Dag& truth, const ExperimentConfig& config,
                                        std::size_t trial) {
    const std::uint64_t trial_seed = splitmix64(config.seed ^ splitmix64(trial));
    std::mt19937_64 rng(trial_seed);

    std::vector<ExpertStatement> labels, causes;
    for (auto& st : full_expert_info(truth))
        (std::holds_alternative<CauseOf>(st) ? causes : labels).push_back(std::move(st));
    // Deletion order; popping from the back removes a uniformly random
    // remaining statement each time.
    std::shuffle(causes.begin(), causes.end(), rng);

    const auto truth_arcs = truth.arcs();
    std::vector<ExperimentRecord> records;
    for (std::size_t step = 0;; ++step) {
        std::vector<ExpertStatement> statements = labels;
        statements.insert(statements.end(), causes.begin(), causes.end());
        const ExpertInfo info = compile(statements, truth.names());
        DsepOracle oracle(truth);

        const auto start = std::chrono::steady_clock::now();
        BuildResult built = build(oracle, info, config.build);
        const auto stop = std::chrono::steady_clock::now();

        ExperimentRecord rec;
        rec.trial = trial;
        rec.step = step;
        rec.expert_arc_count = causes.size();
        rec.rebuilt_arc_count = built.network.arc_count();
        rec.oracle_calls = built.oracle_calls;
        rec.exact_recovery = built.network.arcs() == truth_arcs;
        rec.trial_seed = trial_seed;
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        if (truth.node_count() <= 7) rec.imap_checked = is_imap_reference(built.network, oracle);
        records.push_back(rec);

        if (causes.empty()) break;
        const std::size_t drop = std::min(config.deletions_per_step, causes.size());
        causes.resize(causes.size() - drop);
    }
    return records;
}

void check_config(const ExperimentConfig& config) {
    if (config.trials == 0) throw std::invalid_argument("trials must be at least 1");
    if (config.deletions_per_step == 0)
        throw std::invalid_argument("deletions_per_step must be at least 1");
}

}  // namespace

std::vector<ExperimentRecord> sensitivity_experiment_serial(const Dag& ground_truth,
                                                            const ExperimentConfig& config) {
    check_config(config);
    std::vector<ExperimentRecord> out;
    for (std::size_t t = 0; t < config.trials; ++t) {
        auto recs = run_trial(ground_truth, config, t);
        out.insert(out.end(), recs.begin(), recs.end());
    }
    return out;
}

std::vector<ExperimentRecord> sensitivity_experiment(const Dag& ground_truth,
                                                     const ExperimentConfig& config) {
    check_config(config);
    std::vector<std::vector<ExperimentRecord>> per_trial(config.trials);
    const auto trials = static_cast<std::ptrdiff_t>(config.trials);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < trials; ++t)
        per_trial[t] = run_trial(ground_truth, config, static_cast<std::size_t>(t));

    std::vector<ExperimentRecord> out;
    for (auto& recs : per_trial) out.insert(out.end(), recs.begin(), recs.end());
    return out;
}

TrendReport analyse_trends(const std::vector<ExperimentRecord>& records) {
    TrendReport report;
    std::map<std::size_t, LevelMean> by_level;
    std::size_t full_level = 0;
    for (const auto& r : records) full_level = std::max(full_level, r.expert_arc_count);
    for (const auto& r : records) {
        auto& lvl = by_level[r.expert_arc_count];
        lvl.expert_arcs = r.expert_arc_count;
        ++lvl.samples;
        lvl.rebuilt_arcs += static_cast<double>(r.rebuilt_arc_count);
        lvl.oracle_calls += static_cast<double>(r.oracle_calls);
        if (r.step == 0 && !r.exact_recovery) report.endpoint_exact = false;
    }
    double max_calls = 0.0;
    for (auto& [_, lvl] : by_level) {
        lvl.rebuilt_arcs /= static_cast<double>(lvl.samples);
        lvl.oracle_calls /= static_cast<double>(lvl.samples);
        max_calls = std::max(max_calls, lvl.oracle_calls);
        report.levels.push_back(lvl);
    }
    const double call_slack = kCallTrendSlackFraction * max_calls;
    for (std::size_t i = 1; i < report.levels.size(); ++i) {
        const auto& lo = report.levels[i - 1];
        const auto& hi = report.levels[i];
        if (hi.rebuilt_arcs > lo.rebuilt_arcs + kArcTrendSlack) report.arcs_non_increasing = false;
        if (hi.oracle_calls > lo.oracle_calls + call_slack) report.calls_non_increasing = false;
    }
    return report;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << "trial,expert_arcs,rebuilt_arcs,oracle_calls,exact_recovery,elapsed_ms\n";
    char elapsed[32];
    for (const auto& r : records) {
        std::snprintf(elapsed, sizeof elapsed, "%.3f", r.elapsed_ms);
        out << r.trial << ',' << r.expert_arc_count << ',' << r.rebuilt_arc_count << ','
            << r.oracle_calls << ',' << (r.exact_recovery ? 1 : 0) << ',' << elapsed << '\n';
    }
}

}  // namespace sparsebn
