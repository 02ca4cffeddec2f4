#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sparsebn/builder.hpp"
#include "sparsebn/dag.hpp"
#include "sparsebn/expert.hpp"

namespace sparsebn {

class InfeasibleSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RandomDagSpec {
    std::size_t node_count = 0;
    std::size_t arc_count = 0;
    std::optional<std::size_t> max_in_degree;
    std::uint64_t seed = 0;
};

/// Nodes are named X0..X{n-1}. A random permutation fixes the topological
/// order and `arc_count` forward arcs are drawn without replacement.
Dag random_dag(const RandomDagSpec& spec);

/// A cause statement per arc, hypothesis for each root, evidence for each
/// leaf. Isolated nodes are labelled hypothesis only.
std::vector<ExpertStatement> full_expert_info(const Dag& dag);

struct ExperimentConfig {
    std::size_t trials = 1;
    std::size_t deletions_per_step = 1;
    std::uint64_t seed = 0;
    BuildConfig build;
};

struct ExperimentRecord {
    std::size_t trial = 0;
    std::size_t step = 0;
    std::size_t expert_arc_count = 0;
    std::size_t rebuilt_arc_count = 0;
    std::uint64_t oracle_calls = 0;
    bool exact_recovery = false;
    std::uint64_t trial_seed = 0;
    /// Informational only; never compared.
    double elapsed_ms = 0.0;
    /// Set for ground truths of at most 7 nodes.
    std::optional<bool> imap_checked;
};

/// Per trial: build from full expert information, then repeatedly delete
/// random cause statements (without replacement) and rebuild until none are
/// left. Trials run in parallel; records are ordered by (trial, step).
std::vector<ExperimentRecord> sensitivity_experiment(const Dag& ground_truth,
                                                     const ExperimentConfig& config);

/// Serial reference with the same output (apart from elapsed_ms).
std::vector<ExperimentRecord> sensitivity_experiment_serial(const Dag& ground_truth,
                                                            const ExperimentConfig& config);

struct LevelMean {
    std::size_t expert_arcs = 0;
    std::size_t samples = 0;
    double rebuilt_arcs = 0.0;
    double oracle_calls = 0.0;
};

struct TrendReport {
    std::vector<LevelMean> levels;  // ascending expert_arcs
    bool arcs_non_increasing = true;
    bool calls_non_increasing = true;
    bool endpoint_exact = true;
};

inline constexpr double kArcTrendSlack = 1.0;
inline constexpr double kCallTrendSlackFraction = 0.05;

/// Averages each expert-arc level over trials. Going from one level to the
/// next higher one, the mean rebuilt arcs may rise by at most kArcTrendSlack
/// and the mean oracle calls by at most kCallTrendSlackFraction of the
/// largest level mean. Endpoint: every full-information record is exact.
TrendReport analyse_trends(const std::vector<ExperimentRecord>& records);

/// Header: trial,expert_arcs,rebuilt_arcs,oracle_calls,exact_recovery,elapsed_ms
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

}  // namespace sparsebn
