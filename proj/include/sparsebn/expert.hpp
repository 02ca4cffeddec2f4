#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sparsebn/dag.hpp"
#include "sparsebn/oracle.hpp"

namespace sparsebn {

// Expert statements, by variable name.
struct Hypothesis {
    std::string node;
    friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};
struct Evidence {
    std::string node;
    friend bool operator==(const Evidence&, const Evidence&) = default;
};
struct CauseOf {
    std::string cause;
    std::string effect;
    friend bool operator==(const CauseOf&, const CauseOf&) = default;
};
struct CausedBy {
    std::string effect;
    std::string cause;
    friend bool operator==(const CausedBy&, const CausedBy&) = default;
};
struct Independence {
    std::vector<std::string> x;
    std::vector<std::string> z;
    std::vector<std::string> y;
    friend bool operator==(const Independence&, const Independence&) = default;
};

using ExpertStatement = std::variant<Hypothesis, Evidence, CauseOf, CausedBy, Independence>;

/// Parse error carrying the source name and 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
          source_(std::move(source)), line_(line) {}
    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

bool valid_node_name(std::string_view name);

/// Reads the line-based statement grammar:
///   hypothesis <name> | evidence <name> | cause <cause> <effect>
///   causedby <effect> <cause> | indep <names> | <names> | <names>
/// Names in `indep` are comma separated; the middle field may be empty.
/// `lines`, when given, receives the 1-based source line of each statement.
std::vector<ExpertStatement> parse_statements(std::istream& in, const std::string& source,
                                              std::vector<std::size_t>* lines = nullptr);
std::string to_string(const ExpertStatement& s);

enum class ContradictionKind {
    CauseCycle,
    HypothesisWithCause,
    EvidenceWithEffect,
    HypothesisEvidenceClash,
    UnknownName,
    InvalidIndependence,
};

std::string_view to_string(ContradictionKind k);

struct Contradiction {
    ContradictionKind kind;
    std::vector<std::string> nodes;
    std::string detail;
    /// Index of the statement that exposed the contradiction.
    std::size_t statement = 0;
};

using ContradictionReport = std::vector<Contradiction>;

class ContradictionError : public std::runtime_error {
public:
    explicit ContradictionError(ContradictionReport report);
    const ContradictionReport& report() const noexcept { return report_; }

private:
    ContradictionReport report_;
};

enum class Priority { Higher, Lower, Same };

/// Compiled expert knowledge over a fixed universe. The info DAG shares node
/// indices with every other Dag built from the same universe.
class ExpertInfo {
public:
    /// No statements: every pair of variables compares Same.
    explicit ExpertInfo(const std::vector<std::string>& universe);

    const Dag& info_dag() const noexcept { return dag_; }
    const NodeSet& hypothesis_set() const noexcept { return hypotheses_; }
    const NodeSet& evidence_set() const noexcept { return evidence_; }
    const std::vector<IndependenceTriple>& declared_independencies() const noexcept {
        return declared_;
    }
    const NodeSet& declared_causes(NodeId v) const { return dag_.parents(v); }
    bool is_ancestor(NodeId a, NodeId b) const { return ancestors_.at(b).contains(a); }

    friend bool operator==(const ExpertInfo& a, const ExpertInfo& b) {
        return a.dag_ == b.dag_ && a.hypotheses_ == b.hypotheses_ &&
               a.evidence_ == b.evidence_ && a.declared_ == b.declared_;
    }

private:
    friend ExpertInfo compile(const std::vector<ExpertStatement>&,
                              const std::vector<std::string>&);
    void refresh_ancestors();

    Dag dag_;
    NodeSet hypotheses_;
    NodeSet evidence_;
    std::vector<IndependenceTriple> declared_;
    std::vector<NodeSet> ancestors_;
};

/// Throws ContradictionError listing every contradiction found.
ExpertInfo compile(const std::vector<ExpertStatement>& statements,
                   const std::vector<std::string>& universe);

/// Rules, first match wins: hypothesis over non-hypothesis, evidence under
/// non-evidence, ancestor over descendant in the info DAG, otherwise Same.
Priority priority_compare(const ExpertInfo& info, NodeId a, NodeId b);

/// Candidates that no other candidate outranks. Pairwise only; Higher is not
/// closed transitively.
NodeSet maximal_candidates(const ExpertInfo& info, const NodeSet& candidates);

}  // namespace sparsebn
