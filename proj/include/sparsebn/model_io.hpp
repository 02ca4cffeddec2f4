#pragma once

#include <iosfwd>
#include <string>

#include "sparsebn/builder.hpp"
#include "sparsebn/dag.hpp"

namespace sparsebn {

/// Model files: `node <name>` declarations and `arc <parent> <child>` lines,
/// `#` comments, blank lines ignored. Arc endpoints must already be declared.
/// Errors are reported as ParseError with the offending line.
Dag parse_model(std::istream& in, const std::string& source);
Dag read_model_file(const std::string& path);

/// Nodes in index order, then arcs ordered by (parent, child) index.
void write_model(std::ostream& out, const Dag& dag);

struct ReportOptions {
    /// Include the oracle-call count (the only cost-dependent line).
    bool include_cost = true;
};

/// Human-readable build summary. Deterministic for a given result.
void write_report(std::ostream& out, const BuildResult& result, const ReportOptions& opts = {});
std::string format_report(const BuildResult& result, const ReportOptions& opts = {});

}  // namespace sparsebn
