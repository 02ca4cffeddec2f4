#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace sparsebn::cli {

// Exit codes shared by all commands.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // contradiction, or verification verdict "no"
inline constexpr int kUsage = 2;   // parse errors, unknown names, bad arguments
inline constexpr int kTooLarge = 3;

inline constexpr std::size_t kVerifyNodeLimit = 10;

struct BuildArgs {
    std::string model_path;
    std::string expert_path;  // empty: no expert information
    std::string out_path;     // empty: do not write the network
    std::optional<std::size_t> max_parents;
    bool trust_expert = false;
    bool no_cache = false;
};

struct ExperimentArgs {
    std::string model_path;
    std::string random_spec;  // "n,arcs,seed"; used when model_path is empty
    std::size_t trials = 1;
    std::size_t deletions_per_step = 1;
    std::uint64_t seed = 0;
    std::string out_path;  // empty: CSV to `out`
    bool serial = false;
};

int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err);
/// Name lists are comma separated; `z` may be empty.
int cmd_dsep(const std::string& model_path, const std::string& x, const std::string& z,
             const std::string& y, std::ostream& out, std::ostream& err);
int cmd_experiment(const ExperimentArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& model_path, const std::string& candidate_path,
               std::ostream& out, std::ostream& err);

}  // namespace sparsebn::cli
