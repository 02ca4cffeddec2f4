#include <iostream>

#include <CLI11.hpp>

#include "sparsebn/commands.hpp"

int main(int argc, char** argv) {
    namespace cli = sparsebn::cli;
    CLI::App app{"Build sparse Bayesian networks from an independence model and expert knowledge"};
    app.require_subcommand(1);

    cli::BuildArgs build;
    std::size_t max_parents = 0;
    auto* cmd_build = app.add_subcommand("build", "build a network and print the build report");
    cmd_build->add_option("model", build.model_path, "model file used as the independence oracle")
        ->required();
    cmd_build->add_option("expert", build.expert_path, "expert statement file");
    cmd_build->add_option("-o,--out", build.out_path, "write the built network here");
    auto* mp = cmd_build->add_option("--max-parents", max_parents, "largest stratum searched");
    cmd_build->add_flag("--trust-expert", build.trust_expert,
                        "only search strata containing the declared causes");
    cmd_build->add_flag("--no-cache", build.no_cache, "disable the failed-subset cache");

    std::string dsep_model, x, z, y;
    auto* cmd_dsep = app.add_subcommand("dsep", "test d-separation of X and Y given Z");
    cmd_dsep->add_option("model", dsep_model)->required();
    cmd_dsep->add_option("-x", x, "comma separated names")->required();
    cmd_dsep->add_option("-z", z, "comma separated names (may be empty)");
    cmd_dsep->add_option("-y", y, "comma separated names")->required();

    cli::ExperimentArgs exp;
    auto* cmd_exp = app.add_subcommand("experiment", "expert-information sensitivity study");
    auto* model_opt = cmd_exp->add_option("model", exp.model_path, "ground-truth model file");
    auto* random_opt =
        cmd_exp->add_option("--random", exp.random_spec, "random ground truth \"nodes,arcs,seed\"");
    model_opt->excludes(random_opt);
    cmd_exp->add_option("--trials", exp.trials)->default_val(1);
    cmd_exp->add_option("--deletions", exp.deletions_per_step, "cause statements removed per step")
        ->default_val(1);
    cmd_exp->add_option("--seed", exp.seed)->default_val(0);
    cmd_exp->add_option("--out", exp.out_path, "CSV output path (default: stdout)");
    cmd_exp->add_flag("--serial", exp.serial, "run trials on one thread");

    std::string verify_model, candidate;
    auto* cmd_verify = app.add_subcommand("verify", "check that a network is a minimal I-map");
    cmd_verify->add_option("model", verify_model)->required();
    cmd_verify->add_option("candidate", candidate)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kUsage;
    }

    if (*cmd_build) {
        if (mp->count()) build.max_parents = max_parents;
        return cli::cmd_build(build, std::cout, std::cerr);
    }
    if (*cmd_dsep) return cli::cmd_dsep(dsep_model, x, z, y, std::cout, std::cerr);
    if (*cmd_exp) {
        if (exp.model_path.empty() && exp.random_spec.empty()) {
            std::cerr << "error: give a model file or --random\n";
            return cli::kUsage;
        }
        return cli::cmd_experiment(exp, std::cout, std::cerr);
    }
    return cli::cmd_verify(verify_model, candidate, std::cout, std::cerr);
}
