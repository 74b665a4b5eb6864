#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

int main(int argc, char **argv) {
    CLI::App app{"nosig: local maps on entangled qubit pairs and the no-signalling condition"};
    app.require_subcommand(1);

    nosig::cli::GlobalOptions opts;
    app.add_option("--tolerance", opts.tolerance, "trace-distance threshold for a SIGNALS verdict")
        ->check(CLI::PositiveNumber);

    auto *paper = app.add_subcommand("paper-examples", "reproduce the worked examples and check expected values");
    bool as_json = false;
    paper->add_flag("--json", as_json, "emit a JSON report instead of a table");

    auto *run = app.add_subcommand("run", "run a configured signalling experiment");
    std::string run_config;
    std::optional<std::string> run_out;
    run->add_option("--config", run_config, "experiment config (JSON)")->required();
    run->add_option("--out", run_out, "write the report here instead of stdout");

    auto *classify = app.add_subcommand("classify", "classify the configured Bob map");
    std::string classify_config;
    classify->add_option("--config", classify_config, "config with a bob_map (JSON)")->required();

    auto *scan = app.add_subcommand("scan", "maximize the no-signalling distance over random basis pairs");
    std::string scan_config;
    int pairs = 100;
    std::uint64_t seed = 1;
    scan->add_option("--config", scan_config, "config with shared_state and bob_map (JSON)")->required();
    scan->add_option("--pairs", pairs, "number of basis pairs")->check(CLI::PositiveNumber);
    scan->add_option("--seed", seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : nosig::cli::kExitConfig;
    }

    if (*paper) {
        return nosig::cli::cmd_paper_examples(std::cout, std::cerr, opts, as_json);
    }
    if (*run) {
        return nosig::cli::cmd_run(run_config, run_out, std::cout, std::cerr, opts);
    }
    if (*classify) {
        return nosig::cli::cmd_classify(classify_config, std::cout, std::cerr, opts);
    }
    return nosig::cli::cmd_scan(scan_config, pairs, seed, std::cout, std::cerr, opts);
}
