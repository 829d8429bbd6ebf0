// atugv command-line driver. Links only the C interface.
//
// Exit status: 0 all verdicts pass, 1 a verdict failed (report printed),
// 2 bad usage or scenario, 3 runtime failure (I/O, internal).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "atugv/atugv.h"

#ifndef ATUGV_BUNDLED_SCENARIO_DIR
#define ATUGV_BUNDLED_SCENARIO_DIR ""
#endif

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string scenario;
    std::string output_dir;
    std::optional<int> samples;
    std::optional<double> dt;
    std::optional<long> seed;  // accepted for compatibility; runs are deterministic
    bool lenient = false;
};

// Accepts a path, or the name of a bundled scenario with or without ".cfg".
std::string resolve_scenario(const std::string& name) {
    if (fs::exists(name)) return name;
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("ATUGV_SCENARIO_DIR")) dirs.emplace_back(env);
    if (*ATUGV_BUNDLED_SCENARIO_DIR) dirs.emplace_back(ATUGV_BUNDLED_SCENARIO_DIR);
    for (const auto& dir : dirs) {
        for (const auto& candidate : {dir / name, dir / (name + ".cfg")}) {
            if (fs::exists(candidate)) return candidate.string();
        }
    }
    return name;
}

int input_error_exit(atugv_status status) {
    return status == ATUGV_ERR_IO || status == ATUGV_ERR_INTERNAL ? 3 : 2;
}

int report_error(const char* what, atugv_status status) {
    std::cerr << "atugv: " << what << ": " << atugv_status_name(status) << ": " << atugv_last_error() << '\n';
    return input_error_exit(status);
}

int execute(const std::string& command, const Options& opt) {
    atugv_scenario* scenario = nullptr;
    atugv_status status = atugv_scenario_load(resolve_scenario(opt.scenario).c_str(), opt.lenient ? 0 : 1, &scenario);
    if (status != ATUGV_OK) return report_error("cannot load scenario", status);

    struct Cleanup {
        atugv_scenario* s;
        atugv_report* r = nullptr;
        ~Cleanup() {
            atugv_report_free(r);
            atugv_scenario_free(s);
        }
    } cleanup{scenario};

    for (std::size_t k = 0; k < atugv_scenario_warning_count(scenario); ++k) {
        std::cerr << "atugv: warning: " << atugv_scenario_warning(scenario, k) << '\n';
    }
    if (opt.samples && (status = atugv_scenario_set_samples(scenario, *opt.samples)) != ATUGV_OK) {
        return report_error("--samples", status);
    }
    if (opt.dt && (status = atugv_scenario_set_dt(scenario, *opt.dt)) != ATUGV_OK) {
        return report_error("--dt", status);
    }

    if (command == "run") {
        std::string out_dir = opt.output_dir;
        if (out_dir.empty()) {
            const char* env = std::getenv("ATUGV_OUTPUT_DIR");
            out_dir = env && *env ? env : ".";
        }
        status = atugv_run(scenario, out_dir.c_str(), &cleanup.r);
    } else if (command == "validate") {
        status = atugv_validate(scenario, &cleanup.r);
    } else {
        status = atugv_reference(scenario, &cleanup.r);
    }
    if (status != ATUGV_OK) return report_error(command.c_str(), status);

    std::cout << atugv_report_text(cleanup.r);
    return atugv_report_passed(cleanup.r) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plan, validate and simulate affine transformations of multi-cell ground vehicles"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(atugv_version()));

    Options opt;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("scenario", opt.scenario, "Scenario file or bundled scenario name")->required();
        sub->add_option("--samples", opt.samples, "Number of plan samples (>= 2)");
        sub->add_option("--dt", opt.dt, "Simulation timestep in seconds");
        sub->add_option("--seed", opt.seed, "Reserved; the pipeline is deterministic");
        sub->add_flag_function("--strict,!--lenient", [&](std::int64_t count) { opt.lenient = count < 0; },
                      "Reject (strict, default) or ignore (lenient) unknown scenario keys");
    };

    CLI::App* run = app.add_subcommand("run", "Plan, check safety, simulate and write CSVs plus report");
    add_common(run);
    run->add_option("--output-dir", opt.output_dir, "Output directory (default: $ATUGV_OUTPUT_DIR or .)");
    add_common(app.add_subcommand("validate", "Plan and check safety only; no trace files"));
    add_common(app.add_subcommand("reference", "Print the reference configuration, d_min and lambda_min"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return execute(app.get_subcommands().front()->get_name(), opt);
}
