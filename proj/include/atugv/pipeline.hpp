#pragma once

// build -> plan -> validate -> simulate, producing a plain-text report and
// the trajectory/elbow CSVs. The report format is documented in
// docs/formats.md.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atugv/scenario.hpp"

namespace atugv {

enum class Verdict { Safe, Unsafe, NotEvaluated, Unverified };

const char* to_string(Verdict verdict);

struct Report {
    std::string scenario;
    std::string command;
    int cells = 0;
    int layers = 0;
    double cell_radius = 0.0;
    double d_min = 0.0;
    double lambda_min = 0.0;

    Verdict strain = Verdict::NotEvaluated;
    std::string strain_detail;
    Verdict reach = Verdict::NotEvaluated;
    std::string reach_detail;
    Verdict clearance = Verdict::NotEvaluated;
    std::optional<double> min_clearance;

    bool simulated = false;
    Verdict simulation = Verdict::NotEvaluated;
    std::string simulation_detail;
    std::vector<std::pair<CellId, double>> terminal_errors;
    Verdict tracking = Verdict::NotEvaluated;
    std::optional<double> max_terminal_error;
    double error_threshold = 0.0;

    bool passed() const;
    int exit_code() const { return passed() ? 0 : 1; }
    std::string text() const;
};

// Plan and safety checks only; writes nothing.
Report validate_scenario(const Scenario& scenario);

// Full pipeline. Writes trajectory.csv, elbow.csv and report.txt into
// output_dir (created if missing) when the plan is accepted; a rejected plan
// produces only report.txt. Throws Error(Io) if files cannot be written.
Report run_pipeline(const Scenario& scenario, const std::filesystem::path& output_dir);

// Reference positions, d_min and lambda_min as plain text.
std::string reference_summary(const Scenario& scenario);

}  // namespace atugv
