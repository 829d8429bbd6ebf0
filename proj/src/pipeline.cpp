#include "atugv/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "atugv/trace_io.hpp"

namespace atugv {

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Safe: return "SAFE";
        case Verdict::Unsafe: return "UNSAFE";
        case Verdict::NotEvaluated: return "NOT_EVALUATED";
        case Verdict::Unverified: return "UNVERIFIED";
    }
    return "UNKNOWN";
}

bool Report::passed() const {
    const bool plan_ok = strain == Verdict::Safe && reach == Verdict::Safe && clearance == Verdict::Safe;
    if (!simulated) return plan_ok;
    return plan_ok && simulation == Verdict::Safe && tracking == Verdict::Safe;
}

std::string Report::text() const {
    std::ostringstream out;
    const auto line = [&](const char* key, Verdict v, const std::string& detail) {
        out << key << ": " << to_string(v);
        if (!detail.empty()) out << ' ' << detail;
        out << '\n';
    };
    out << "atugv report\n";
    out << "scenario: " << scenario << '\n';
    out << "command: " << command << '\n';
    out << "cells: " << cells << '\n';
    out << "layers: " << layers << '\n';
    out << "cell_radius: " << format_number(cell_radius) << '\n';
    out << "d_min: " << format_number(d_min) << '\n';
    out << "lambda_min: " << format_number(lambda_min) << '\n';
    line("strain_bound", strain, strain_detail);
    line("mechanism_reach", reach, reach_detail);
    line("arm_collision", Verdict::Unverified, "bar/arm interference is not checked");
    line("min_clearance", clearance,
         min_clearance ? format_number(*min_clearance) + " required=" + format_number(2.0 * cell_radius) : "");
    if (simulated) {
        line("simulation", simulation, simulation_detail);
        for (const auto& [cell, err] : terminal_errors) {
            out << "terminal_error." << cell << ": " << format_number(err) << '\n';
        }
        line("max_terminal_error", tracking,
             max_terminal_error
                 ? format_number(*max_terminal_error) + " threshold=" + format_number(error_threshold)
                 : "");
    }
    out << "result: " << (passed() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

namespace {

Report base_report(const Scenario& s, const char* command) {
    Report r;
    r.scenario = s.name;
    r.command = command;
    r.cells = s.graph.cell_count();
    r.layers = s.graph.layer_count();
    r.cell_radius = s.graph.cell_radius();
    r.d_min = s.reference.d_min;
    r.lambda_min = lambda_min(s.graph.cell_radius(), s.reference.d_min);
    r.error_threshold = s.error_threshold;
    return r;
}

// Fills the plan-level verdicts; returns the plan when it was accepted.
std::optional<PlannedTrajectory> plan_and_check(const Scenario& s, Report& report) {
    PlannedTrajectory planned;
    try {
        planned = plan(s.plan, s.graph, s.reference, s.plan_options);
    } catch (const UnsafePlanError& e) {
        std::ostringstream detail;
        detail << "lambda" << e.verdict().violating_strain << "=" << format_number(e.verdict().min_strain)
               << " < lambda_min=" << format_number(e.lambda_min()) << " at t=" << format_number(e.time())
               << " (collision-avoidance strain bound violated)";
        report.strain = Verdict::Unsafe;
        report.strain_detail = detail.str();
        return std::nullopt;
    } catch (const JointError& e) {
        report.strain = Verdict::Safe;
        report.reach = Verdict::Unsafe;
        report.reach_detail = e.what();
        return std::nullopt;
    }

    double min_strain = 1.0;
    double min_distance = std::numeric_limits<double>::infinity();
    for (const DesiredState& state : planned.samples) {
        min_strain = std::min({min_strain, state.coords.lambda1, state.coords.lambda2});
        min_distance = std::min(min_distance, verify_pairwise_clearance(state.positions, s.graph.cell_radius()).min_distance);
    }
    report.strain = Verdict::Safe;
    report.strain_detail = "min_strain=" + format_number(min_strain);
    report.reach = Verdict::Safe;
    report.min_clearance = min_distance;
    report.clearance = min_distance >= 2.0 * s.graph.cell_radius() - kClearanceTolerance ? Verdict::Safe
                                                                                          : Verdict::Unsafe;
    return planned;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
}

template <typename Writer>
void write_csv(const std::filesystem::path& path, const SimulationTrace& trace, Writer writer) {
    std::ostringstream buffer;
    writer(buffer, trace);
    write_file(path, buffer.str());
}

}  // namespace

Report validate_scenario(const Scenario& scenario) {
    Report report = base_report(scenario, "validate");
    plan_and_check(scenario, report);
    return report;
}

Report run_pipeline(const Scenario& scenario, const std::filesystem::path& output_dir) {
    Report report = base_report(scenario, "run");
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + output_dir.string() + "'");

    if (plan_and_check(scenario, report)) {
        report.simulated = true;
        SimulationTrace trace;
        try {
            trace = run(scenario.graph, scenario.reference, scenario.plan, scenario.sim);
            report.simulation = Verdict::Safe;
            report.simulation_detail = "steps=" + std::to_string(trace.steps.size() - 1) +
                                       " model=" + to_string(scenario.sim.model);
        } catch (const SimulationError& e) {
            trace = e.partial_trace();
            report.simulation = Verdict::Unsafe;
            report.simulation_detail = e.what();
        }

        if (!trace.steps.empty()) {
            // Clearance over what the cells actually did, not only the plan.
            const double actual = trace.min_clearance();
            report.min_clearance = std::min(*report.min_clearance, actual);
            if (actual < 2.0 * scenario.graph.cell_radius() - kClearanceTolerance) report.clearance = Verdict::Unsafe;

            const auto errors = trace.terminal_errors();
            double worst = 0.0;
            for (std::size_t k = 0; k < errors.size(); ++k) {
                report.terminal_errors.emplace_back(static_cast<CellId>(k + 1), errors[k]);
                worst = std::max(worst, errors[k]);
            }
            report.max_terminal_error = worst;
            report.tracking = report.simulation == Verdict::Safe && worst < scenario.error_threshold
                                  ? Verdict::Safe
                                  : Verdict::Unsafe;
        }
        write_csv(output_dir / "trajectory.csv", trace, write_trajectory_csv);
        write_csv(output_dir / "elbow.csv", trace, write_elbow_csv);
    }
    write_file(output_dir / "report.txt", report.text());
    return report;
}

std::string reference_summary(const Scenario& scenario) {
    const auto& g = scenario.graph;
    const auto& ref = scenario.reference;
    const PairDistance closest = closest_pair(ref.positions);
    std::ostringstream out;
    out << "scenario: " << scenario.name << '\n';
    out << "cells: " << g.cell_count() << '\n';
    out << "layers: " << g.layer_count() << '\n';
    out << "side_length: " << format_number(scenario.side_length) << '\n';
    out << "cell_radius: " << format_number(g.cell_radius()) << '\n';
    out << "arm_length: " << format_number(g.arm_length()) << '\n';
    for (CellId cell = 1; cell <= g.cell_count(); ++cell) {
        const Vec2 a = ref.position(cell);
        out << "cell." << cell << ": layer=" << g.layer_of(cell) << ' '
            << (g.is_powered(cell) ? "powered" : "unpowered") << " x=" << format_number(a.x)
            << " y=" << format_number(a.y);
        if (g.is_interior(cell)) {
            const auto& n = g.neighbors(cell);
            const auto& act = g.actuated_neighbors(cell);
            out << " neighbors=" << n[0] << ',' << n[1] << ',' << n[2] << " actuated=" << act[0] << ','
                << act[1];
        }
        out << '\n';
    }
    out << "d_min: " << format_number(ref.d_min) << " pair=" << closest.first << ',' << closest.second << '\n';
    out << "lambda_min: " << format_number(lambda_min(g.cell_radius(), ref.d_min)) << '\n';
    return out.str();
}

}  // namespace atugv
