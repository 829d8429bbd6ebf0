#include "atugv/atugv.h"

#include <new>
#include <string>

#include "atugv/affine_core.hpp"
#include "atugv/kinematics.hpp"
#include "atugv/pipeline.hpp"
#include "atugv/safety.hpp"

struct atugv_scenario {
    atugv::Scenario scenario;
};

struct atugv_report {
    std::string text;
    bool passed = false;
};

namespace {

thread_local std::string last_error;

atugv_status fail(atugv_status status, const std::string& message) {
    last_error = message;
    return status;
}

template <typename Fn>
atugv_status guarded(Fn&& fn) {
    try {
        fn();
        return ATUGV_OK;
    } catch (const atugv::Error& e) {
        return fail(static_cast<atugv_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(ATUGV_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ATUGV_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ATUGV_ERR_INTERNAL, "unknown exception");
    }
}

#define ATUGV_REQUIRE(cond, what) \
    if (!(cond)) return fail(ATUGV_ERR_INVALID_ARGUMENT, what)

atugv::ParseMode mode_of(int strict) { return strict ? atugv::ParseMode::Strict : atugv::ParseMode::Lenient; }

}  // namespace

extern "C" {

const char* atugv_version(void) { return "1.0.0"; }

const char* atugv_status_name(atugv_status status) {
    if (status == ATUGV_OK) return "ok";
    if (status == ATUGV_ERR_INTERNAL) return "internal-error";
    return atugv::to_string(static_cast<atugv::ErrorCode>(status));
}

const char* atugv_last_error(void) { return last_error.c_str(); }

atugv_status atugv_scenario_load(const char* path, int strict, atugv_scenario** out) {
    ATUGV_REQUIRE(path && out, "path and out must be non-null");
    *out = nullptr;
    return guarded([&] { *out = new atugv_scenario{atugv::load_scenario(path, mode_of(strict))}; });
}

atugv_status atugv_scenario_parse(const char* text, int strict, atugv_scenario** out) {
    ATUGV_REQUIRE(text && out, "text and out must be non-null");
    *out = nullptr;
    return guarded([&] { *out = new atugv_scenario{atugv::parse_scenario(text, mode_of(strict))}; });
}

void atugv_scenario_free(atugv_scenario* scenario) { delete scenario; }

atugv_status atugv_scenario_set_samples(atugv_scenario* scenario, int samples) {
    ATUGV_REQUIRE(scenario, "scenario must be non-null");
    ATUGV_REQUIRE(samples >= 2, "sample count must be at least 2");
    scenario->scenario.plan_options.sample_count = samples;
    return ATUGV_OK;
}

atugv_status atugv_scenario_set_dt(atugv_scenario* scenario, double dt) {
    ATUGV_REQUIRE(scenario, "scenario must be non-null");
    return guarded([&] {
        atugv::SimConfig sim = scenario->scenario.sim;
        sim.dt = dt;
        atugv::validate(sim, scenario->scenario.plan, scenario->scenario.graph);
        scenario->scenario.sim = sim;
    });
}

int atugv_scenario_cell_count(const atugv_scenario* scenario) {
    return scenario ? scenario->scenario.graph.cell_count() : 0;
}

size_t atugv_scenario_warning_count(const atugv_scenario* scenario) {
    return scenario ? scenario->scenario.warnings.size() : 0;
}

const char* atugv_scenario_warning(const atugv_scenario* scenario, size_t index) {
    if (!scenario || index >= scenario->scenario.warnings.size()) return nullptr;
    return scenario->scenario.warnings[index].c_str();
}

atugv_status atugv_run(const atugv_scenario* scenario, const char* output_dir, atugv_report** out) {
    ATUGV_REQUIRE(scenario && output_dir && out, "scenario, output_dir and out must be non-null");
    *out = nullptr;
    return guarded([&] {
        const atugv::Report report = atugv::run_pipeline(scenario->scenario, output_dir);
        *out = new atugv_report{report.text(), report.passed()};
    });
}

atugv_status atugv_validate(const atugv_scenario* scenario, atugv_report** out) {
    ATUGV_REQUIRE(scenario && out, "scenario and out must be non-null");
    *out = nullptr;
    return guarded([&] {
        const atugv::Report report = atugv::validate_scenario(scenario->scenario);
        *out = new atugv_report{report.text(), report.passed()};
    });
}

atugv_status atugv_reference(const atugv_scenario* scenario, atugv_report** out) {
    ATUGV_REQUIRE(scenario && out, "scenario and out must be non-null");
    *out = nullptr;
    return guarded([&] { *out = new atugv_report{atugv::reference_summary(scenario->scenario), true}; });
}

const char* atugv_report_text(const atugv_report* report) { return report ? report->text.c_str() : ""; }

int atugv_report_passed(const atugv_report* report) { return report && report->passed ? 1 : 0; }

void atugv_report_free(atugv_report* report) { delete report; }

atugv_status atugv_jacobian(const atugv_coordinates* c, double out[4]) {
    ATUGV_REQUIRE(c && out, "coords and out must be non-null");
    return guarded([&] {
        const auto q = atugv::jacobian(
            atugv::GeneralizedCoordinates{c->lambda1, c->lambda2, c->sigma_r, c->sigma_d, c->d1, c->d2});
        out[0] = q.xx;
        out[1] = q.xy;
        out[2] = q.yx;
        out[3] = q.yy;
    });
}

atugv_status atugv_decompose(const double jacobian[4], atugv_coordinates* out) {
    ATUGV_REQUIRE(jacobian && out, "jacobian and out must be non-null");
    return guarded([&] {
        const auto p = atugv::decompose({jacobian[0], jacobian[1], jacobian[2], jacobian[3]});
        *out = {p.lambda1, p.lambda2, p.sigma_r, p.sigma_d, 0.0, 0.0};
    });
}

atugv_status atugv_lambda_min(double cell_radius, double d_min, double* out) {
    ATUGV_REQUIRE(out, "out must be non-null");
    return guarded([&] { *out = atugv::lambda_min(cell_radius, d_min); });
}

atugv_status atugv_elbow_angle(double distance, double arm_length, double cell_radius, double* out) {
    ATUGV_REQUIRE(out, "out must be non-null");
    return guarded([&] { *out = atugv::elbow_angle(distance, arm_length, cell_radius); });
}

}  // extern "C"
