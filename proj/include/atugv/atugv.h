/*
 * C interface to the atugv library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an atugv_status; on
 * failure atugv_last_error() describes the problem (thread-local, valid until
 * the next failing call on the same thread). Units: meters, radians, seconds.
 */
#ifndef ATUGV_H
#define ATUGV_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(ATUGV_BUILDING_LIBRARY)
#    define ATUGV_API __declspec(dllexport)
#  else
#    define ATUGV_API __declspec(dllimport)
#  endif
#else
#  define ATUGV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum atugv_status {
    ATUGV_OK = 0,
    ATUGV_ERR_INVALID_ARGUMENT = 1,
    ATUGV_ERR_DECOMPOSITION = 2,
    ATUGV_ERR_LAYERING_VIOLATION = 3,
    ATUGV_ERR_DEGREE_VIOLATION = 4,
    ATUGV_ERR_REFERENCE_OVERLAP = 5,
    ATUGV_ERR_DOMAIN = 6,
    ATUGV_ERR_UNSAFE_PLAN = 7,
    ATUGV_ERR_UNREACHABLE_SEPARATION = 8,
    ATUGV_ERR_INCONSISTENT_ANGLES = 9,
    ATUGV_ERR_SIMULATION = 10,
    ATUGV_ERR_PARSE = 11,
    ATUGV_ERR_VALIDATION = 12,
    ATUGV_ERR_IO = 13,
    ATUGV_ERR_INTERNAL = 99
} atugv_status;

typedef struct atugv_scenario atugv_scenario;
typedef struct atugv_report atugv_report;

typedef struct atugv_coordinates {
    double lambda1;
    double lambda2;
    double sigma_r;
    double sigma_d;
    double d1;
    double d2;
} atugv_coordinates;

ATUGV_API const char* atugv_version(void);
ATUGV_API const char* atugv_status_name(atugv_status status);
ATUGV_API const char* atugv_last_error(void);

/* Scenarios. strict != 0 rejects unknown keys. */
ATUGV_API atugv_status atugv_scenario_load(const char* path, int strict, atugv_scenario** out);
ATUGV_API atugv_status atugv_scenario_parse(const char* text, int strict, atugv_scenario** out);
ATUGV_API void atugv_scenario_free(atugv_scenario* scenario);

ATUGV_API atugv_status atugv_scenario_set_samples(atugv_scenario* scenario, int samples);
ATUGV_API atugv_status atugv_scenario_set_dt(atugv_scenario* scenario, double dt);
ATUGV_API int atugv_scenario_cell_count(const atugv_scenario* scenario);
ATUGV_API size_t atugv_scenario_warning_count(const atugv_scenario* scenario);
ATUGV_API const char* atugv_scenario_warning(const atugv_scenario* scenario, size_t index);

/*
 * Pipelines. A rejected plan is not an error: the call returns ATUGV_OK and
 * the report's verdicts say why it failed (atugv_report_passed() == 0).
 */
ATUGV_API atugv_status atugv_run(const atugv_scenario* scenario, const char* output_dir, atugv_report** out);
ATUGV_API atugv_status atugv_validate(const atugv_scenario* scenario, atugv_report** out);
ATUGV_API atugv_status atugv_reference(const atugv_scenario* scenario, atugv_report** out);

ATUGV_API const char* atugv_report_text(const atugv_report* report);
ATUGV_API int atugv_report_passed(const atugv_report* report);
ATUGV_API void atugv_report_free(atugv_report* report);

/* Math entry points. Matrices are row-major [xx, xy, yx, yy]. */
ATUGV_API atugv_status atugv_jacobian(const atugv_coordinates* coords, double out[4]);
/* Fills lambda1 >= lambda2, sigma_r, sigma_d in [0, pi); d1 = d2 = 0. */
ATUGV_API atugv_status atugv_decompose(const double jacobian[4], atugv_coordinates* out);
ATUGV_API atugv_status atugv_lambda_min(double cell_radius, double d_min, double* out);
ATUGV_API atugv_status atugv_elbow_angle(double distance, double arm_length, double cell_radius, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ATUGV_H */
