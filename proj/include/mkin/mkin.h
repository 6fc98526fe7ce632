/* C interface of the mkin library. All handles are opaque; every call
 * returns a status code and leaves a message in mkin_last_error(). */
#ifndef MKIN_H
#define MKIN_H

#include <stddef.h>

#if defined(MKIN_BUILDING_LIBRARY)
#define MKIN_API __attribute__((visibility("default")))
#else
#define MKIN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mkin_status {
  MKIN_OK = 0,
  MKIN_ZERO_VECTOR,
  MKIN_NON_SMOOTH_BOUNDARY,
  MKIN_NON_SMOOTH_BALL,
  MKIN_INVALID_BALL,
  MKIN_DOMAIN_VIOLATION,
  MKIN_IRREGULAR_CURVE,
  MKIN_NO_INTERSECTION,
  MKIN_NOT_STARLIKE,
  MKIN_BAD_PARAMS,
  MKIN_DEGENERATE_DENSITY,
  MKIN_MEASURE_MISMATCH,
  MKIN_CENTER_POINT,
  MKIN_NO_COMMON_CONTACT,
  MKIN_TANGENT_MISMATCH,
  MKIN_POLE_COINCIDENCE,
  MKIN_TRANSLATIVE_MOTION,
  MKIN_NO_ROOT,
  MKIN_ON_INFLECTION_CURVE,
  MKIN_PARSE_ERROR,
  MKIN_UNKNOWN_KEY,
  MKIN_UNRESOLVED_NAME,
  MKIN_IO_ERROR,
  MKIN_INVALID_ARGUMENT, /* null handle or pointer */
  MKIN_INTERNAL
} mkin_status;

typedef struct mkin_ctx mkin_ctx;
typedef struct mkin_scenario mkin_scenario;
typedef struct mkin_report mkin_report;

/* Message of the last failing call on this thread ("" if none). */
MKIN_API const char* mkin_last_error(void);
MKIN_API const char* mkin_status_name(int status);

/* ---- normed plane ---- */

typedef struct mkin_norm_info {
  int kind; /* 0 euclidean, 1 lp, 2 polygon, 3 radial */
  int smooth;
  int strictly_convex;
  double circumference;
  double area;
  double sigma_plane;
} mkin_norm_info;

MKIN_API int mkin_ctx_create(const char* ball_spec, mkin_ctx** out);
MKIN_API void mkin_ctx_destroy(mkin_ctx* ctx);
MKIN_API int mkin_ctx_info(const mkin_ctx* ctx, mkin_norm_info* out);
MKIN_API int mkin_ctx_norm(const mkin_ctx* ctx, double x, double y, double* out);
/* Minkowski norm of the Euclidean unit vector along (x, y). */
MKIN_API int mkin_ctx_sigma_line(const mkin_ctx* ctx, double x, double y, double* out);

/* General rotation about the origin with the unit circle as carrier.
 * measure_spec: "arclen", "area" or "density:<path>". */
MKIN_API int mkin_rotate(const mkin_ctx* ctx, const char* measure_spec, double theta, double x,
                         double y, double* out_x, double* out_y);
/* "theta=<radians>" or "deg=<degrees>". */
MKIN_API int mkin_parse_angle(const char* spec, double* out);

/* ---- scenarios ---- */

MKIN_API int mkin_scenario_parse(const char* text, mkin_scenario** out);
MKIN_API int mkin_scenario_load(const char* path, mkin_scenario** out);
MKIN_API int mkin_scenario_hypocycloid(int n, const char* ball_spec, mkin_scenario** out);
MKIN_API void mkin_scenario_destroy(mkin_scenario* s);
/* Canonical text. Writes at most cap bytes including the terminator and
 * stores the full length (without terminator) in *needed. */
MKIN_API int mkin_scenario_print(const mkin_scenario* s, char* buf, size_t cap, size_t* needed);
/* Location of the last parse failure, 0 if unknown. */
MKIN_API int mkin_last_parse_location(int* line, int* column);

typedef enum mkin_mode { MKIN_MODE_ROLL = 0, MKIN_MODE_INFLECTION = 1, MKIN_MODE_VERIFY = 2 } mkin_mode;

typedef struct mkin_run_options {
  int mode;            /* mkin_mode */
  const char* only;    /* check name or NULL */
  int threads;         /* 0: MKIN_THREADS or all cores */
  const char* out_dir; /* prefix for relative output paths, or NULL */
} mkin_run_options;

MKIN_API int mkin_run(const mkin_scenario* s, const mkin_run_options* opt, mkin_report** out);
MKIN_API void mkin_report_destroy(mkin_report* r);
MKIN_API int mkin_report_exit_status(const mkin_report* r);
MKIN_API size_t mkin_report_check_count(const mkin_report* r);

typedef struct mkin_check_info {
  const char* name;  /* valid while the report lives */
  const char* error; /* "" when the check ran */
  int pass;
  double residual;
  double tolerance;
  size_t rows;
} mkin_check_info;

MKIN_API int mkin_report_check(const mkin_report* r, size_t i, mkin_check_info* out);
/* Text report / CSV report, same buffer convention as mkin_scenario_print. */
MKIN_API int mkin_report_text(const mkin_report* r, char* buf, size_t cap, size_t* needed);
MKIN_API int mkin_report_csv(const mkin_report* r, char* buf, size_t cap, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif
