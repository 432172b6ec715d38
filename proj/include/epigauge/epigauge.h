/* C interface to the epigauge library.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns an eg_status; on failure eg_last_error() holds a
 * message for the calling thread until its next failing call. */
#ifndef EPIGAUGE_H
#define EPIGAUGE_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(EPIGAUGE_BUILDING)
#    define EG_API __declspec(dllexport)
#  else
#    define EG_API __declspec(dllimport)
#  endif
#else
#  define EG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum eg_status {
  EG_OK = 0,
  EG_ERR_INTERNAL = 1,
  EG_ERR_PARSE = 2,
  EG_ERR_PRECONDITION = 3,
  EG_ERR_ORACLE_CAP = 4,
  EG_ERR_INCONSISTENT = 5
} eg_status;

typedef enum eg_provenance {
  EG_PROVENANCE_VALUE_BOUND = 0,
  EG_PROVENANCE_ENVELOPE = 1,
  EG_PROVENANCE_TOLERANCE_FIELD = 2,
  EG_PROVENANCE_ASSUMED = 3
} eg_provenance;

typedef struct eg_problem eg_problem;
typedef struct eg_result eg_result;

typedef struct eg_run_options {
  double grid_step;   /* <= 0: use the problem's value */
  double level_step;  /* <= 0: use the problem's value */
  unsigned threads;   /* 0 or 1: serial */
  int csv;            /* nonzero: tabular output */
  const char* timestamp; /* NULL: current UTC time in records */
} eg_run_options;

typedef struct eg_demo_params {
  double R;
  double M;
  double A;
  double mu;
  const double* queries; /* one-dimensional query points */
  size_t n_queries;
  int has_y;
  double y;
  const double* deltas;
  size_t n_deltas;
} eg_demo_params;

typedef struct eg_gauge_bound {
  double delta;
  double R;
  double M;
  eg_provenance provenance;
  int certified;
} eg_gauge_bound;

EG_API const char* eg_version(void);
EG_API const char* eg_last_error(void);
EG_API void eg_run_options_init(eg_run_options* opts);
EG_API void eg_demo_params_init(eg_demo_params* params);

/* Elementary maps. */
EG_API double eg_pos_part(double r);
EG_API double eg_vertical_distance(double f_value, double t);
EG_API double eg_pointwise_discrepancy(double fa, double fb, double t);
EG_API eg_status eg_gauge_from_value_bound(double eps, double R, double M, eg_gauge_bound* out);
/* 2 sqrt(delta / mu) */
EG_API eg_status eg_displacement_radius(double delta, double mu, double* out);
/* Theorem check: writes the bound delta when ||x|| <= R and both values lie in [-M, M];
 * otherwise writes 0 to *valid. */
EG_API eg_status eg_value_gap(const eg_gauge_bound* gauge, const double* x, size_t dim, double f_value,
                              double g_value, int* valid, double* bound);

/* Problem descriptions. */
EG_API eg_status eg_problem_load(const char* path, eg_problem** out);
EG_API eg_status eg_problem_parse(const char* text, eg_problem** out);
EG_API void eg_problem_free(eg_problem* problem);
EG_API const char* eg_problem_hash(const eg_problem* problem);
EG_API size_t eg_problem_dimension(const eg_problem* problem);

/* Pipelines. On EG_OK, *out holds the result even when its verdict is a failure. */
EG_API eg_status eg_cmd_gauge(const eg_problem* problem, const eg_run_options* opts, eg_result** out);
EG_API eg_status eg_cmd_certify(const eg_problem* problem, const eg_run_options* opts, eg_result** out);
EG_API eg_status eg_cmd_sweep(const eg_problem* problem, const double* deltas, size_t n_deltas,
                              const eg_run_options* opts, eg_result** out);
EG_API eg_status eg_cmd_demo(const char* name, const eg_demo_params* params, const eg_run_options* opts,
                             eg_result** out);

/* Verdict of a completed pipeline, as an exit status. */
EG_API eg_status eg_result_status(const eg_result* result);
EG_API const char* eg_result_output(const eg_result* result);
EG_API const char* eg_result_csv(const eg_result* result);
EG_API void eg_result_free(eg_result* result);

#ifdef __cplusplus
}
#endif

#endif /* EPIGAUGE_H */
