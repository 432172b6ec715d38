#include "epigauge/epigauge.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "epigauge/commands.hpp"
#include "epigauge/problem.hpp"
#include "epigauge/stability.hpp"

struct eg_problem {
  epigauge::ProblemSpec spec;
};

struct eg_result {
  epigauge::CommandResult result;
};

namespace {

thread_local std::string g_last_error;

eg_status set_error(eg_status status, const std::string& what) {
  g_last_error = what;
  return status;
}

template <class Fn>
eg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const epigauge::Error& e) {
    return set_error(static_cast<eg_status>(epigauge::exit_status(e.kind())), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(EG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(EG_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(EG_ERR_INTERNAL, "unknown error");
  }
}

eg_status null_arg(const char* what) { return set_error(EG_ERR_PRECONDITION, std::string(what) + " is NULL"); }

epigauge::RunOptions to_options(const eg_run_options* o) {
  epigauge::RunOptions r;
  if (!o) return r;
  if (o->grid_step > 0.0) r.grid_step = o->grid_step;
  if (o->level_step > 0.0) r.level_step = o->level_step;
  r.threads = o->threads == 0 ? 1 : o->threads;
  r.csv = o->csv != 0;
  if (o->timestamp) r.timestamp = std::string(o->timestamp);
  return r;
}

eg_status emit(epigauge::CommandResult result, eg_result** out) {
  *out = new eg_result{std::move(result)};
  return EG_OK;
}

epigauge::Provenance to_cpp(eg_provenance p) {
  switch (p) {
    case EG_PROVENANCE_VALUE_BOUND: return epigauge::Provenance::ValueBound;
    case EG_PROVENANCE_ENVELOPE: return epigauge::Provenance::Envelope;
    case EG_PROVENANCE_TOLERANCE_FIELD: return epigauge::Provenance::ToleranceField;
    case EG_PROVENANCE_ASSUMED: break;
  }
  return epigauge::Provenance::Assumed;
}

}  // namespace

extern "C" {

const char* eg_version(void) { return "1.0.0"; }

const char* eg_last_error(void) { return g_last_error.c_str(); }

void eg_run_options_init(eg_run_options* opts) {
  if (opts) *opts = eg_run_options{0.0, 0.0, 1, 0, nullptr};
}

void eg_demo_params_init(eg_demo_params* params) {
  if (!params) return;
  const epigauge::DemoParams d;
  *params = eg_demo_params{d.R, d.M, d.A, d.mu, nullptr, 0, 0, 0.0, nullptr, 0};
}

double eg_pos_part(double r) { return epigauge::pos_part(r); }

double eg_vertical_distance(double f_value, double t) { return epigauge::vertical_distance(f_value, t); }

double eg_pointwise_discrepancy(double fa, double fb, double t) {
  return epigauge::pointwise_discrepancy(fa, fb, t);
}

eg_status eg_gauge_from_value_bound(double eps, double R, double M, eg_gauge_bound* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto g = epigauge::gauge_from_value_bound(eps, epigauge::Cylinder(R, M));
    *out = eg_gauge_bound{g.delta, g.cylinder.R, g.cylinder.M, EG_PROVENANCE_VALUE_BOUND, g.certified ? 1 : 0};
    return EG_OK;
  });
}

eg_status eg_displacement_radius(double delta, double mu, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = epigauge::displacement_radius(delta, mu);
    return EG_OK;
  });
}

eg_status eg_value_gap(const eg_gauge_bound* gauge, const double* x, size_t dim, double f_value, double g_value,
                       int* valid, double* bound) {
  if (!gauge || !x || !valid || !bound) return null_arg("argument");
  return guarded([&] {
    const epigauge::GaugeBound g{gauge->delta, epigauge::Cylinder(gauge->R, gauge->M), to_cpp(gauge->provenance),
                                 gauge->certified != 0, {}};
    const epigauge::Point p(std::vector<double>(x, x + dim));
    const epigauge::WindowCheck w{p, f_value, g_value, epigauge::in_ball(p.coords(), gauge->R),
                                  g.cylinder.contains_level(f_value) && g.cylinder.contains_level(g_value)};
    const auto gap = epigauge::value_gap_from_gauge(g, w);
    *valid = gap.valid() ? 1 : 0;
    *bound = gap.bound.value_or(0.0);
    if (!gap.valid()) g_last_error = gap.failure;
    return EG_OK;
  });
}

eg_status eg_problem_load(const char* path, eg_problem** out) {
  if (!path || !out) return null_arg("argument");
  *out = nullptr;
  return guarded([&] {
    *out = new eg_problem{epigauge::load_problem(path)};
    return EG_OK;
  });
}

eg_status eg_problem_parse(const char* text, eg_problem** out) {
  if (!text || !out) return null_arg("argument");
  *out = nullptr;
  return guarded([&] {
    *out = new eg_problem{epigauge::parse_problem(text)};
    return EG_OK;
  });
}

void eg_problem_free(eg_problem* problem) { delete problem; }

const char* eg_problem_hash(const eg_problem* problem) { return problem ? problem->spec.hash.c_str() : ""; }

size_t eg_problem_dimension(const eg_problem* problem) { return problem ? problem->spec.dim : 0; }

eg_status eg_cmd_gauge(const eg_problem* problem, const eg_run_options* opts, eg_result** out) {
  if (!problem || !out) return null_arg("argument");
  *out = nullptr;
  return guarded([&] { return emit(epigauge::cmd_gauge(problem->spec, to_options(opts)), out); });
}

eg_status eg_cmd_certify(const eg_problem* problem, const eg_run_options* opts, eg_result** out) {
  if (!problem || !out) return null_arg("argument");
  *out = nullptr;
  return guarded([&] { return emit(epigauge::cmd_certify(problem->spec, to_options(opts)), out); });
}

eg_status eg_cmd_sweep(const eg_problem* problem, const double* deltas, size_t n_deltas, const eg_run_options* opts,
                       eg_result** out) {
  if (!problem || !out) return null_arg("argument");
  *out = nullptr;
  return guarded([&] {
    std::optional<std::vector<double>> ds;
    if (deltas && n_deltas > 0) ds = std::vector<double>(deltas, deltas + n_deltas);
    return emit(epigauge::cmd_sweep(problem->spec, ds, to_options(opts)), out);
  });
}

eg_status eg_cmd_demo(const char* name, const eg_demo_params* params, const eg_run_options* opts, eg_result** out) {
  if (!name || !out) return null_arg("argument");
  *out = nullptr;
  return guarded([&] {
    epigauge::DemoParams p;
    if (params) {
      p.R = params->R;
      p.M = params->M;
      p.A = params->A;
      p.mu = params->mu;
      if (params->queries) p.queries.assign(params->queries, params->queries + params->n_queries);
      if (params->has_y) p.y = params->y;
      if (params->deltas) p.deltas.assign(params->deltas, params->deltas + params->n_deltas);
    }
    return emit(epigauge::cmd_demo(name, p, to_options(opts)), out);
  });
}

eg_status eg_result_status(const eg_result* result) {
  return result ? static_cast<eg_status>(result->result.status) : EG_ERR_INTERNAL;
}

const char* eg_result_output(const eg_result* result) { return result ? result->result.output.c_str() : ""; }

const char* eg_result_csv(const eg_result* result) { return result ? result->result.csv.c_str() : ""; }

void eg_result_free(eg_result* result) { delete result; }

}  // extern "C"
