// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "epigauge/epigauge.h"

namespace {

struct Common {
  std::string spec;
  double grid_step = 0.0;
  double level_step = 0.0;
  unsigned threads = 1;
  bool csv = false;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool with_spec) {
  if (with_spec)
    cmd->add_option("--spec", c.spec, "problem description (YAML)")->check(CLI::ExistingFile)->required();
  cmd->add_option("--grid-step", c.grid_step, "base lattice step h (overrides the problem)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--level-step", c.level_step, "level lattice step h_t (overrides the problem)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "worker threads for lattice scans")->check(CLI::Range(1u, 1024u));
  cmd->add_flag("--csv", c.csv, "tabular CSV output");
  cmd->add_option("--out", c.out, "write the output to this file instead of stdout");
}

eg_run_options options_of(const Common& c) {
  eg_run_options o;
  eg_run_options_init(&o);
  o.grid_step = c.grid_step;
  o.level_step = c.level_step;
  o.threads = c.threads;
  o.csv = c.csv ? 1 : 0;
  return o;
}

int report_error(eg_status status) {
  std::cerr << "error: " << eg_last_error() << "\n";
  return static_cast<int>(status);
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

// Prints or writes the result and returns its verdict as the exit code.
int finish(eg_result* result, const Common& c, bool out_gets_csv) {
  const char* main_text = eg_result_output(result);
  const int status = static_cast<int>(eg_result_status(result));
  if (c.out.empty()) {
    std::cout << main_text;
  } else {
    const char* file_text = out_gets_csv ? eg_result_csv(result) : main_text;
    if (!write_file(c.out, file_text)) {
      std::cerr << "error: cannot write '" << c.out << "'\n";
      eg_result_free(result);
      return EG_ERR_INTERNAL;
    }
    if (out_gets_csv) std::cout << main_text;
  }
  eg_result_free(result);
  return status;
}

using Pipeline = eg_status (*)(const eg_problem*, const eg_run_options*, eg_result**);

int run_problem(const Common& c, Pipeline pipeline) {
  eg_problem* problem = nullptr;
  if (eg_status s = eg_problem_load(c.spec.c_str(), &problem); s != EG_OK) return report_error(s);
  const eg_run_options o = options_of(c);
  eg_result* result = nullptr;
  const eg_status s = pipeline(problem, &o, &result);
  eg_problem_free(problem);
  if (s != EG_OK) return report_error(s);
  return finish(result, c, false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified epigraphic perturbation gauges and minimizer displacement bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(eg_version()));

  Common gauge_opts, certify_opts, sweep_opts, demo_opts;

  auto* gauge = app.add_subcommand("gauge", "certified gauge bound next to the lattice oracle estimate");
  add_common(gauge, gauge_opts, true);

  auto* certify = app.add_subcommand("certify", "gauge -> window checks -> displacement certificate record");
  add_common(certify, certify_opts, true);

  auto* sweep = app.add_subcommand("sweep", "sharpness sweep of the displacement exponent, as CSV");
  add_common(sweep, sweep_opts, true);
  std::vector<double> sweep_deltas;
  sweep->add_option("--deltas", sweep_deltas, "comma-separated increasing perturbation sizes")->delimiter(',');

  auto* demo = app.add_subcommand("demo", "build a counterexample construction and verify its properties");
  add_common(demo, demo_opts, false);
  std::string demo_name;
  demo->add_option("name", demo_name, "impossibility | sharpness | strictness")
      ->required()
      ->check(CLI::IsMember({"impossibility", "sharpness", "strictness"}));
  eg_demo_params params;
  eg_demo_params_init(&params);
  std::vector<double> queries, demo_deltas;
  std::optional<double> y;
  demo->add_option("--radius", params.R, "base radius R")->check(CLI::PositiveNumber);
  demo->add_option("--level", params.M, "level bound M")->check(CLI::PositiveNumber);
  demo->add_option("--amplitude", params.A, "amplitude A");
  demo->add_option("--mu", params.mu, "quadratic growth parameter")->check(CLI::PositiveNumber);
  demo->add_option("--queries", queries, "comma-separated query points (impossibility)")->delimiter(',');
  demo->add_option("--y", y, "bump center (impossibility); searched when omitted");
  demo->add_option("--deltas", demo_deltas, "comma-separated deltas (sharpness)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return EG_ERR_PARSE;
  }

  if (*gauge) return run_problem(gauge_opts, eg_cmd_gauge);
  if (*certify) return run_problem(certify_opts, eg_cmd_certify);

  if (*sweep) {
    eg_problem* problem = nullptr;
    if (eg_status s = eg_problem_load(sweep_opts.spec.c_str(), &problem); s != EG_OK) return report_error(s);
    const eg_run_options o = options_of(sweep_opts);
    eg_result* result = nullptr;
    const eg_status s = eg_cmd_sweep(problem, sweep_deltas.data(), sweep_deltas.size(), &o, &result);
    eg_problem_free(problem);
    if (s != EG_OK) return report_error(s);
    return finish(result, sweep_opts, false);
  }

  params.queries = queries.data();
  params.n_queries = queries.size();
  params.has_y = y.has_value() ? 1 : 0;
  params.y = y.value_or(0.0);
  params.deltas = demo_deltas.data();
  params.n_deltas = demo_deltas.size();
  const eg_run_options o = options_of(demo_opts);
  eg_result* result = nullptr;
  if (eg_status s = eg_cmd_demo(demo_name.c_str(), &params, &o, &result); s != EG_OK) return report_error(s);
  return finish(result, demo_opts, true);
}
