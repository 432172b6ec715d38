#include <cmath>
#include <string>

#include "doctest.h"
#include "epigauge/epigauge.h"

namespace {

std::string spec_path(const char* name) { return std::string(EPIGAUGE_SPECS_DIR) + "/" + name + ".yaml"; }

eg_problem* load(const char* name) {
  eg_problem* p = nullptr;
  REQUIRE(eg_problem_load(spec_path(name).c_str(), &p) == EG_OK);
  REQUIRE(p != nullptr);
  return p;
}

}  // namespace

TEST_CASE("scalar helpers") {
  CHECK(std::string(eg_version()).size() > 0);
  CHECK(eg_pos_part(-1.0) == 0.0);
  CHECK(eg_pos_part(2.5) == 2.5);
  CHECK(eg_vertical_distance(3.0, 1.0) == 2.0);
  CHECK(eg_vertical_distance(0.0, 1.0) == 0.0);
  CHECK(eg_pointwise_discrepancy(3.0, 1.5, 1.0) == 1.5);
  CHECK(eg_pointwise_discrepancy(-3.0, -8.0, 1.0) == 0.0);

  double r = 0.0;
  CHECK(eg_displacement_radius(0.02, 2.0, &r) == EG_OK);
  CHECK(r == doctest::Approx(0.2));
  CHECK(eg_displacement_radius(0.02, 0.0, &r) != EG_OK);
  CHECK(std::string(eg_last_error()).size() > 0);
  CHECK(eg_displacement_radius(0.02, 2.0, nullptr) == EG_ERR_PRECONDITION);
}

TEST_CASE("gauge from a value bound and the value gap") {
  eg_gauge_bound g{};
  REQUIRE(eg_gauge_from_value_bound(0.1, 1.0, 2.0, &g) == EG_OK);
  CHECK(g.delta == 0.1);
  CHECK(g.provenance == EG_PROVENANCE_VALUE_BOUND);
  CHECK(g.certified == 1);
  CHECK(eg_gauge_from_value_bound(-0.1, 1.0, 2.0, &g) == EG_ERR_PRECONDITION);

  REQUIRE(eg_gauge_from_value_bound(0.1, 1.0, 2.0, &g) == EG_OK);
  const double inside[] = {0.5};
  const double outside[] = {1.5};
  int valid = -1;
  double bound = -1.0;
  CHECK(eg_value_gap(&g, inside, 1, 0.3, 0.35, &valid, &bound) == EG_OK);
  CHECK(valid == 1);
  CHECK(bound == 0.1);
  CHECK(eg_value_gap(&g, outside, 1, 0.3, 0.35, &valid, &bound) == EG_OK);
  CHECK(valid == 0);
  CHECK(std::string(eg_last_error()).find("base window") != std::string::npos);
  CHECK(eg_value_gap(&g, inside, 1, 5.0, 0.35, &valid, &bound) == EG_OK);
  CHECK(valid == 0);
  CHECK(eg_value_gap(nullptr, inside, 1, 0.0, 0.0, &valid, &bound) == EG_ERR_PRECONDITION);
}

TEST_CASE("problem handles") {
  eg_problem* p = nullptr;
  CHECK(eg_problem_load(spec_path("broken").c_str(), &p) == EG_ERR_PARSE);
  CHECK(p == nullptr);
  CHECK(std::string(eg_last_error()).find("colour") != std::string::npos);
  CHECK(eg_problem_load("/nonexistent/problem.yaml", &p) == EG_ERR_PARSE);
  CHECK(eg_problem_load(nullptr, &p) == EG_ERR_PRECONDITION);

  REQUIRE(eg_problem_parse("dimension: 2\ncylinder: {R: 1, M: 1}\n", &p) == EG_OK);
  CHECK(eg_problem_dimension(p) == 2);
  CHECK(std::string(eg_problem_hash(p)).size() == 16);
  eg_problem_free(p);
  eg_problem_free(nullptr);
  CHECK(eg_problem_dimension(nullptr) == 0);
  CHECK(std::string(eg_problem_hash(nullptr)).empty());
}

TEST_CASE("pipelines") {
  eg_run_options o;
  eg_run_options_init(&o);
  o.timestamp = "2000-01-01T00:00:00Z";
  eg_result* res = nullptr;

  SUBCASE("gauge") {
    eg_problem* p = load("strictness");
    o.csv = 1;
    REQUIRE(eg_cmd_gauge(p, &o, &res) == EG_OK);
    CHECK(eg_result_status(res) == EG_OK);
    CHECK(std::string(eg_result_output(res)) == "quantity,certified,oracle\ngauge,n/a,0\nsup_abs_diff,n/a,5\n");
    CHECK(std::string(eg_result_csv(res)) == eg_result_output(res));
    eg_result_free(res);
    o.grid_step = 1e-7;
    CHECK(eg_cmd_gauge(p, &o, &res) == EG_ERR_ORACLE_CAP);
    CHECK(res == nullptr);
    eg_problem_free(p);
  }
  SUBCASE("certify") {
    eg_problem* p = load("sharpness");
    REQUIRE(eg_cmd_certify(p, &o, &res) == EG_OK);
    CHECK(eg_result_status(res) == EG_OK);
    CHECK(std::string(eg_result_output(res)).find("\"valid\": true") != std::string::npos);
    eg_result_free(res);
    eg_problem_free(p);

    p = load("window_fail");
    REQUIRE(eg_cmd_certify(p, &o, &res) == EG_OK);
    CHECK(eg_result_status(res) == EG_ERR_PRECONDITION);
    eg_result_free(res);
    eg_problem_free(p);

    p = load("strictness");
    CHECK(eg_cmd_certify(p, &o, &res) == EG_ERR_PRECONDITION);
    eg_problem_free(p);
  }
  SUBCASE("sweep") {
    eg_problem* p = load("sharpness");
    const double ds[] = {1e-3, 1e-2};
    o.grid_step = 1e-5;
    REQUIRE(eg_cmd_sweep(p, ds, 2, &o, &res) == EG_OK);
    CHECK(std::string(eg_result_output(res)).rfind("delta,argmin,dist,bound,slack\n", 0) == 0);
    eg_result_free(res);
    eg_problem_free(p);
  }
  SUBCASE("demos") {
    eg_demo_params d;
    eg_demo_params_init(&d);
    CHECK(d.R == 1.0);
    CHECK(d.M == 2.0);
    CHECK(d.A == 5.0);
    REQUIRE(eg_cmd_demo("strictness", &d, &o, &res) == EG_OK);
    CHECK(eg_result_status(res) == EG_OK);
    eg_result_free(res);

    const double qs[] = {-0.5, 0.5};
    d.queries = qs;
    d.n_queries = 2;
    d.has_y = 1;
    d.y = 0.0;
    d.A = 10.0;
    REQUIRE(eg_cmd_demo("impossibility", &d, &o, &res) == EG_OK);
    CHECK(eg_result_status(res) == EG_OK);
    eg_result_free(res);

    CHECK(eg_cmd_demo("nonsense", &d, &o, &res) != EG_OK);
    CHECK(eg_cmd_demo(nullptr, &d, &o, &res) == EG_ERR_PRECONDITION);
    d.R = -1.0;
    CHECK(eg_cmd_demo("strictness", &d, &o, &res) == EG_ERR_PRECONDITION);
  }
  eg_result_free(nullptr);
  CHECK(eg_result_status(nullptr) == EG_ERR_INTERNAL);
}
