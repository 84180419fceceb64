#include <doctest.h>

#include "qham/suite.hpp"

using namespace qham;

TEST_CASE("config validation and tolerance overrides") {
  RunConfig cfg = RunConfig::defaults();
  CHECK(cfg.tolerance("psi_identity") == 1e-12);
  cfg.tol["psi_identity"] = 1e-10;
  CHECK(cfg.tolerance("psi_identity") == 1e-10);
  CHECK_THROWS_AS(cfg.tolerance("no_such_check"), InputError);

  RunConfig bad = RunConfig::defaults();
  bad.n_samples = 0;
  CHECK_THROWS_AS(bad.validate_config(), InputError);
  bad = RunConfig::defaults();
  bad.t_grid = {1e-3, 1e-2};
  CHECK_THROWS_AS(bad.validate_config(), InputError);
}

TEST_CASE("suite determinism: byte-identical reports") {
  RunConfig cfg = RunConfig::defaults();
  cfg.group = "su2";
  cfg.seed = 42;
  cfg.n_samples = 4;
  std::string a = run_suite(cfg).dump(2);
  std::string b = run_suite(cfg).dump(2);
  CHECK(a == b);
  CHECK(a.find("\"schema\": 1") != std::string::npos);

  cfg.seed = 43;
  std::string c = run_suite(cfg).dump(2);
  CHECK(a != c);  // the seed is echoed in the report
}

TEST_CASE("report sections carry pass flags and echo configuration") {
  RunConfig cfg = RunConfig::defaults();
  cfg.group = "torus:2";
  cfg.n_samples = 3;
  auto lie = verify_lie_section(cfg);
  CHECK(lie["pass"].get<bool>());
  CHECK(lie["group"] == "torus:2");
  auto mv = verify_multivector_section(cfg);
  CHECK(mv["pass"].get<bool>());
  auto qp = verify_qp_section(cfg);
  CHECK(qp["pass"].get<bool>());

  auto suite = run_suite(cfg);
  CHECK(suite["config"]["seed"] == 42);
  CHECK(suite["config"]["group"] == "torus:2");
  for (const auto& s : suite["sections"]) CHECK(s.contains("pass"));
}

TEST_CASE("cob parse section surfaces dims") {
  RunConfig cfg = RunConfig::defaults();
  auto j = cob_parse_section("copants ; pants", cfg);
  CHECK(j["source"] == 1);
  CHECK(j["target"] == 1);
  CHECK(j["components"][0]["genus"] == 1);
  CHECK(j["components"][0]["dim"] == 12);
}
